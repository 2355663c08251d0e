"""Exact arithmetic substrate: rationals, the quadratic ring Q[sqrt(2)],
and truncated formal power series over Q.

Every combinatorial and spectral identity in this package is verified in
exact arithmetic; floating point is confined to the analytic layer.
Rationals are `fractions.Fraction` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def as_fraction(value) -> Fraction:
    """Coerce an int, a "p/q" string, or a Fraction to a Fraction.

    Floats are rejected on purpose: they would smuggle roundoff into
    paths that must stay exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fraction_str(value: Fraction) -> str:
    """Serialize a Fraction as "p/q" with the denominator always spelled out."""
    return f"{value.numerator}/{value.denominator}"


@total_ordering
@dataclass(frozen=True)
class QSqrt2:
    """An element rat + irr*sqrt(2) of the ring Q[sqrt(2)].

    The component pair is canonical because sqrt(2) is irrational, so
    dataclass equality is value equality and an element is zero iff both
    components vanish.  Instances are immutable and hashable.  The ring
    is ordered as a subfield of the reals; comparisons are exact.
    """

    rat: Fraction
    irr: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", as_fraction(self.rat))
        object.__setattr__(self, "irr", as_fraction(self.irr))

    # -- construction and serialization ---------------------------------

    @classmethod
    def coerce(cls, value) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        return cls(as_fraction(value))

    @classmethod
    def from_strings(cls, pair) -> "QSqrt2":
        """Build from a ("p/q", "r/s") pair, the wire format for sequences."""
        rat, irr = pair
        if not isinstance(rat, str) or not isinstance(irr, str):
            raise TypeError("expected a pair of rational strings")
        return cls(Fraction(rat), Fraction(irr))

    def as_strings(self) -> tuple[str, str]:
        return (fraction_str(self.rat), fraction_str(self.irr))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return QSqrt2(self.rat + other.rat, self.irr + other.irr)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.rat, -self.irr)

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return QSqrt2(self.rat - other.rat, self.irr - other.irr)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.rat, self.irr, other.rat, other.irr
        return QSqrt2(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        norm = other.rat * other.rat - 2 * other.irr * other.irr
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt(2)]")
        # multiply by the conjugate, divide by the field norm
        a, b, c, d = self.rat, self.irr, other.rat, other.irr
        return QSqrt2((a * c - 2 * b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure -------------------------------------------------------

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self.rat, -self.irr)

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def is_rational(self) -> bool:
        return self.irr == 0

    def sign(self) -> int:
        """Exact sign of the real value rat + irr*sqrt(2)."""
        a, b = self.rat, self.irr
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # components of opposite strict signs: compare a^2 against 2 b^2
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __abs__(self) -> "QSqrt2":
        return self if self.sign() >= 0 else -self

    def __lt__(self, other) -> bool:
        other = _lift(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * math.sqrt(2.0)

    def __repr__(self) -> str:
        if self.irr == 0:
            return f"QSqrt2({self.rat})"
        return f"QSqrt2({self.rat} + {self.irr}*sqrt2)"


def _lift(value):
    if isinstance(value, QSqrt2):
        return value
    if isinstance(value, (int, Fraction)):
        return QSqrt2(Fraction(value))
    return None


ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2 = QSqrt2(0, 1)
#: 1/sqrt(2), the dilation ratio of the two-fold central limit step
BETA = QSqrt2(0, Fraction(1, 2))


def two_pow_half(p: int) -> QSqrt2:
    """Exact 2**(p/2) as an element of Q[sqrt(2)], for any integer p.

    Even p stays rational; odd p picks up one factor of sqrt(2).
    """
    if not isinstance(p, int):
        raise TypeError("half-integer exponent must be given as an integer p in 2**(p/2)")
    if p % 2 == 0:
        return QSqrt2(Fraction(2) ** (p // 2))
    return QSqrt2(0, Fraction(2) ** ((p - 1) // 2))


@dataclass(frozen=True)
class PowerSeries:
    """A formal power series over Q truncated at a fixed order.

    ``coeffs[j]`` multiplies t**j and the truncation order is
    ``len(coeffs) - 1``.  Binary operations truncate the result to the
    smaller operand order, so every stored coefficient is exact.
    """

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series stores at least the constant term")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff=1) -> "PowerSeries":
        if degree < 0 or degree > order:
            raise ValueError("monomial degree must lie within the truncation order")
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[degree] = as_fraction(coeff)
        return cls(tuple(coeffs))

    def coefficient(self, degree: int) -> Fraction:
        if degree < 0 or degree > self.order:
            raise IndexError(f"coefficient {degree} beyond truncation order {self.order}")
        return self.coeffs[degree]

    def truncated(self, order: int) -> "PowerSeries":
        if order < 0:
            raise ValueError("order must be nonnegative")
        if order >= self.order:
            return self
        return PowerSeries(self.coeffs[: order + 1])

    def scaled(self, factor) -> "PowerSeries":
        f = as_fraction(factor)
        return PowerSeries(tuple(c * f for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[j] + other.coeffs[j] for j in range(n + 1)))

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[j] - other.coeffs[j] for j in range(n + 1)))

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out = []
        for d in range(n + 1):
            acc = Fraction(0)
            for e in range(d + 1):
                acc += self.coeffs[e] * other.coeffs[d - e]
            out.append(acc)
        return PowerSeries(tuple(out))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = PowerSeries.one(self.order)
        for _ in range(exponent):
            result = result * self
        return result
