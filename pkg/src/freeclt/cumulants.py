"""Moment-cumulant transforms in both probabilistic flavors, and the
Gateaux derivative of the moments-to-cumulants map.

A moment sequence (m_1, ..., m_L) and a cumulant sequence (c_1, ..., c_L)
determine each other through a partition sum: over noncrossing
partitions with plain block products in the free flavor, over all set
partitions with a (|B|-1)! weight per block in the classical flavor.
The production code runs triangular recursions obtained by conditioning
on the block containing the first element; the partition sums survive as
a slow oracle path (``method="oracle"``) for cross-checking.

All sequences are 1-indexed conceptually: ``entries[0]`` is the first
moment or cumulant, and the implicit zeroth moment is 1 and never
stored.  Entries live in Q[sqrt(2)] so that the central limit dilations
stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ONE, ZERO, QSqrt2
from .partitions import DEFAULT_MAX_GROUND_SIZE, FLAVORS, SizeLimitError, block_size_profiles

KINDS = ("moments", "cumulants")
METHODS = ("recursive", "oracle")


@dataclass(frozen=True)
class Sequence:
    """A finite moment or cumulant sequence tagged with its flavor.

    ``entries[i]`` is the order i+1 value; sequences never store the
    zeroth moment.  Entries are coerced to QSqrt2.
    """

    flavor: str
    kind: str
    entries: tuple[QSqrt2, ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        entries = tuple(QSqrt2.coerce(e) for e in self.entries)
        if not entries:
            raise ValueError("a sequence holds at least one entry")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, order: int) -> QSqrt2:
        """The value at 1-indexed ``order``."""
        if not 1 <= order <= len(self.entries):
            raise IndexError(f"order {order} outside 1..{len(self.entries)}")
        return self.entries[order - 1]

    def variance_nonnegative(self) -> bool:
        """Check m_2 - m_1**2 >= 0; meaningful for moment sequences of
        length at least 2."""
        if self.kind != "moments" or len(self.entries) < 2:
            raise ValueError("variance check needs a moment sequence of length >= 2")
        m1, m2 = self.entries[0], self.entries[1]
        return (m2 - m1 * m1).sign() >= 0


def sequence_to_payload(seq: Sequence) -> dict:
    """Wire form: rational-string pairs, one per entry."""
    return {
        "flavor": seq.flavor,
        "kind": seq.kind,
        "entries": [list(e.as_strings()) for e in seq.entries],
    }


class SchemaError(ValueError):
    """Malformed wire payload; the message names the offending field."""


def sequence_from_payload(payload: dict) -> Sequence:
    if not isinstance(payload, dict):
        raise SchemaError("sequence payload must be a JSON object")
    for field in ("flavor", "kind", "entries"):
        if field not in payload:
            raise SchemaError(f"sequence payload missing field {field!r}")
    entries = payload["entries"]
    if not isinstance(entries, list) or not entries:
        raise SchemaError("field 'entries' must be a nonempty list")
    parsed = []
    for i, pair in enumerate(entries):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"field 'entries[{i}]' must be a pair of rational strings")
        try:
            parsed.append(QSqrt2.from_strings(pair))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"field 'entries[{i}]' is not a rational pair: {exc}") from exc
    try:
        return Sequence(payload["flavor"], payload["kind"], tuple(parsed))
    except ValueError as exc:
        raise SchemaError(f"field 'flavor' or 'kind' rejected: {exc}") from exc


# ---------------------------------------------------------------------------
# Triangular recursions.  The cores are written against a generic ring
# element (anything with +, -, * and division by integers), so the same
# code runs on QSqrt2 and on dual numbers.
# ---------------------------------------------------------------------------


class _PowerTable:
    """Memoized coefficients of powers of 1 + sum_j m_j t**j.

    ``get(s, d)`` is the t**d coefficient of the s-th power, which is the
    sum over ordered lists of s nonnegative indices summing to d of the
    product of the corresponding moments (index 0 contributing 1).  Only
    prefixes of ``m`` that are already known are ever consulted.
    """

    def __init__(self, m, zero, one):
        self._m = m  # list with m[0] = one, shared and growing
        self._zero = zero
        self._one = one
        self._memo = {}

    def get(self, s, d):
        if d == 0:
            return self._one
        if s == 0:
            return self._zero
        if s == 1:
            return self._m[d]
        key = (s, d)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        acc = self._zero
        for e in range(d + 1):
            term = self.get(s - 1, e)
            if e != d:
                term = term * self._m[d - e]
            acc = acc + term
        self._memo[key] = acc
        return acc


def _free_c2m(c, zero, one):
    length = len(c)
    m = [one]
    table = _PowerTable(m, zero, one)
    out = []
    for k in range(1, length + 1):
        acc = zero
        for s in range(1, k + 1):
            acc = acc + c[s - 1] * table.get(s, k - s)
        out.append(acc)
        m.append(acc)
    return out


def _free_m2c(m_entries, zero, one):
    length = len(m_entries)
    m = [one] + list(m_entries)
    table = _PowerTable(m, zero, one)
    c = []
    for k in range(1, length + 1):
        acc = m[k]
        for s in range(1, k):
            acc = acc - c[s - 1] * table.get(s, k - s)
        c.append(acc)
    return c


def _classical_c2m(c, zero, one):
    length = len(c)
    m = [one]
    out = []
    for k in range(1, length + 1):
        acc = zero
        for s in range(1, k + 1):
            weight = math.comb(k - 1, s - 1) * math.factorial(s - 1)
            acc = acc + c[s - 1] * weight * m[k - s]
        out.append(acc)
        m.append(acc)
    return out


def _classical_m2c(m_entries, zero, one):
    length = len(m_entries)
    m = [one] + list(m_entries)
    c = []
    for k in range(1, length + 1):
        acc = m[k]
        for s in range(1, k):
            weight = math.comb(k - 1, s - 1) * math.factorial(s - 1)
            acc = acc - c[s - 1] * weight * m[k - s]
        c.append(acc / math.factorial(k - 1))
    return c


# ---------------------------------------------------------------------------
# Partition-sum oracle paths.
# ---------------------------------------------------------------------------


def _block_weight(sizes, c, flavor):
    acc = ONE
    for s in sizes:
        term = c[s - 1]
        if flavor == "classical":
            term = term * math.factorial(s - 1)
        acc = acc * term
    return acc


def _oracle_c2m(c, flavor):
    noncrossing = flavor == "free"
    out = []
    for k in range(1, len(c) + 1):
        if k > DEFAULT_MAX_GROUND_SIZE:
            raise SizeLimitError(
                f"oracle transform needs partitions of {k} elements, beyond the cap"
            )
        acc = ZERO
        for sizes, count in block_size_profiles(k, noncrossing):
            acc = acc + count * _block_weight(sizes, c, flavor)
        out.append(acc)
    return out


def _oracle_m2c(m_entries, flavor):
    noncrossing = flavor == "free"
    c: list[QSqrt2] = []
    for k in range(1, len(m_entries) + 1):
        if k > DEFAULT_MAX_GROUND_SIZE:
            raise SizeLimitError(
                f"oracle transform needs partitions of {k} elements, beyond the cap"
            )
        single_weight = math.factorial(k - 1) if flavor == "classical" else 1
        acc = m_entries[k - 1]
        # every multi-block profile only involves cumulants below order k
        for sizes, count in block_size_profiles(k, noncrossing):
            if len(sizes) == 1:
                continue
            acc = acc - count * _block_weight(sizes, c, flavor)
        c.append(acc / single_weight)
    return c


# ---------------------------------------------------------------------------
# Public transforms.
# ---------------------------------------------------------------------------


def _check_method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def cumulants_to_moments(seq: Sequence, method: str = "recursive") -> Sequence:
    """Moments of the law whose cumulant sequence is ``seq``.

    Exact; the default runs the conditioned triangular recursion, the
    oracle path sums over enumerated partitions (ground size capped).
    """
    _check_method(method)
    if seq.kind != "cumulants":
        raise ValueError("cumulants_to_moments expects a cumulant sequence")
    c = list(seq.entries)
    if method == "oracle":
        m = _oracle_c2m(c, seq.flavor)
    elif seq.flavor == "free":
        m = _free_c2m(c, ZERO, ONE)
    else:
        m = _classical_c2m(c, ZERO, ONE)
    return Sequence(seq.flavor, "moments", tuple(m))


def moments_to_cumulants(seq: Sequence, method: str = "recursive") -> Sequence:
    """Cumulant sequence of the law with moments ``seq``; exact inverse
    of :func:`cumulants_to_moments`."""
    _check_method(method)
    if seq.kind != "moments":
        raise ValueError("moments_to_cumulants expects a moment sequence")
    m = list(seq.entries)
    if method == "oracle":
        c = _oracle_m2c(m, seq.flavor)
    elif seq.flavor == "free":
        c = _free_m2c(m, ZERO, ONE)
    else:
        c = _classical_m2c(m, ZERO, ONE)
    return Sequence(seq.flavor, "cumulants", tuple(c))


# ---------------------------------------------------------------------------
# Gateaux derivative of the moments-to-cumulants map.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dual:
    """val + eps*eps_part with eps**2 = 0, components in Q[sqrt(2)].

    Running the plain transform recursions on dual inputs differentiates
    them mechanically; this is the independent oracle for the explicit
    derivative recursions below.
    """

    val: QSqrt2
    eps_part: QSqrt2

    @classmethod
    def lift(cls, value) -> "Dual":
        if isinstance(value, Dual):
            return value
        return cls(QSqrt2.coerce(value), ZERO)

    def __add__(self, other):
        other = Dual.lift(other)
        return Dual(self.val + other.val, self.eps_part + other.eps_part)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.eps_part)

    def __sub__(self, other):
        other = Dual.lift(other)
        return Dual(self.val - other.val, self.eps_part - other.eps_part)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        other = Dual.lift(other)
        return Dual(
            self.val * other.val,
            self.val * other.eps_part + self.eps_part * other.val,
        )

    __rmul__ = __mul__

    def __truediv__(self, divisor):
        if isinstance(divisor, (int, Fraction)):
            q = QSqrt2.coerce(divisor)
            return Dual(self.val / q, self.eps_part / q)
        raise TypeError("dual division is only needed by exact scalar weights")


_DUAL_ZERO = Dual(ZERO, ZERO)
_DUAL_ONE = Dual(ONE, ZERO)


@dataclass(frozen=True)
class DirectionalDerivative:
    """A base point, a direction, and the cumulant-side tangent at it."""

    base: Sequence
    direction: Sequence
    result: Sequence

    def __post_init__(self):
        same_len = len(self.base) == len(self.direction) == len(self.result)
        same_flavor = self.base.flavor == self.direction.flavor == self.result.flavor
        if not (same_len and same_flavor):
            raise ValueError("base, direction and result must share length and flavor")


def gateaux_derivative(base: Sequence, direction: Sequence, method: str = "recursive") -> Sequence:
    """Directional derivative of moments-to-cumulants at ``base`` along
    ``direction``, as a cumulant-side tangent sequence.

    The tangent f is the unique solution of the partition-sum system in
    which one block of each partition carries f and the others carry the
    base cumulants.  The default differentiates the triangular recursion
    explicitly (product rule on the conditioned sums); ``method="dual"``
    replays the undifferentiated recursion over dual numbers instead and
    is kept as an independent oracle.
    """
    if method not in ("recursive", "dual"):
        raise ValueError(f"method must be 'recursive' or 'dual', got {method!r}")
    if base.kind != "moments" or direction.kind != "moments":
        raise ValueError("gateaux_derivative expects moment sequences")
    if base.flavor != direction.flavor:
        raise ValueError("base and direction must share a flavor")
    if len(base) != len(direction):
        raise ValueError("base and direction must share a length")

    if method == "dual":
        duals = [Dual(b, d) for b, d in zip(base.entries, direction.entries)]
        core = _free_m2c if base.flavor == "free" else _classical_m2c
        out = core(duals, _DUAL_ZERO, _DUAL_ONE)
        return Sequence(base.flavor, "cumulants", tuple(t.eps_part for t in out))

    if base.flavor == "free":
        f = _free_gateaux(list(base.entries), list(direction.entries))
    else:
        f = _classical_gateaux(list(base.entries), list(direction.entries))
    return Sequence(base.flavor, "cumulants", tuple(f))


def _free_gateaux(m_base, m_dir):
    length = len(m_base)
    c_base = _free_m2c(m_base, ZERO, ONE)
    m = [ONE] + m_base
    d = [ZERO] + m_dir  # the zeroth moment is constant, so its tangent is 0
    table = _PowerTable(m, ZERO, ONE)
    f: list[QSqrt2] = []
    for k in range(1, length + 1):
        acc = d[k]
        for s in range(1, k):
            acc = acc - f[s - 1] * table.get(s, k - s)
        # product rule over the s factors of the composition sums
        for s in range(1, k + 1):
            inner = ZERO
            for e in range(k - s):
                inner = inner + table.get(s - 1, e) * d[k - s - e]
            acc = acc - c_base[s - 1] * s * inner
        f.append(acc)
    return f


def _classical_gateaux(m_base, m_dir):
    length = len(m_base)
    c_base = _classical_m2c(m_base, ZERO, ONE)
    m = [ONE] + m_base
    d = [ZERO] + m_dir
    f: list[QSqrt2] = []
    for k in range(1, length + 1):
        acc = d[k]
        for s in range(1, k):
            weight = math.comb(k - 1, s - 1) * math.factorial(s - 1)
            acc = acc - f[s - 1] * weight * m[k - s]
        for s in range(1, k + 1):
            weight = math.comb(k - 1, s - 1) * math.factorial(s - 1)
            acc = acc - c_base[s - 1] * weight * d[k - s]
        f.append(acc / math.factorial(k - 1))
    return f
