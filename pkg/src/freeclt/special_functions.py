"""Eigenfunction families of the linearized central limit step, and the
exact identities that tie them to the combinatorial layer.

The classical eigenfunctions are derivatives of the Gaussian kernel,
with Hermite polynomials in the convention H_{n+1} = H_n' - x*H_n (so
H_n is (-1)**n times the probabilists' polynomial); the free ones are
Chebyshev polynomials of the first kind against the arcsine kernel on
[-2, 2].  Moments of both families reproduce the columns of the
linearization matrix, which is checked here through closed forms, a
symbolic integration-by-parts oracle, and Gauss-Chebyshev quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import PowerSeries, QSqrt2, as_fraction
from .cumulants import Sequence


@dataclass(frozen=True)
class OrthoPoly:
    """A polynomial with exact rational coefficients, ascending powers."""

    family: str
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must match the degree")

    def __call__(self, x):
        acc = 0 * x  # matches the argument type: float, complex, Fraction
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def hermite_poly(n: int) -> OrthoPoly:
    """H_n with e**(x**2/2) d^n/dx^n e**(-x**2/2) = H_n(x).

    Three-term form: H_0 = 1, H_{n+1} = H_n' - x*H_n.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return OrthoPoly("hermite", 0, (Fraction(1),))
    prev = hermite_poly(n - 1)
    coeffs = [Fraction(0)] * (n + 1)
    for j, c in enumerate(prev.coeffs):
        if j >= 1:
            coeffs[j - 1] += j * c  # derivative term
        coeffs[j + 1] -= c  # -x * H_{n-1}
    return OrthoPoly("hermite", n, tuple(coeffs))


@lru_cache(maxsize=None)
def chebyshev_poly(n: int) -> OrthoPoly:
    """First-kind Chebyshev polynomial, T_n(cos t) = cos(n t)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return OrthoPoly("chebyshev1", 0, (Fraction(1),))
    if n == 1:
        return OrthoPoly("chebyshev1", 1, (Fraction(0), Fraction(1)))
    a = chebyshev_poly(n - 1).coeffs
    b = chebyshev_poly(n - 2).coeffs
    coeffs = [Fraction(0)] * (n + 1)
    for j, c in enumerate(a):
        coeffs[j + 1] += 2 * c
    for j, c in enumerate(b):
        coeffs[j] -= c
    return OrthoPoly("chebyshev1", n, tuple(coeffs))


# ---------------------------------------------------------------------------
# Moment sequences of the eigen-densities.
# ---------------------------------------------------------------------------


def _column_moment(flavor: str, n: int, order: int) -> Fraction:
    # order = n + 2k; zero below n, at odd gaps, and for order < n
    if order < n or (order - n) % 2 == 1:
        return Fraction(0)
    k = (order - n) // 2
    if flavor == "free":
        return Fraction(math.comb(order, k))
    return Fraction(math.factorial(order), n * math.factorial(k) * 2**k)


def hermite_density_moments(n: int, max_order: int) -> Sequence:
    """Moments of the n-th Gaussian-derivative eigenfunction, normalized
    so the order n + 2k moment equals (n+2k)!/(n * k! * 2**k).

    These are exactly the column n entries of the classical
    linearization matrix.
    """
    if n < 1 or max_order < 1:
        raise ValueError("need n >= 1 and max_order >= 1")
    entries = tuple(
        QSqrt2(_column_moment("classical", n, order)) for order in range(1, max_order + 1)
    )
    return Sequence("classical", "moments", entries)


def chebyshev_density_moments(n: int, max_order: int) -> Sequence:
    """Moments of the n-th Chebyshev eigenfunction against the arcsine
    kernel on [-2, 2]; the order n + 2k moment is binomial(n+2k, k),
    matching column n of the free linearization matrix."""
    if n < 1 or max_order < 1:
        raise ValueError("need n >= 1 and max_order >= 1")
    entries = tuple(
        QSqrt2(_column_moment("free", n, order)) for order in range(1, max_order + 1)
    )
    return Sequence("free", "moments", entries)


def gaussian_derivative_moment_by_parts(n: int, order: int) -> Fraction:
    """Independent oracle for the Gaussian-derivative moments.

    Integrating x**order against d^n/dx^n exp(-x**2/2) by parts n times
    leaves the falling factorial order!/(order-n)! times a plain Gaussian
    moment; the common factor (-1)**n sqrt(2*pi) cancels in the
    normalization, which pins the order-n moment to (n-1)!.
    """
    if order < n or (order - n) % 2 == 1:
        return Fraction(0)
    j = (order - n) // 2
    falling = Fraction(math.factorial(order), math.factorial(order - n))
    gauss = Fraction(math.factorial(2 * j), math.factorial(j) * 2**j)  # (2j-1)!!
    unnormalized = falling * gauss
    at_n = Fraction(math.factorial(n))
    return unnormalized / at_n * math.factorial(n - 1)


def hermite_fourier_pair(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of the Fourier-side identity
    a_{n+2k,n} / (n+2k)! = (1/n) (1/2)**k / k!
    for the classical matrix entries; returned exactly."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    lhs = _column_moment("classical", n, n + 2 * k) / math.factorial(n + 2 * k)
    rhs = Fraction(1, n) * Fraction(1, 2) ** k / math.factorial(k)
    return lhs, rhs


def fourier_series_identity(n: int, max_order: int) -> bool:
    """Check, coefficient by coefficient in the frequency variable, that
    the exponential generating function of column n equals
    (1/n) (it)**n exp(-t**2/2) after factoring out (it)**n.

    Powers of i at even offsets contribute the sign (-1)**k, which is
    folded in exactly; the comparison is between rational series.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    kmax = max(0, (max_order - n) // 2)
    order = 2 * kmax
    lhs = [Fraction(0)] * (order + 1)
    for k in range(kmax + 1):
        coeff = _column_moment("classical", n, n + 2 * k) / math.factorial(n + 2 * k)
        lhs[2 * k] = (-1) ** k * coeff
    rhs = [Fraction(0)] * (order + 1)
    for k in range(kmax + 1):
        rhs[2 * k] = Fraction(1, n) * Fraction(-1, 2) ** k / math.factorial(k)
    return PowerSeries(tuple(lhs)) == PowerSeries(tuple(rhs))


# ---------------------------------------------------------------------------
# Density values, for sampling and quadrature bridges.
# ---------------------------------------------------------------------------


def hermite_density_value(n: int, x: float) -> float:
    """Pointwise value of the normalized n-th Gaussian-derivative
    eigenfunction (a signed density for n > 0)."""
    if n < 1:
        raise ValueError("need n >= 1")
    scale = (-1.0) ** n / (math.sqrt(2.0 * math.pi) * n)
    return scale * float(hermite_poly(n)(float(x))) * math.exp(-0.5 * x * x)


def chebyshev_density_value(n: int, t: float) -> float:
    """Pointwise value of the n-th Chebyshev eigen-density
    T_n(t/2) / (pi*sqrt(4-t**2)) on (-2, 2); zero off the open support."""
    if n < 1:
        raise ValueError("need n >= 1")
    t = float(t)
    if abs(t) >= 2.0:
        return 0.0
    return float(chebyshev_poly(n)(t / 2.0)) / (math.pi * math.sqrt(4.0 - t * t))


def gauss_chebyshev_nodes(count: int) -> tuple[np.ndarray, float]:
    """Quadrature absorbing the arcsine kernel on [-2, 2]:
    integral of f(t)/sqrt(4-t**2) dt is (pi/count) * sum f(nodes).

    Exact for polynomial f of degree below 2*count.
    """
    if count < 1:
        raise ValueError("need at least one node")
    i = np.arange(1, count + 1)
    nodes = 2.0 * np.cos((2 * i - 1) * np.pi / (2 * count))
    return nodes, np.pi / count


def chebyshev_moment_quadrature(n: int, order: int, count: int = 256) -> float:
    """Order-th moment of the n-th Chebyshev eigen-density by
    Gauss-Chebyshev quadrature; the 1/sqrt(4-t**2) factor is absorbed by
    the nodes and the 1/pi normalization by the weight."""
    nodes, weight = gauss_chebyshev_nodes(count)
    poly = chebyshev_poly(n)
    values = np.array([float(poly(t / 2.0)) for t in nodes])
    return float(np.sum(nodes**order * values) * weight / np.pi)


# ---------------------------------------------------------------------------
# Generating-function identities on the Cauchy-transform side.
# ---------------------------------------------------------------------------


def catalan_generating_series(order: int) -> PowerSeries:
    """The series w(u) = sum_k Catalan(k) u**(2k+1), cut at ``order``,
    characterized by w = u * (1 + w**2).

    In the variable u = 1/z this is the Cauchy transform of the
    semicircle law, and its powers generate the free eigenfunction
    transforms.
    """
    w = PowerSeries.zero(order)
    u = PowerSeries.monomial(1, order) if order >= 1 else PowerSeries.zero(order)
    one = PowerSeries.one(order)
    # each pass stabilizes two more coefficients
    for _ in range(order // 2 + 1):
        w = u * (one + w * w)
    return w


def lemma_Fn_identity(n: int, order: int) -> bool:
    """Check that -(1/n) w(u)**n has u**(n+2k) coefficient
    -(1/(n+2k)) * binomial(n+2k, k) for all n+2k <= order.

    This is the antiderivative form of the free eigenfunction transform
    written in the variable u = 1/z.
    """
    if n < 1 or order < n:
        raise ValueError("need n >= 1 and order >= n")
    w = catalan_generating_series(order)
    rhs = (w**n).scaled(Fraction(-1, n))
    for degree in range(order + 1):
        expected = Fraction(0)
        if degree >= n and (degree - n) % 2 == 0:
            k = (degree - n) // 2
            expected = Fraction(-math.comb(degree, k), degree)
        if rhs.coefficient(degree) != expected:
            return False
    return True


def rothe_identity(n: int, m: int, t: int) -> tuple[Fraction, Fraction]:
    """Both sides of the convolution identity

        sum over k+l=t of [n/(n+2k)] C(n+2k, k) * [m/(m+2l)] C(m+2l, l)
            = [(n+m)/(n+m+2t)] C(n+m+2t, t)

    returned exactly; it expresses w**n * w**m = w**(n+m) coefficientwise.
    """
    if n < 1 or m < 1 or t < 0:
        raise ValueError("need n, m >= 1 and t >= 0")
    lhs = Fraction(0)
    for k in range(t + 1):
        l = t - k
        left = Fraction(n, n + 2 * k) * math.comb(n + 2 * k, k)
        right = Fraction(m, m + 2 * l) * math.comb(m + 2 * l, l)
        lhs += left * right
    rhs = Fraction(n + m, n + m + 2 * t) * math.comb(n + m + 2 * t, t)
    return lhs, rhs
