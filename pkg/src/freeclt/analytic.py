"""Floating-point analytic layer: Cauchy transforms and their functional
inverses, R-transforms, free additive convolution with Stieltjes density
recovery, the transition function conjugating the linearized limit step
to a half-plane dilation, finite-difference checks of the quasilinear
evolution identity, the mixture perturbation formula, and the continuous
eigenfunction family on the upper half plane.

Conventions.  The square root sqrt(z**2 - edge**2) carries its branch
cuts on [-edge, edge] and is asymptotic to z at infinity; every closed
form below is derived from G(z) ~ mass/z there.  Transforms of real
measures extend to the lower half plane by reflection, G(conj z) =
conj(G(z)); evaluation on the real axis itself raises DomainError.
Tolerances in this module are contracts checked by the test suite, not
aspirations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cumulants import SchemaError

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
DIVERGENCE_RUN = 5

# one-sided offsets for Stieltjes boundary values, extrapolated below
EPSILON_LADDER = (1e-2, 5e-3, 2.5e-3)

BETA = 1.0 / math.sqrt(2.0)


class DomainError(ValueError):
    """Evaluation requested outside the function's domain."""


class SingularityError(ValueError):
    """Evaluation exactly at a non-removable singularity."""


class GridTooSmallError(ValueError):
    """The requested grid misses too much of the recovered mass."""


class InversionError(RuntimeError):
    """Newton inversion failed; carries the last residual seen."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


# ---------------------------------------------------------------------------
# Measure descriptors.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Semicircle:
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class CauchyLaw:
    location: float
    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class ChebyshevEigen:
    """Signed eigen-measure of the linearized free limit step.

    Total mass is zero; the first nonvanishing moment is the n-th.  It
    is an analytic descriptor, not a probability law: convolution and
    K-inversion reject it.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("index must be at least 1")


@dataclass(frozen=True)
class AtomMixture:
    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("points and weights must be nonempty and match")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class DensityTable:
    grid: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.grid) != len(self.values) or len(self.grid) < 2:
            raise ValueError("grid and values must match with at least 2 points")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")

    def mass(self) -> float:
        return float(np.trapezoid(np.asarray(self.values), np.asarray(self.grid)))


CHI = Semicircle(0.0, 2.0)

_DESCRIPTORS = (Semicircle, CauchyLaw, ChebyshevEigen, AtomMixture, DensityTable)


def _edge_sqrt(z: complex, edge: float) -> complex:
    # sqrt(z**2 - edge**2), cut on [-edge, edge], asymptotic to z
    return cmath.sqrt(z - edge) * cmath.sqrt(z + edge)


def _require_off_axis(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("transform evaluation requires Im z != 0")
    return z


def cauchy_transform(measure, z: complex) -> complex:
    """G(z) = integral of 1/(z - t) against the measure.

    Closed forms for every analytic descriptor; trapezoidal quadrature
    for tabulated densities.  The lower half plane is served by the
    reflection G(conj z) = conj(G(z)).
    """
    z = _require_off_axis(z)
    if isinstance(measure, Semicircle):
        u = z - measure.center
        r = measure.radius
        return 2.0 * (u - _edge_sqrt(u, r)) / (r * r)
    if isinstance(measure, CauchyLaw):
        half = 1j * measure.scale if z.imag > 0 else -1j * measure.scale
        return 1.0 / (z - measure.location + half)
    if isinstance(measure, ChebyshevEigen):
        s = _edge_sqrt(z, 2.0)
        w = (z - s) / 2.0
        return w ** measure.n / s
    if isinstance(measure, AtomMixture):
        return sum(w / (z - a) for a, w in zip(measure.points, measure.weights))
    if isinstance(measure, DensityTable):
        if z.imag < 0:
            return cauchy_transform(measure, z.conjugate()).conjugate()
        xs = np.asarray(measure.grid)
        ys = np.asarray(measure.values)
        with np.errstate(over="ignore", invalid="ignore"):
            return complex(np.trapezoid(ys / (z - xs), xs))
    raise TypeError(f"unsupported measure descriptor {type(measure).__name__}")


def cauchy_prime(measure, z: complex) -> complex:
    """Derivative G'(z), closed-form where G is."""
    z = _require_off_axis(z)
    if isinstance(measure, Semicircle):
        u = z - measure.center
        r = measure.radius
        return 2.0 * (1.0 - u / _edge_sqrt(u, r)) / (r * r)
    if isinstance(measure, CauchyLaw):
        half = 1j * measure.scale if z.imag > 0 else -1j * measure.scale
        return -1.0 / (z - measure.location + half) ** 2
    if isinstance(measure, ChebyshevEigen):
        s = _edge_sqrt(z, 2.0)
        w = (z - s) / 2.0
        return -(w ** measure.n) * (measure.n * s + z) / s**3
    if isinstance(measure, AtomMixture):
        return -sum(w / (z - a) ** 2 for a, w in zip(measure.points, measure.weights))
    if isinstance(measure, DensityTable):
        if z.imag < 0:
            return cauchy_prime(measure, z.conjugate()).conjugate()
        xs = np.asarray(measure.grid)
        ys = np.asarray(measure.values)
        with np.errstate(over="ignore", invalid="ignore"):
            return complex(np.trapezoid(-ys / (z - xs) ** 2, xs))
    raise TypeError(f"unsupported measure descriptor {type(measure).__name__}")


# ---------------------------------------------------------------------------
# Newton machinery and the inverse transform K = G^{-1}.
# ---------------------------------------------------------------------------


def _newton(f, fprime, seed: complex, scale: float = 1.0) -> complex:
    """Solve f = 0 from ``seed``; declare divergence when the residual
    grows DIVERGENCE_RUN times in a row."""
    value = complex(seed)
    prev = math.inf
    best = math.inf
    grow = 0
    for _ in range(NEWTON_MAX_ITER):
        try:
            r = f(value)
        except DomainError as exc:
            raise InversionError(
                f"iteration left the transform's domain: {exc}",
                prev if math.isfinite(prev) else math.inf,
            ) from exc
        res = abs(r)
        if not math.isfinite(res):
            raise InversionError("iteration produced a non-finite residual", prev)
        best = min(best, res)
        if res <= NEWTON_TOL * scale:
            return value
        if res > prev:
            grow += 1
            if grow >= DIVERGENCE_RUN:
                raise InversionError("newton iteration diverged", res)
        else:
            grow = 0
        prev = res
        d = fprime(value)
        if d == 0:
            raise InversionError("newton derivative vanished", res)
        value = value - r / d
    raise InversionError("newton iteration did not converge", best)


def _k_closed(measure):
    """(K, K') closed-form pair, or None when only the generic inverse
    is available."""
    if isinstance(measure, Semicircle):
        c, q = measure.center, measure.radius**2 / 4.0

        def k(w):
            return 1.0 / w + c + q * w

        def kp(w):
            return -1.0 / w**2 + q

        return k, kp
    if isinstance(measure, CauchyLaw):
        shift = measure.location - 1j * measure.scale

        def k(w):
            return 1.0 / w + shift

        def kp(w):
            return -1.0 / w**2

        return k, kp
    if isinstance(measure, AtomMixture) and len(measure.points) == 1:
        a = measure.points[0]

        def k(w):
            return 1.0 / w + a

        def kp(w):
            return -1.0 / w**2

        return k, kp
    return None


def invert_K(measure, w: complex) -> complex:
    """K(w), the functional inverse of the Cauchy transform, satisfying
    |G(K(w)) - w| <= 1e-10 on the nontangential neighborhood of 0.

    The zero-mass Chebyshev descriptors have G ~ z**-(n+1) at infinity,
    so no single-valued inverse exists near 0; they are rejected.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("K has a pole at w = 0")
    if isinstance(measure, ChebyshevEigen):
        raise DomainError("inverse transform needs a mass-one descriptor")
    closed = _k_closed(measure)
    if closed is not None:
        return closed[0](w)
    return _newton(
        lambda z: cauchy_transform(measure, z) - w,
        lambda z: cauchy_prime(measure, z),
        seed=1.0 / w,
        scale=max(1.0, abs(w)),
    )


def _k_handles(measure):
    """Callable (K, K') pair valid for any mass-one descriptor."""
    closed = _k_closed(measure)
    if closed is not None:
        return closed

    def k(w):
        return invert_K(measure, w)

    def kp(w):
        return 1.0 / cauchy_prime(measure, invert_K(measure, w))

    return k, kp


def r_transform(measure, w: complex) -> complex:
    """R(w) = K(w) - 1/w; its Taylor coefficients at 0 are the free
    cumulants of the measure."""
    w = complex(w)
    if w == 0:
        raise DomainError("R is defined on punctured neighborhoods of 0")
    return invert_K(measure, w) - 1.0 / w


# ---------------------------------------------------------------------------
# Stieltjes boundary values and free additive convolution.
# ---------------------------------------------------------------------------


def richardson3(d1: float, d2: float, d3: float) -> float:
    """Eliminate the linear and quadratic offset terms from samples at
    offsets eps, eps/2, eps/4."""
    e1 = 2.0 * d2 - d1
    e2 = 2.0 * d3 - d2
    return (4.0 * e2 - e1) / 3.0


def boundary_density(evaluator, x: float, offsets=EPSILON_LADDER) -> float:
    """-(1/pi) Im of ``evaluator`` at x + i*eps, extrapolated to the
    one-sided limit eps -> 0 through the three-offset ladder."""
    d = [-(evaluator(complex(x, eps)).imag) / math.pi for eps in offsets]
    return richardson3(*d)


def _rough_extent(measure) -> float:
    if isinstance(measure, Semicircle):
        return abs(measure.center) + measure.radius
    if isinstance(measure, CauchyLaw):
        return abs(measure.location) + 10.0 * measure.scale
    if isinstance(measure, AtomMixture):
        return max(abs(a) for a in measure.points)
    if isinstance(measure, DensityTable):
        return max(abs(measure.grid[0]), abs(measure.grid[-1]))
    return 2.0


def free_convolve(mu, nu, grid) -> DensityTable:
    """Density table of the free additive convolution of two mass-one
    descriptors over ``grid``.

    The inverse transforms add: the sum law has K = K_mu + K_nu - 1/w.
    Per grid point, K is Newton-inverted back to G by continuation from
    high in the upper half plane down to the offset ladder, and the
    boundary density is Richardson-extrapolated.  When both inputs are
    compactly supported the recovered mass must cover the grid: a
    deficit beyond 1e-3 raises GridTooSmallError.  Heavy-tailed Cauchy
    inputs are exempt from the mass check since no finite grid holds
    their mass.
    """
    for measure in (mu, nu):
        if isinstance(measure, ChebyshevEigen):
            raise DomainError("free convolution needs mass-one descriptors")
        if not isinstance(measure, _DESCRIPTORS):
            raise TypeError(f"unsupported measure descriptor {type(measure).__name__}")
    xs = np.asarray(grid, dtype=float)
    if xs.ndim != 1 or xs.size < 2:
        raise GridTooSmallError("grid needs at least 2 points")
    ka, kpa = _k_handles(mu)
    kb, kpb = _k_handles(nu)

    def h(w):
        return ka(w) + kb(w) - 1.0 / w

    def hp(w):
        return kpa(w) + kpb(w) + 1.0 / w**2

    top = max(8.0, 2.0 * (_rough_extent(mu) + _rough_extent(nu)))
    descent = []
    y = top
    while y > EPSILON_LADDER[0]:
        descent.append(y)
        y /= 2.0

    density = np.empty_like(xs)
    for i, x in enumerate(xs):
        w = None
        samples = []
        for y in descent:
            z = complex(x, y)
            seed = w if w is not None else 1.0 / z
            w = _newton(lambda u: h(u) - z, hp, seed, scale=max(1.0, abs(z)))
        for y in EPSILON_LADDER:
            z = complex(x, y)
            w = _newton(lambda u: h(u) - z, hp, w, scale=max(1.0, abs(z)))
            samples.append(-w.imag / math.pi)
        density[i] = richardson3(*samples)

    if not (isinstance(mu, CauchyLaw) or isinstance(nu, CauchyLaw)):
        deficit = 1.0 - float(np.trapezoid(density, xs))
        if deficit > 1e-3:
            raise GridTooSmallError(
                f"grid captures too little mass (deficit {deficit:.3e})"
            )
    return DensityTable(tuple(xs), tuple(density))


# ---------------------------------------------------------------------------
# The transition function and the linearized limit step on transforms.
# ---------------------------------------------------------------------------


def transition_omega(z: complex, alpha: int = 2) -> complex:
    """omega(z) = K(beta * G(z)) for the standard stable law of index
    alpha, the change of variables conjugating the linearized limit
    step to a dilation: G(omega(z)) = beta * G(z), beta = 2**(-1/alpha).

    Supported indices: 2 (semicircle chi) and 1 (standard Cauchy, where
    omega(z) = 2z + i exactly).
    """
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("the transition function lives on the upper half plane")
    if alpha == 2:
        u = BETA * cauchy_transform(CHI, z)
        return u + 1.0 / u
    if alpha == 1:
        u = 0.5 / (z + 1j)
        return 1.0 / u - 1j
    raise ValueError("alpha must be 1 or 2")


def omega_prime(z: complex, alpha: int = 2, step: float = 1e-6) -> complex:
    """Derivative of the transition function by central difference with
    step scaled by |z|; the evaluator is analytic so the real-direction
    difference carries the full complex derivative."""
    z = complex(z)
    h = step * max(1.0, abs(z))
    return (transition_omega(z + h, alpha) - transition_omega(z - h, alpha)) / (2.0 * h)


def dt_action_on_psi(psi, z: complex, alpha: int = 2, step: float = 1e-6) -> complex:
    """Action of the linearized limit step on an analytic direction psi,
    evaluated at z: the value is 2 * psi(omega(z)) * omega'(z)."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("evaluation point must lie in the upper half plane")
    return 2.0 * psi(transition_omega(z, alpha)) * omega_prime(z, alpha, step)


def chi_eigenfunction(n: int):
    """The n-th eigen-direction G'(z) G(z)**(n-1) of the linearized free
    limit step at chi, as a callable on the upper half plane; its
    eigenvalue under dt_action_on_psi is 2**(1 - n/2)."""
    if n < 1:
        raise ValueError("index must be at least 1")

    def psi(z: complex) -> complex:
        g = cauchy_transform(CHI, z)
        return cauchy_prime(CHI, z) * g ** (n - 1)

    return psi


# ---------------------------------------------------------------------------
# Quasilinear evolution identity and the mixture perturbation formula.
# ---------------------------------------------------------------------------


def _numeric_prime(fn, w: complex, step: float = 1e-7) -> complex:
    h = step * max(1.0, abs(w))
    return (fn(w + h) - fn(w - h)) / (2.0 * h)


def pde_theorem_check(nu, psi, z: complex, t: float = 1e-4, psi_prime=None) -> float:
    """Residual of the evolution identity G'(z) psi(G(z)) + dG/dt(z,0)
    = 0, where G(z, t) inverts the deformed transform K_nu + t*psi.

    The time derivative is a central difference at +-t; each deformed
    inverse is found by Newton seeded at the undeformed G(z).
    """
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("evaluation point must lie in the upper half plane")
    g0 = cauchy_transform(nu, z)
    lhs = cauchy_prime(nu, z) * psi(g0)
    k, kp = _k_handles(nu)
    dpsi = psi_prime if psi_prime is not None else (lambda w: _numeric_prime(psi, w))

    def deformed_g(s: float) -> complex:
        return _newton(
            lambda w: k(w) + s * psi(w) - z,
            lambda w: kp(w) + s * dpsi(w),
            seed=g0,
            scale=max(1.0, abs(z)),
        )

    dgdt = (deformed_g(t) - deformed_g(-t)) / (2.0 * t)
    return abs(lhs + dgdt)


def perturbation_psi(mu, nu, w: complex) -> complex:
    """First-order direction of the R-transform under mixing: for the
    (1-eps)mu + eps*nu family, R changes by -eps * psi + o(eps) with
    psi(w) = K_mu'(w) * (G_nu - G_mu)(K_mu(w))."""
    w = complex(w)
    z = invert_K(mu, w)
    kprime = _k_handles(mu)[1](w)
    return kprime * (cauchy_transform(nu, z) - cauchy_transform(mu, z))


def mixture_r_transform(mu, nu, eps: float, w: complex) -> complex:
    """R-transform of the convex mixture (1-eps)mu + eps*nu at w,
    computed by Newton-inverting the mixed Cauchy transform."""
    w = complex(w)
    if w == 0:
        raise DomainError("R is defined on punctured neighborhoods of 0")

    def g(z):
        return (1.0 - eps) * cauchy_transform(mu, z) + eps * cauchy_transform(nu, z)

    def gp(z):
        return (1.0 - eps) * cauchy_prime(mu, z) + eps * cauchy_prime(nu, z)

    z = _newton(lambda u: g(u) - w, gp, seed=invert_K(mu, w), scale=max(1.0, abs(w)))
    return z - 1.0 / w


# ---------------------------------------------------------------------------
# The continuous eigenfunction family.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenParameter:
    """Exponent a = x + iy and phase of a boundary eigenfunction.

    Admissible parameters (those tangent to curves of positive
    measures) satisfy x >= 1, or x >= -1 with y = 0; the constructor
    enforces this envelope.
    """

    x: float
    y: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (self.x >= 1.0 or (self.x >= -1.0 and self.y == 0.0)):
            raise ValueError(
                "inadmissible parameters: need x >= 1, or x >= -1 with y = 0"
            )


def eigen_density(params: EigenParameter, t: float) -> float:
    """Boundary-value density of the eigenfunction with the given
    parameters, in three pieces.

    On (-2, 2) the value is exp(y*acos(t/2)) cos(x*acos(t/2) - phi) /
    sqrt(4 - t**2).  Beyond the edge the transform's boundary modulus
    |w| = (|t| - sqrt(t**2 - 4))/2 < 1 enters through |w|**x and
    log|w|, damped by exp(-y*pi); the left tail carries an extra phase
    x*pi.  For integer x with y = phi = 0 both tails vanish and the
    middle piece is the degree-x Chebyshev eigenfunction (times pi).
    """
    t = float(t)
    if abs(t) == 2.0:
        raise SingularityError("density has an inverse square-root edge at |t| = 2")
    x, y, phi = params.x, params.y, params.phi
    if abs(t) < 2.0:
        theta = math.acos(t / 2.0)
        return math.exp(y * theta) * math.cos(x * theta - phi) / math.sqrt(4.0 - t * t)
    s = math.sqrt(t * t - 4.0)
    mod = (abs(t) - s) / 2.0
    inner = y * math.log(mod) + phi
    if t < 0:
        inner += x * math.pi
    return (mod**x) * math.exp(-y * math.pi) * math.sin(inner) / s


def eigen_cauchy_transform(params: EigenParameter, z: complex) -> complex:
    """Cauchy transform of the eigenfunction family,
    e^{i phi} ((z - sqrt(z**2-4))/2)**(x+iy) / sqrt(z**2-4).

    For integer x with y = phi = 0 this is the transform of the
    chebyshev_eigen descriptor; the sign is fixed by the positive
    moment contract (coefficient of z**-(n+2k+1) equals C(n+2k, k)).
    """
    z = _require_off_axis(z)
    s = _edge_sqrt(z, 2.0)
    w = (z - s) / 2.0
    a = complex(params.x, params.y)
    return cmath.exp(1j * params.phi) * cmath.exp(a * cmath.log(w)) / s


def classical_fourier_check(n: int, t: float) -> float:
    """Roundoff-level residual of the frequency-side eigen identity for
    the classical flavor: 2 (i beta t)**n e^{-(beta t)**2} equals
    2**(1-n/2) (i t)**n e^{-t**2/2} exactly."""
    if n < 1:
        raise ValueError("index must be at least 1")
    t = float(t)
    bt = BETA * t
    lhs = 2.0 * (1j * bt) ** n * math.exp(-bt * bt / 2.0) * math.exp(-bt * bt / 2.0)
    rhs = 2.0 ** (1.0 - n / 2.0) * (1j * t) ** n * math.exp(-t * t / 2.0)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Nontangential (Stolz) sampling near 0 in the lower half plane.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StolzRegion:
    """Sector {r e^{i(-pi/2 + theta)} : 0 < r <= radius,
    |theta| <= half_angle} hugging 0 nontangentially in the lower half
    plane, where the inverse transform K is defined."""

    half_angle: float = math.pi / 4.0
    radius: float = 0.5

    def __post_init__(self):
        if not (0.0 < self.half_angle < math.pi / 2.0):
            raise ValueError("half_angle must lie in (0, pi/2)")
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def grid(self, count: int) -> list[complex]:
        """Deterministic sample sweeping angles across the sector while
        the radius decays geometrically."""
        if count < 1:
            raise ValueError("need at least one sample")
        points = []
        for j in range(count):
            u = j / max(count - 1, 1)
            r = self.radius * (0.05**u)
            theta = 0.9 * self.half_angle * math.sin(6.0 * math.pi * u + 1.0)
            points.append(r * cmath.exp(1j * (-math.pi / 2.0 + theta)))
        return points

    def ray(self, count: int) -> list[complex]:
        """Central-ray sample with radii halving toward 0."""
        if count < 1:
            raise ValueError("need at least one sample")
        return [complex(0.0, -self.radius * 0.5**j) for j in range(count)]


def necessary_condition_probe(
    params: EigenParameter, region: StolzRegion | None = None, count: int = 12
) -> list[float]:
    """Samples of |w * psi(w)| for psi(w) = e^{i phi} w**(x+iy) along a
    nontangential ray shrinking to 0.

    A positivity-compatible deformation direction must send this to 0;
    for x > -1 the sequence decreases strictly along the ray.
    """
    region = region or StolzRegion()
    a = complex(params.x, params.y)
    values = []
    for w in region.ray(count):
        psi = cmath.exp(1j * params.phi) * cmath.exp(a * cmath.log(w))
        values.append(abs(w * psi))
    return values


# ---------------------------------------------------------------------------
# Wire format.
# ---------------------------------------------------------------------------


def _payload_number(payload: dict, field: str, default=None) -> float:
    if field not in payload:
        if default is None:
            raise SchemaError(f"descriptor payload missing field {field!r}")
        return default
    value = payload[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"field {field!r} must be a number")
    return float(value)


def _payload_number_list(payload: dict, field: str) -> list[float]:
    if field not in payload:
        raise SchemaError(f"descriptor payload missing field {field!r}")
    value = payload[field]
    if not isinstance(value, list) or not value:
        raise SchemaError(f"field {field!r} must be a nonempty list of numbers")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"field '{field}[{i}]' must be a number")
        out.append(float(v))
    return out


def descriptor_from_payload(payload: dict):
    """Parse a measure descriptor from its JSON object form, e.g.
    {"type": "semicircle", "center": 0, "radius": 2}."""
    if not isinstance(payload, dict):
        raise SchemaError("descriptor payload must be a JSON object")
    if "type" not in payload:
        raise SchemaError("descriptor payload missing field 'type'")
    kind = payload["type"]
    try:
        if kind == "semicircle":
            return Semicircle(
                _payload_number(payload, "center", 0.0),
                _payload_number(payload, "radius"),
            )
        if kind == "cauchy_law":
            return CauchyLaw(
                _payload_number(payload, "location", 0.0),
                _payload_number(payload, "scale"),
            )
        if kind == "chebyshev_eigen":
            n = payload.get("n")
            if isinstance(n, bool) or not isinstance(n, int):
                raise SchemaError("field 'n' must be an integer")
            return ChebyshevEigen(n)
        if kind == "atom_mixture":
            points = _payload_number_list(payload, "points")
            if "weights" in payload:
                weights = _payload_number_list(payload, "weights")
            else:
                weights = [1.0 / len(points)] * len(points)
            return AtomMixture(tuple(points), tuple(weights))
        if kind == "density_table":
            return DensityTable(
                tuple(_payload_number_list(payload, "grid")),
                tuple(_payload_number_list(payload, "values")),
            )
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"field values rejected for type {kind!r}: {exc}") from exc
    raise SchemaError(f"field 'type' has unknown value {kind!r}")
