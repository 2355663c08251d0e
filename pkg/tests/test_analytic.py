"""Floating-point transform layer: Cauchy transforms, inversion, free
convolution, the transition map, the evolution identity, perturbations,
and the boundary eigenfunction family."""

import cmath
import math

import numpy as np
import pytest

from freeclt.analytic import (
    CHI,
    AtomMixture,
    CauchyLaw,
    ChebyshevEigen,
    DensityTable,
    DomainError,
    EigenParameter,
    GridTooSmallError,
    InversionError,
    SchemaError,
    Semicircle,
    SingularityError,
    StolzRegion,
    boundary_density,
    cauchy_prime,
    cauchy_transform,
    chi_eigenfunction,
    classical_fourier_check,
    descriptor_from_payload,
    dt_action_on_psi,
    eigen_cauchy_transform,
    eigen_density,
    free_convolve,
    invert_K,
    mixture_r_transform,
    necessary_condition_probe,
    omega_prime,
    pde_theorem_check,
    perturbation_psi,
    r_transform,
    richardson3,
    transition_omega,
)
from freeclt.special_functions import chebyshev_density_value

RNG_SEED = 20260818


def semicircle_table(radius=2.0, count=801):
    xs = np.linspace(-radius, radius, count)
    vals = 2.0 * np.sqrt(np.clip(radius**2 - xs**2, 0.0, None)) / (math.pi * radius**2)
    return DensityTable(tuple(xs), tuple(vals))


def positive_descriptors():
    return [
        CHI,
        Semicircle(0.5, 1.5),
        CauchyLaw(0.0, 1.0),
        CauchyLaw(-1.0, 0.3),
        AtomMixture((0.0,), (1.0,)),
        AtomMixture((-1.0, 1.0), (0.5, 0.5)),
        semicircle_table(),
    ]


def upper_half_points(count, seed=RNG_SEED):
    rng = np.random.default_rng(seed)
    return [
        complex(x, y)
        for x, y in zip(rng.uniform(-4, 4, count), rng.uniform(0.1, 4, count))
    ]


class TestCauchyTransform:
    def test_semicircle_closed_form(self):
        for z in upper_half_points(20):
            got = cauchy_transform(CHI, z)
            want = (z - cmath.sqrt(z - 2) * cmath.sqrt(z + 2)) / 2.0
            assert abs(got - want) < 1e-12

    def test_semicircle_against_quadrature(self):
        table = semicircle_table(2.0, 4001)
        for z in (1j, 2 + 0.8j, -1.5 + 2j):
            assert abs(cauchy_transform(CHI, z) - cauchy_transform(table, z)) < 1e-5

    def test_standard_cauchy_closed_form(self):
        law = CauchyLaw(0.0, 1.0)
        for z in upper_half_points(20):
            assert abs(cauchy_transform(law, z) - 1.0 / (z + 1j)) < 1e-14

    def test_cauchy_against_substitution_quadrature(self):
        # integrate the Cauchy kernel with t = tan(u) over (-pi/2, pi/2)
        law = CauchyLaw(0.0, 1.0)
        us = np.linspace(-math.pi / 2 + 1e-9, math.pi / 2 - 1e-9, 200001)
        ts = np.tan(us)
        z = 0.7 + 1.3j
        integrand = 1.0 / ((z - ts) * math.pi * (1 + ts**2)) * (1 + ts**2)
        got = complex(np.trapezoid(integrand, us))
        assert abs(got - cauchy_transform(law, z)) < 1e-8

    def test_single_atom(self):
        atom = AtomMixture((0.0,), (1.0,))
        for z in upper_half_points(10):
            assert abs(cauchy_transform(atom, z) - 1.0 / z) < 1e-15

    def test_atom_pair(self):
        pair = AtomMixture((-1.0, 1.0), (0.5, 0.5))
        z = 0.3 + 1.1j
        want = 0.5 / (z + 1) + 0.5 / (z - 1)
        assert abs(cauchy_transform(pair, z) - want) < 1e-15

    def test_real_axis_rejected(self):
        for descriptor in positive_descriptors():
            with pytest.raises(DomainError):
                cauchy_transform(descriptor, 1.5)

    def test_positivity_and_reflection(self):
        rng = np.random.default_rng(RNG_SEED)
        zs = [
            complex(x, y)
            for x, y in zip(rng.uniform(-5, 5, 200), rng.uniform(1e-3, 5, 200))
        ]
        for descriptor in positive_descriptors():
            for z in zs:
                g = cauchy_transform(descriptor, z)
                assert g.imag < 0
                mirrored = cauchy_transform(descriptor, z.conjugate())
                assert abs(mirrored - g.conjugate()) < 1e-12

    def test_decay_at_infinity(self):
        # stay at moderate |z|: the closed forms subtract nearly equal
        # terms, so relative accuracy degrades past |z| ~ 1e5
        for descriptor in positive_descriptors():
            z = 1e3j
            assert abs(z * cauchy_transform(descriptor, z) - 1.0) < 2e-3

    def test_prime_matches_central_difference(self):
        h = 1e-5
        for descriptor in positive_descriptors():
            for z in (0.4 + 1.2j, -2.1 + 0.7j):
                numeric = (
                    cauchy_transform(descriptor, z + h)
                    - cauchy_transform(descriptor, z - h)
                ) / (2 * h)
                assert abs(cauchy_prime(descriptor, z) - numeric) < 1e-6


class TestInversion:
    def test_chi_inverse_closed_form(self):
        for w in StolzRegion().grid(20):
            assert abs(invert_K(CHI, w) - (w + 1.0 / w)) < 1e-10

    def test_r_transform_of_chi_is_identity(self):
        for w in StolzRegion().grid(20):
            assert abs(r_transform(CHI, w) - w) < 1e-10

    def test_r_transform_general_semicircle(self):
        mu = Semicircle(0.7, 1.2)
        for w in StolzRegion().grid(10):
            want = 0.7 + (1.2**2 / 4.0) * w
            assert abs(r_transform(mu, w) - want) < 1e-10

    def test_r_transform_of_cauchy_is_constant(self):
        law = CauchyLaw(0.0, 1.0)
        for w in StolzRegion().grid(10):
            assert abs(r_transform(law, w) + 1j) < 1e-10

    def test_r_transform_of_atom_is_its_position(self):
        atom = AtomMixture((0.7,), (1.0,))
        for w in StolzRegion().grid(10):
            assert abs(r_transform(atom, w) - 0.7) < 1e-10

    def test_consistency_on_stolz_grid(self):
        grid = StolzRegion().grid(20)
        for descriptor in positive_descriptors():
            for w in grid:
                z = invert_K(descriptor, w)
                assert abs(cauchy_transform(descriptor, z) - w) <= 1e-10

    def test_scaling_law(self):
        # dilating by r rescales the R-transform argument and value by r
        r = 1.0 / math.sqrt(2.0)
        mu = Semicircle(0.0, 2.0)
        dilated = Semicircle(0.0, 2.0 * r)
        for w in StolzRegion().grid(12):
            lhs = r_transform(dilated, w)
            rhs = r * r_transform(mu, r * w)
            assert abs(lhs - rhs) < 1e-8

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            invert_K(CHI, 0j)

    def test_signed_descriptor_rejected(self):
        with pytest.raises(DomainError):
            invert_K(ChebyshevEigen(2), -0.1j)

    def test_divergence_reports_residual(self):
        table = semicircle_table(2.0, 201)
        with pytest.raises(InversionError) as info:
            invert_K(table, 10 + 10j)
        assert info.value.residual > 0

    def test_richardson_kills_two_orders(self):
        f = lambda e: 3.0 - 2.0 * e + 5.0 * e * e
        got = richardson3(f(1e-2), f(5e-3), f(2.5e-3))
        assert abs(got - 3.0) < 1e-12

    def test_boundary_density_of_chi(self):
        for x in (-1.5, -0.4, 0.0, 0.8, 1.9):
            got = boundary_density(lambda z: cauchy_transform(CHI, z), x)
            want = math.sqrt(4.0 - x * x) / (2.0 * math.pi)
            assert abs(got - want) < 1e-5


class TestFreeConvolve:
    def test_semicircle_sum_is_dilated_semicircle(self):
        grid = np.linspace(-3, 3, 100)
        table = free_convolve(CHI, CHI, grid)
        worst = 0.0
        for x, v in zip(table.grid, table.values):
            want = math.sqrt(max(8.0 - x * x, 0.0)) / (4.0 * math.pi)
            worst = max(worst, abs(v - want))
        assert worst <= 1e-3
        assert abs(table.mass() - 1.0) <= 2e-3

    def test_atom_translates(self):
        atom = AtomMixture((0.7,), (1.0,))
        grid = np.linspace(-1.8, 3.2, 101)
        table = free_convolve(atom, CHI, grid)
        for x, v in zip(table.grid, table.values):
            # the pinned offsets smear an inverse-sqrt edge; stay off it
            if min(abs(x - (0.7 - 2.0)), abs(x - (0.7 + 2.0))) < 0.05:
                continue
            shifted = x - 0.7
            want = math.sqrt(max(4.0 - shifted * shifted, 0.0)) / (2.0 * math.pi)
            assert abs(v - want) <= 1e-3

    def test_cauchy_sum_doubles_scale(self):
        law = CauchyLaw(0.0, 1.0)
        grid = np.linspace(-8, 8, 100)
        table = free_convolve(law, law, grid)
        for x, v in zip(table.grid, table.values):
            want = 2.0 / (math.pi * (x * x + 4.0))
            assert abs(v - want) <= 1e-4

    def test_grid_too_small_detected(self):
        with pytest.raises(GridTooSmallError):
            free_convolve(CHI, CHI, np.linspace(-1, 1, 60))

    def test_signed_descriptor_rejected(self):
        with pytest.raises(DomainError):
            free_convolve(ChebyshevEigen(1), CHI, np.linspace(-3, 3, 20))


class TestTransitionMap:
    def test_conjugacy_residual(self):
        beta = 1.0 / math.sqrt(2.0)
        for z in upper_half_points(50):
            omega = transition_omega(z)
            lhs = cauchy_transform(CHI, omega)
            rhs = beta * cauchy_transform(CHI, z)
            assert abs(lhs - rhs) <= 1e-9

    def test_spot_value_at_2i(self):
        omega = transition_omega(2j)
        assert abs(cauchy_transform(CHI, omega) - cauchy_transform(CHI, 2j) / math.sqrt(2)) <= 1e-9

    def test_expansion_at_infinity(self):
        deviations = [
            abs(transition_omega(complex(0, y)) / complex(0, y) - math.sqrt(2.0))
            for y in (10.0, 1e3)
        ]
        assert deviations[1] < deviations[0]
        assert deviations[1] < 1e-4

    def test_maps_upper_half_plane_into_itself(self):
        for z in upper_half_points(100):
            assert transition_omega(z).imag > 0

    def test_alpha_one_is_affine(self):
        for z in upper_half_points(20):
            assert abs(transition_omega(z, alpha=1) - (2 * z + 1j)) < 1e-12
            # conjugacy for the standard Cauchy law, beta = 2**(-1/1)
            g = lambda u: 1.0 / (u + 1j)
            assert abs(g(2 * z + 1j) - 0.5 * g(z)) < 1e-12

    def test_rejects_other_alpha_and_lower_half(self):
        with pytest.raises(ValueError):
            transition_omega(1j, alpha=3)
        with pytest.raises(DomainError):
            transition_omega(1 - 1j)

    def test_omega_prime_matches_difference_quotient(self):
        for z in (0.5 + 1j, -1 + 2j):
            h = 1e-6
            numeric = (transition_omega(z + h) - transition_omega(z - h)) / (2 * h)
            assert abs(omega_prime(z) - numeric) < 1e-6


class TestDtAction:
    def test_eigenfunctions_scale_by_the_spectrum(self):
        for n in range(1, 6):
            psi = chi_eigenfunction(n)
            lam = 2.0 ** (1.0 - n / 2.0)
            for z in upper_half_points(20):
                got = dt_action_on_psi(psi, z)
                want = lam * psi(z)
                assert abs(got - want) <= 1e-6 * abs(want)

    def test_zero_function(self):
        assert dt_action_on_psi(lambda z: 0j, 1 + 1j) == 0j

    def test_constant_exponent_case(self):
        # the n = 1 member carries eigenvalue 2**(1 - 1/2) = sqrt(2)
        psi = chi_eigenfunction(1)
        z = 0.3 + 1.7j
        assert abs(dt_action_on_psi(psi, z) - math.sqrt(2) * psi(z)) <= 1e-6 * abs(psi(z))

    def test_alpha_one_spectrum(self):
        # for the Cauchy flavor the a-th eigenfunction scales by 2**(-a)
        for a in (0, 1, 2):
            psi = lambda z: -((z + 1j) ** (-(a + 2)))
            z = 0.4 + 0.9j
            got = dt_action_on_psi(psi, z, alpha=1)
            want = 2.0 ** (-a) * psi(z)
            assert abs(got - want) <= 1e-6 * abs(want)


class TestEvolutionIdentity:
    def test_monomial_directions_at_chi(self):
        for power in (1, 2, 3):
            psi = lambda w: w**power
            for z in upper_half_points(20):
                assert pde_theorem_check(CHI, psi, z) <= 1e-6

    def test_zero_direction(self):
        assert pde_theorem_check(CHI, lambda w: 0j, 1 + 2j) == 0.0

    def test_r_transform_direction_grows_variance(self):
        # deforming along psi(w) = w moves chi through semicircles of
        # growing variance; the identity residual stays at roundoff scale
        z = 0.9 + 1.4j
        assert pde_theorem_check(CHI, lambda w: w, z) <= 1e-6

    def test_cauchy_base_point(self):
        law = CauchyLaw(0.0, 1.0)
        for z in (1j, 1 + 1j, -0.5 + 2j):
            assert pde_theorem_check(law, lambda w: w * w, z) <= 1e-6


class TestPerturbation:
    def test_vanishes_when_measures_agree(self):
        for w in StolzRegion().grid(8):
            assert abs(perturbation_psi(CHI, CHI, w)) < 1e-12

    def test_first_order_error_quarters_when_eps_halves(self):
        nu = AtomMixture((-1.0, 1.0), (0.5, 0.5))
        w = -0.25j
        psi = perturbation_psi(CHI, nu, w)
        errors = []
        for eps in (1e-2, 5e-3):
            mixed = mixture_r_transform(CHI, nu, eps, w)
            first_order = r_transform(CHI, w) - eps * psi
            errors.append(abs(mixed - first_order))
        ratio = errors[0] / errors[1]
        assert 3.2 <= ratio <= 4.8

    def test_inverse_formula_reconstructs_target_transform(self):
        # G_mu(z) + psi(G_mu(z)) * G_mu'(z) recovers G_nu(z) exactly
        nu = AtomMixture((-1.0, 1.0), (0.5, 0.5))
        for z in upper_half_points(12):
            g_mu = cauchy_transform(CHI, z)
            value = g_mu + perturbation_psi(CHI, nu, g_mu) * cauchy_prime(CHI, z)
            assert abs(value - cauchy_transform(nu, z)) <= 1e-8

    def test_mixture_matches_endpoint(self):
        nu = CauchyLaw(0.0, 1.0)
        w = -0.2j
        assert abs(mixture_r_transform(CHI, nu, 0.0, w) - r_transform(CHI, w)) < 1e-10


class TestEigenFamily:
    def test_admissibility_envelope(self):
        EigenParameter(2.0)
        EigenParameter(-0.5)
        EigenParameter(1.0, -0.7, 0.3)
        with pytest.raises(ValueError):
            EigenParameter(0.5, 0.3)
        with pytest.raises(ValueError):
            EigenParameter(-1.5)

    def test_integer_case_spot_value(self):
        assert eigen_density(EigenParameter(2.0), 0.0) == pytest.approx(-0.5)

    def test_integer_case_matches_chebyshev_density(self):
        for n in range(1, 5):
            params = EigenParameter(float(n))
            for t in np.linspace(-1.9, 1.9, 21):
                want = math.pi * chebyshev_density_value(n, float(t))
                assert eigen_density(params, float(t)) == pytest.approx(
                    want, abs=1e-9
                )

    def test_integer_case_parity_and_tails(self):
        for n in range(1, 5):
            params = EigenParameter(float(n))
            for t in (0.3, 1.1, 1.8):
                assert eigen_density(params, -t) == pytest.approx(
                    (-1.0) ** n * eigen_density(params, t), abs=1e-10
                )
            for t in (2.5, -3.0, 10.0):
                # the left tail carries sin(n*pi), zero only up to roundoff
                assert abs(eigen_density(params, t)) < 1e-15

    def test_edge_is_singular(self):
        with pytest.raises(SingularityError):
            eigen_density(EigenParameter(2.0), 2.0)
        with pytest.raises(SingularityError):
            eigen_density(EigenParameter(2.0), -2.0)

    def test_boundary_values_of_the_transform(self):
        # Stieltjes inversion of the closed-form transform reproduces the
        # three-piece density formula
        for params in (
            EigenParameter(2.0),
            EigenParameter(3.0),
            EigenParameter(1.5, 0.4, 0.2),
        ):
            for x in np.linspace(-1.5, 1.5, 10):
                got = math.pi * boundary_density(
                    lambda z: eigen_cauchy_transform(params, z), float(x)
                )
                assert abs(got - eigen_density(params, float(x))) <= 1e-4

    def test_transform_matches_descriptor(self):
        for n in (1, 2, 3):
            params = EigenParameter(float(n))
            for z in upper_half_points(10):
                a = eigen_cauchy_transform(params, z)
                b = cauchy_transform(ChebyshevEigen(n), z)
                assert abs(a - b) < 1e-12

    def test_moments_by_quadrature_are_binomial_counts(self):
        # (1/pi) * integral of t**(n+2k) * density(t) over (-2, 2) equals
        # C(n+2k, k); substitute t = 2 cos(theta) so the edge factor cancels
        nodes = 32
        thetas = [math.pi * (j + 0.5) / nodes for j in range(nodes)]
        for n in range(1, 5):
            params = EigenParameter(float(n))
            for k in range(5):
                order = n + 2 * k
                acc = 0.0
                for theta in thetas:
                    t = 2.0 * math.cos(theta)
                    smooth = eigen_density(params, t) * math.sqrt(4.0 - t * t)
                    acc += t**order * smooth
                acc /= nodes
                assert abs(acc - math.comb(order, k)) < 1e-8


class TestClassicalFrequencySide:
    def test_residuals_are_roundoff(self):
        assert classical_fourier_check(1, 1.0) <= 1e-12
        assert classical_fourier_check(3, 2.5) <= 1e-12
        for n in range(1, 7):
            for t in np.linspace(-3, 3, 13):
                assert classical_fourier_check(n, float(t)) <= 1e-12

    def test_zero_frequency(self):
        for n in range(1, 5):
            assert classical_fourier_check(n, 0.0) == 0.0


class TestStolzMachinery:
    def test_region_validation(self):
        with pytest.raises(ValueError):
            StolzRegion(half_angle=2.0)
        with pytest.raises(ValueError):
            StolzRegion(radius=-1.0)

    def test_grid_stays_in_lower_sector(self):
        region = StolzRegion()
        for w in region.grid(30):
            assert w.imag < 0
            assert abs(w) <= region.radius + 1e-12
            angle = abs(cmath.phase(w) + math.pi / 2)
            assert angle <= region.half_angle + 1e-12

    def test_ray_halves(self):
        ray = StolzRegion(radius=0.4).ray(5)
        for a, b in zip(ray, ray[1:]):
            assert abs(b / a - 0.5) < 1e-15

    def test_necessary_condition_decreases_along_ray(self):
        for params in (EigenParameter(2.0), EigenParameter(-0.5), EigenParameter(1.0, 0.8)):
            values = necessary_condition_probe(params, count=12)
            assert all(b < a for a, b in zip(values, values[1:]))


class TestDescriptorPayloads:
    def test_all_types_parse(self):
        assert descriptor_from_payload({"type": "semicircle", "radius": 2}) == CHI
        assert descriptor_from_payload(
            {"type": "cauchy_law", "scale": 1.5}
        ) == CauchyLaw(0.0, 1.5)
        assert descriptor_from_payload({"type": "chebyshev_eigen", "n": 3}) == ChebyshevEigen(3)
        atoms = descriptor_from_payload({"type": "atom_mixture", "points": [-1, 1]})
        assert atoms == AtomMixture((-1.0, 1.0), (0.5, 0.5))
        table = descriptor_from_payload(
            {"type": "density_table", "grid": [0, 1], "values": [1, 1]}
        )
        assert isinstance(table, DensityTable)

    def test_errors_name_fields(self):
        with pytest.raises(SchemaError, match="radius"):
            descriptor_from_payload({"type": "semicircle"})
        with pytest.raises(SchemaError, match="type"):
            descriptor_from_payload({"type": "gamma"})
        with pytest.raises(SchemaError, match=r"points\[1\]"):
            descriptor_from_payload({"type": "atom_mixture", "points": [1, "x"]})
        with pytest.raises(SchemaError):
            descriptor_from_payload({"type": "semicircle", "radius": -1})
        with pytest.raises(SchemaError):
            descriptor_from_payload("semicircle")

    def test_density_table_validation(self):
        with pytest.raises(ValueError):
            DensityTable((0.0, 0.0), (1.0, 1.0))
        with pytest.raises(ValueError):
            DensityTable((0.0, 1.0), (1.0,))
        table = DensityTable((0.0, 1.0), (1.0, 1.0))
        assert table.mass() == pytest.approx(1.0)
