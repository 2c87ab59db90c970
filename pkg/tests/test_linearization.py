import math

import numpy as np
import pytest

from llebif import (
    AmbiguousClassification,
    Equilibrium,
    Params,
    REVERSOR,
    SpatialSystem,
    bifurcation_curves,
    build_L,
    check_reversibility,
    classify,
    critical_points,
    curve_point,
    equilibrium_from_rho,
    solve_equilibria,
    spatial_spectrum,
)


def random_point(rng):
    alpha = rng.uniform(-0.5, 6.0)
    F = rng.uniform(0.3, 3.0)
    params = Params(int(rng.choice([1, -1])), alpha, F)
    eqs = solve_equilibria(params)
    return params, eqs[rng.integers(len(eqs))]


def assert_multiset_close(got, want, tol):
    """Compare two eigenvalue quadruples as multisets (order-free)."""
    got = np.asarray(got)
    want = np.asarray(want)
    assert len(got) == len(want) == 4
    from itertools import permutations

    best = min(
        max(abs(got[i] - want[p[i]]) for i in range(4)) for p in permutations(range(4))
    )
    assert best <= tol, (got, want, best)


class TestBuildL:
    def test_entries_at_reference_point(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        assert eq.psi_r == pytest.approx(1 / math.sqrt(5), abs=1e-14)
        assert eq.psi_i == pytest.approx(-2 / math.sqrt(5), abs=1e-14)
        L = build_L(params, eq)
        assert L[1] == pytest.approx([-8 / 5, 0.0, -9 / 5, 0.0], abs=1e-13)
        assert L[3] == pytest.approx([1 / 5, 0.0, -2 / 5, 0.0], abs=1e-13)

    def test_sign_flip_for_anomalous(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        params_m = Params(-1, params.alpha, params.F)
        L_p = build_L(params, eq)
        L_m = build_L(params_m, eq)
        assert L_m[1] == pytest.approx(-L_p[1], abs=0)
        assert L_m[3] == pytest.approx(-L_p[3], abs=0)

    def test_structural_rows(self, rng):
        for _ in range(20):
            params, eq = random_point(rng)
            L = build_L(params, eq)
            assert np.array_equal(L[0], [0.0, 1.0, 0.0, 0.0])
            assert np.array_equal(L[2], [0.0, 0.0, 0.0, 1.0])
            assert L[1, 1] == L[1, 3] == L[3, 1] == L[3, 3] == 0.0


class TestSpatialSpectrum:
    def test_double_imaginary_pair(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        rep = spatial_spectrum(params, eq)
        assert rep.trace_coeff == pytest.approx(-2.0, abs=1e-14)
        assert rep.det_coeff == pytest.approx(1.0, abs=1e-14)
        eigs = np.sort_complex(np.asarray(rep.eigenvalues))
        assert eigs == pytest.approx([-1j, -1j, 1j, 1j], abs=1e-12)
        assert rep.bif_class.kind == "IOmega2"
        assert rep.bif_class.omega == pytest.approx(1.0, abs=1e-12)

    def test_quadruple_zero(self):
        params = Params(1, 2.0, math.sqrt(2.0))
        eq = equilibrium_from_rho(params, 1.0)
        rep = spatial_spectrum(params, eq)
        assert rep.trace_coeff == 0.0 and rep.det_coeff == 0.0
        assert np.max(np.abs(rep.eigenvalues)) <= 1e-12
        assert rep.bif_class.kind == "O4"

    def test_double_real_pair_is_hyperbolic(self):
        params = Params(1, 0.0, math.sqrt(2.0))
        eq = equilibrium_from_rho(params, 1.0)
        rep = spatial_spectrum(params, eq)
        assert rep.trace_coeff == pytest.approx(4.0, abs=1e-14)
        assert rep.det_coeff == pytest.approx(4.0, abs=1e-14)
        eigs = np.sort_complex(np.asarray(rep.eigenvalues))
        s2 = math.sqrt(2.0)
        assert eigs == pytest.approx([-s2, -s2, s2, s2], abs=1e-12)
        assert rep.bif_class.kind == "Hyperbolic"

    def test_char_polynomial_root_property(self, rng):
        for _ in range(200):
            params, eq = random_point(rng)
            rep = spatial_spectrum(params, eq)
            for x in rep.eigenvalues:
                val = x**4 - rep.trace_coeff * x**2 + rep.det_coeff
                assert abs(val) <= 1e-10 * (1 + abs(x) ** 4)

    def test_quadruple_symmetry(self, rng):
        for _ in range(200):
            params, eq = random_point(rng)
            eigs = np.asarray(spatial_spectrum(params, eq).eigenvalues)
            as_set = np.sort_complex(eigs)
            assert np.allclose(np.sort_complex(-eigs), as_set, atol=1e-13)
            assert np.allclose(np.sort_complex(np.conj(eigs)), as_set, atol=1e-13)

    def test_closed_form_matches_eigensolver(self, rng):
        # oracle: a dense general-purpose eigensolve of the actual matrix
        for _ in range(1000):
            params, eq = random_point(rng)
            rep = spatial_spectrum(params, eq)
            oracle = np.linalg.eigvals(build_L(params, eq))
            assert_multiset_close(rep.eigenvalues, oracle, 1e-9)

    def test_fold_points_have_zero_determinant(self, rng):
        for _ in range(100):
            alpha = rng.uniform(1.75, 6.0)
            cp = critical_points(alpha)
            for curve in ("fold-plus", "fold-minus"):
                params, eq = curve_point(1, curve, alpha)
                rep = spatial_spectrum(params, eq)
                assert abs(rep.det_coeff) <= 1e-10 * (1 + alpha**2)
            # determinant vanishes only at the fold moduli: build a genuine
            # equilibrium with a modulus away from both folds
            rho = rng.uniform(0.1, cp.rho_plus - 0.05)
            params = Params(1, alpha, math.sqrt(rho * (1 + (rho - alpha) ** 2)))
            eq = equilibrium_from_rho(params, rho)
            assert abs(spatial_spectrum(params, eq).det_coeff) > 1e-6


class TestClassify:
    def test_iomega2_on_curve(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        bc = classify(params, eq)
        assert bc.kind == "IOmega2"
        assert bc.omega == pytest.approx(math.sqrt(3.0 - 2.0), abs=1e-12)

    def test_o2iomega_at_fold(self):
        params, eq = curve_point(1, "fold-plus", 3.0)
        bc = classify(params, eq)
        assert bc.kind == "O2IOmega"
        want = math.sqrt(2.0 / 3.0 * (2.0 * math.sqrt(6.0) - 3.0))
        assert bc.omega == pytest.approx(want, abs=1e-10)

    def test_o2_at_fold(self):
        params, eq = curve_point(1, "fold-plus", 1.8)
        assert classify(params, eq).kind == "O2"

    def test_middle_branch_is_saddle_center(self):
        params = Params(1, 3.0, 2.0)
        eqs = solve_equilibria(params)
        assert classify(params, eqs[1]).kind == "EllipticNoBif"

    def test_nonfinite_input_raises(self):
        params = Params(1, 3.0, 2.0)
        broken = Equilibrium(float("nan"), 0.0, float("nan"))
        with pytest.raises(AmbiguousClassification):
            classify(params, broken)

    def test_transition_along_rho1_curve(self):
        # the class changes exactly at alpha = 2 along F^2 = 1 + (1-alpha)^2
        kinds = []
        for alpha in np.linspace(1.8, 2.2, 41):
            params, eq = curve_point(1, "iomega2", float(alpha))
            kinds.append(classify(params, eq).kind)
        flips = [i for i in range(1, len(kinds)) if kinds[i] != kinds[i - 1]]
        assert kinds[0] == "Hyperbolic" and kinds[-1] == "IOmega2"
        assert len(flips) == 1 or (len(flips) == 2 and kinds[20] == "O4")


class TestBifurcationCurves:
    def test_normal_dispersion_alpha3(self):
        out = bifurcation_curves(1, 3.0)
        kinds = [bc.kind for bc, _, _ in out]
        assert kinds == ["IOmega2", "O2IOmega", "O2"]
        assert out[0][1] == pytest.approx(5.0, abs=1e-14)
        cp = critical_points(3.0)
        assert out[1][1] == pytest.approx(cp.F2_plus, abs=1e-12)
        assert out[2][1] == pytest.approx(cp.F2_minus, abs=1e-12)

    def test_anomalous_dispersion(self):
        out = bifurcation_curves(-1, 1.9)
        kinds = [bc.kind for bc, _, _ in out]
        assert kinds == ["IOmega2", "O2IOmega", "O2IOmega"]
        assert out[0][1] == pytest.approx(1.81, abs=1e-14)

    def test_empty_below_every_threshold(self):
        assert bifurcation_curves(1, 1.0) == []

    def test_quadruple_zero_corner(self):
        out = bifurcation_curves(1, 2.0)
        assert ("O4", pytest.approx(2.0, abs=1e-12)) in [(bc.kind, f2) for bc, f2, _ in out]


class TestReversibility:
    def test_exact_identities(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        assert check_reversibility(params, eq, 100) <= 1e-12

    def test_zero_sample(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        system = SpatialSystem(params, eq)
        assert np.max(np.abs(system.nonlinearity(np.zeros(4), 0.0))) == 0.0

    def test_corrupted_matrix_detected(self):
        params, eq = curve_point(1, "iomega2", 3.0)
        bad = build_L(params, eq).copy()
        bad[1, 0] += 1e-3
        defect = check_reversibility(params, eq, 100, L=bad)
        assert 1e-4 <= defect <= 1e-2

    def test_reversor_involution(self):
        assert np.array_equal(REVERSOR @ REVERSOR, np.eye(4))


class TestCurvePoint:
    def test_consistency_with_equilibria(self, rng):
        for _ in range(50):
            alpha = rng.uniform(2.05, 6.0)
            for curve in ("iomega2", "fold-plus", "fold-minus"):
                params, eq = curve_point(1, curve, alpha)
                assert abs(eq.rho * (1 + (eq.rho - alpha) ** 2) - params.F2) <= 1e-10 * (
                    1 + params.F2
                )
