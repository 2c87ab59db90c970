import json
import math

import numpy as np
import pytest

from llebif import (
    DomainError,
    GridSpec,
    PersistenceWarning,
    RegimeError,
    coeffs_closed,
    construct_iomega2,
    construct_o2,
    construct_o2iomega,
    curve_point,
    save_profile,
)


def even_defect(profile):
    """Max |psi(-x) - psi(x)| over the grid's symmetric pairs."""
    x, v = profile.x, profile.values
    n = len(x)
    if abs(x[0] + x[-1]) < 1e-12:  # endpoint-inclusive symmetric grid
        return float(np.max(np.abs(v - v[::-1])))
    # endpoint-exclusive periodic grid: -x[j] = x[n-j] for j >= 1
    return float(np.max(np.abs(v[1:] - v[1:][::-1])))


class TestIOmega2Families:
    def test_periodic_reference_values(self):
        prof = construct_iomega2("periodic", 1, 3.0, 1e-3, K=0.0)
        assert prof.k == pytest.approx(1.0, abs=1e-14)
        want_amp = 2.0 * math.sqrt(2e-3 * 9.0 / 490.0)
        assert prof.aux["amplitude"] == pytest.approx(want_amp, rel=1e-12)
        assert prof.truncation_order == "O(mu)"

    def test_periodic_periodicity(self):
        prof = construct_iomega2("periodic", 1, 3.0, 1e-3, K=0.0)
        per = len(prof.x) // 16  # samples per period on the commensurate grid
        assert np.max(np.abs(prof.values - np.roll(prof.values, -per))) <= 1e-12

    def test_homoclinic_reference_values(self):
        prof = construct_iomega2("homoclinic", 1, 3.0, 1e-3)
        assert prof.aux["decay"] == pytest.approx(math.sqrt(2e-3), rel=1e-12)
        want_env = 2.0 * math.sqrt(2.0 * 2.0 * 9.0 / 490.0) * math.sqrt(1e-3)
        assert prof.aux["amplitude"] == pytest.approx(want_env, rel=1e-12)
        assert prof.aux["amplitude"] == pytest.approx(0.01714, abs=5e-6)

    def test_homoclinic_background_at_ends(self):
        prof = construct_iomega2("homoclinic", 1, 3.0, 1e-3)
        assert abs(prof.values[0] - prof.background) <= 1e-8
        assert abs(prof.values[-1] - prof.background) <= 1e-8

    def test_homoclinic_regime_error(self):
        with pytest.raises(RegimeError) as err:
            construct_iomega2("homoclinic", 1, 3.0, -1e-3)
        assert err.value.inequality == "a2*mu > 0"

    def test_denominator_switch(self):
        single = construct_iomega2("homoclinic", 1, 3.0, 1e-3)
        double = construct_iomega2(
            "homoclinic", 1, 3.0, 1e-3, second_term_denominator="double"
        )
        diff = np.max(np.abs(single.values - double.values))
        assert 0.0 < diff < 1e-2  # only the second-order term moves
        with pytest.raises(DomainError):
            construct_iomega2("homoclinic", 1, 3.0, 1e-3, second_term_denominator="x")

    def test_dark_front_regimes(self):
        prof = construct_iomega2("dark-front", -1, 1.2, -1e-3)
        assert prof.aux["kink_at_zero"]
        with pytest.raises(RegimeError):
            construct_iomega2("dark-front", 1, 3.0, 1e-3)  # wrong dispersion
        with pytest.raises(RegimeError):
            construct_iomega2("dark-front", -1, 1.2, 1e-3)  # wrong mu sign
        with pytest.raises(RegimeError):
            construct_iomega2("dark-front", -1, 1.7, -1e-3)  # b2 < 0 there

    def test_evenness(self):
        for prof in (
            construct_iomega2("periodic", 1, 3.0, 1e-3, K=0.01),
            construct_iomega2("homoclinic", 1, 3.0, 1e-3),
            construct_iomega2("dark-front", -1, 1.2, -1e-3),
        ):
            assert even_defect(prof) <= 1e-12

    def test_amplitude_scaling_half_power(self):
        mus = np.array([1e-2, 1e-3, 1e-4])
        sups = []
        for m in mus:
            prof = construct_iomega2("homoclinic", 1, 3.0, float(m))
            sups.append(np.max(np.abs(prof.values - prof.background)))
        slope = np.polyfit(np.log(mus), np.log(sups), 1)[0]
        assert abs(slope - 0.5) <= 0.02


class TestO2IOmegaFamilies:
    def test_equilibrium_offset(self):
        prof = construct_o2iomega("equilibrium-minus", 1, None, 3.0, 1e-3)
        psi_star = curve_point(1, "fold-plus", 3.0)[1].psi
        offset = prof.values[0] - psi_star
        co = coeffs_closed("o2iomega", 1, 3.0)
        a0 = math.sqrt(-co.a1 * 1e-3 / co.b1)
        D = prof.aux["D"]
        assert abs(offset) == pytest.approx(a0 * math.sqrt(1 + D * D), rel=1e-12)
        assert abs(offset) == pytest.approx(0.02198, abs=5e-5)
        assert offset.real == pytest.approx(-a0, rel=1e-12)

    def test_first_kind_oscillation(self):
        K = 2e-4
        prof = construct_o2iomega("first-kind", 1, None, 3.0, 1e-3, K=K)
        psi_star = curve_point(1, "fold-plus", 3.0)[1].psi
        osc = prof.values - np.mean(prof.values)
        assert np.max(np.abs(osc)) == pytest.approx(2.0 * math.sqrt(K), rel=1e-6)
        want_k = math.sqrt(2.0 / 3.0 * (2.0 * math.sqrt(6.0) - 3.0))
        assert prof.k == pytest.approx(want_k, rel=1e-12)
        # phase pi flips the oscillation sign
        flipped = construct_o2iomega("first-kind", 1, None, 3.0, 1e-3, K=K, phase="pi")
        assert np.max(np.abs((flipped.values - np.mean(flipped.values)) + osc)) <= 1e-12

    def test_second_kind_wavenumber(self):
        prof = construct_o2iomega("second-kind", 1, None, 3.0, 1e-3, eps=0.1)
        co = coeffs_closed("o2iomega", 1, 3.0)
        want = math.sqrt(2.0) * (-co.a1 * co.b1 * 1e-3) ** 0.25
        assert prof.k == pytest.approx(want, rel=1e-12)
        assert prof.k == pytest.approx(0.4027, abs=2e-4)

    def test_homoclinic_to_periodic_core(self):
        with pytest.warns(PersistenceWarning):
            prof = construct_o2iomega(
                "homoclinic-to-periodic", 1, None, 3.0, 1e-3, K=0.0, phase=0.0
            )
        assert prof.aux["decay"] == pytest.approx(0.20133, abs=2e-5)
        # pure 1 - 3 sech^2 core: value at x = 0 sits at background - 3*(1+iD)*core
        mid = prof.evaluate(np.array([0.0]))[0]
        assert abs(mid - prof.background) == pytest.approx(
            3.0 * abs(prof.background - curve_point(1, "fold-plus", 3.0)[1].psi), rel=1e-9
        )

    def test_persistence_floor_configurable(self, recwarn):
        construct_o2iomega(
            "homoclinic-to-periodic", 1, None, 3.0, 1e-3, K=1e-4, k_min=1e-5
        )
        assert not any(isinstance(w.message, PersistenceWarning) for w in recwarn.list)

    def test_branch_selection(self):
        with pytest.warns(PersistenceWarning):
            saddle = construct_o2iomega(
                "homoclinic-to-periodic", 1, None, 3.0, 1e-3, K=0.0
            )
        with pytest.warns(PersistenceWarning):
            mirror = construct_o2iomega(
                "homoclinic-to-periodic", 1, None, 3.0, 1e-3, K=0.0, branch=-1
            )
        assert saddle.aux["branch"] == 1  # b1 > 0 at this point
        assert mirror.aux["branch"] == -1

    def test_first_kind_amplitude_positivity(self):
        co = coeffs_closed("o2iomega", 1, 3.0)
        k_max = -co.a1 * 1e-3 / co.c1  # = mu/2
        assert k_max == pytest.approx(5e-4, rel=1e-12)
        with pytest.raises(RegimeError):
            construct_o2iomega("first-kind", 1, None, 3.0, 1e-3, K=2.0 * k_max)

    def test_anomalous_fold_minus_families(self):
        # case with b1 < 0: equilibria exist for mu < 0
        prof = construct_o2iomega("second-kind", -1, "fold-minus", 3.0, -1e-3, eps=0.05)
        assert prof.k > 0
        with pytest.warns(PersistenceWarning):
            h2p = construct_o2iomega(
                "homoclinic-to-periodic", -1, "fold-minus", 3.0, -1e-3, K=1e-4
            )
        assert h2p.aux["branch"] == -1  # saddle side has sign(b1) = -1
        with pytest.raises(RegimeError):
            construct_o2iomega("equilibrium-plus", -1, "fold-minus", 3.0, 1e-3)


class TestO2Families:
    def test_homoclinic_dip(self):
        prof = construct_o2("homoclinic", 1, "1", 1.8, 1e-3)
        psi_star = curve_point(1, "fold-plus", 1.8)[1].psi
        co = coeffs_closed("o2", 1, 1.8, "fold-plus")
        a0 = math.sqrt(-co.a * 1e-3 / co.b)
        D = prof.aux["D"]
        dip = prof.evaluate(np.array([0.0]))[0] - psi_star
        assert dip == pytest.approx(2.0 * a0 * complex(1.0, D), rel=1e-12)
        assert prof.aux["saddle"] == pytest.approx(-a0, rel=1e-12)  # b < 0 in case 1

    def test_homoclinic_background(self):
        prof = construct_o2("homoclinic", 1, "1", 1.8, 1e-3)
        assert abs(prof.values[0] - prof.background) <= 1e-8
        assert abs(prof.values[-1] - prof.background) <= 1e-8

    def test_periodic_eps_zero_is_center(self):
        prof = construct_o2("periodic", 1, "1", 1.8, 1e-3, eps=0.0)
        center = construct_o2("equilibrium-plus", 1, "1", 1.8, 1e-3)
        assert np.max(np.abs(prof.values - center.values[0])) <= 1e-14

    def test_no_bounded_solution_regimes(self):
        with pytest.raises(RegimeError):
            construct_o2("homoclinic", 1, "1", 1.8, -1e-3)
        with pytest.raises(RegimeError):
            construct_o2("homoclinic", 1, "2", 2.5, 1e-3)
        construct_o2("homoclinic", 1, "2", 2.5, -1e-3)  # valid side
        construct_o2("homoclinic", -1, None, 2.5, 1e-3)  # anomalous fold-plus

    def test_case2_saddle_side(self):
        prof = construct_o2("homoclinic", 1, "2", 2.5, -1e-3)
        assert prof.aux["saddle"] > 0  # b > 0 in case 2

    def test_evenness(self):
        for prof in (
            construct_o2("homoclinic", 1, "1", 1.8, 1e-3),
            construct_o2("periodic", 1, "1", 1.8, 1e-3, eps=0.05),
        ):
            assert even_defect(prof) <= 1e-12

    def test_amplitude_scaling_half_power(self):
        mus = np.array([1e-2, 1e-3, 1e-4])
        sups = []
        for m in mus:
            prof = construct_o2("homoclinic", 1, "1", 1.8, float(m))
            sups.append(np.max(np.abs(prof.values - prof.background)))
        slope = np.polyfit(np.log(mus), np.log(sups), 1)[0]
        assert abs(slope - 0.5) <= 0.02


class TestGridsAndSerialization:
    def test_grid_uniform_and_increasing(self):
        for prof in (
            construct_iomega2("periodic", 1, 3.0, 1e-3),
            construct_iomega2("homoclinic", 1, 3.0, 1e-3),
        ):
            dx = np.diff(prof.x)
            assert np.all(dx > 0)
            assert np.max(np.abs(dx - dx[0])) <= 1e-14 * (1 + abs(prof.x[-1]))

    def test_grid_spec_validation(self):
        with pytest.raises(DomainError):
            GridSpec(n=10)
        with pytest.raises(DomainError):
            GridSpec(periods=0)

    def test_csv_and_sidecar(self, tmp_path):
        prof = construct_iomega2("homoclinic", 1, 3.0, 1e-3, grid=GridSpec(n=256))
        csv_path = tmp_path / "profile.csv"
        save_profile(prof, csv_path)
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "x,psi_re,psi_im"
        assert len(lines) == 257
        meta = json.loads((tmp_path / "profile.json").read_text())
        assert meta["family"] == "iomega2/homoclinic"
        assert meta["mu"] == 1e-3
        assert meta["truncation_order"] == "O(mu^(3/2))"

    def test_serialization_deterministic(self, tmp_path):
        prof = construct_o2("homoclinic", 1, "1", 1.8, 1e-3, grid=GridSpec(n=128))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        save_profile(prof, a)
        save_profile(prof, b)
        assert a.read_bytes() == b.read_bytes()

    def test_with_values_drops_formula(self):
        prof = construct_iomega2("homoclinic", 1, 3.0, 1e-3, grid=GridSpec(n=256))
        mutated = prof.with_values(prof.values + 1e-4)
        assert mutated.formula is None
        with pytest.raises(RegimeError):
            mutated.evaluate(np.array([0.0]))
