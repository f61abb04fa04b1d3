import math

import numpy as np
import pytest

from gup_heat import einstein, oracle
from gup_heat.core import DomainError, EinsteinParams, TemperatureGrid

FIG1_PARAMS = EinsteinParams(theta_E=240.0, kb_gamma2=10**-4.5)
FIG1_GRID = TemperatureGrid(1.0, 700.0, 700)


class TestMeanEnergy:
    def test_b_zero_is_planck(self):
        for delta in (0.3, 1.0, 5.0, 20.0):
            expected = 0.5 + 1.0 / (math.exp(delta) - 1.0)
            assert einstein.mean_energy(delta, 0.0) == pytest.approx(
                expected, rel=1e-14)

    def test_delta_one(self):
        assert einstein.mean_energy(1.0, 0.0) == pytest.approx(
            0.5 + 1.0 / (math.e - 1.0), rel=1e-15)

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_against_oracle_at_first_order(self):
        # formula and oracle share O(b) content; discrepancy must be O(b^2)
        d1 = abs(einstein.mean_energy(1.0, 0.01)
                 - oracle.oracle_mean_energy(1.0, 0.01))
        d2 = abs(einstein.mean_energy(1.0, 0.005)
                 - oracle.oracle_mean_energy(1.0, 0.005))
        assert d1 / d2 == pytest.approx(4.0, rel=0.2)


class TestCvStandard:
    def test_dulong_petit_limit(self):
        assert abs(einstein.cv_standard(1e-6) - 1.0) < 1e-10

    def test_delta_one(self):
        assert einstein.cv_standard(1.0) == pytest.approx(
            math.e / (math.e - 1.0) ** 2, rel=1e-13)

    def test_low_temperature(self):
        assert einstein.cv_standard(50.0) == pytest.approx(
            2500.0 * math.exp(-50.0), rel=1e-10)

    def test_underflow_guard(self):
        v = einstein.cv_standard(705.0)
        assert v == pytest.approx(705.0**2 * math.exp(-705.0), rel=1e-10)

    def test_monotone_decreasing_in_delta(self):
        deltas = np.geomspace(1e-6, 700.0, 300)
        values = [einstein.cv_standard(float(d)) for d in deltas]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            einstein.cv_standard(0.0)


class TestCvCorrection:
    def test_gamma_zero(self):
        assert einstein.cv_correction(2.0, 0.0) == 0.0

    def test_sign_at_fig1_b(self):
        assert einstein.cv_correction(1.0, 7.589e-3) < 0

    def test_large_delta_single_term(self):
        b = 1e-3
        expected = b * 50.0**3 * (2.0 / 50.0 - 1.0) * math.exp(-50.0)
        assert einstein.cv_correction(50.0, b) == pytest.approx(
            expected, rel=1e-12)

    def test_nonpositive_over_log_grid(self):
        for delta in np.geomspace(0.01, 100.0, 50):
            assert einstein.cv_correction(float(delta), 1e-3) <= 0


class TestAsymptotics:
    def test_low_T_b_zero(self):
        std, corr = einstein.cv_low_T_asymptotic(50.0, 0.0)
        assert corr == 0.0

    def test_low_T_standard_agreement(self):
        for delta in (16.0, 20.0, 30.0):
            std, _ = einstein.cv_low_T_asymptotic(delta, 0.0)
            full = einstein.cv_standard(delta)
            assert abs(std - full) / full < 1e-6

    def test_low_T_correction_negative(self):
        _, corr = einstein.cv_low_T_asymptotic(20.0, 1e-3)
        assert corr < 0

    def test_high_T_formal_b_zero(self):
        assert einstein.cv_high_T_formal(0.1, 0.0, 5) == (1.0, 0.0)

    def test_high_T_formal_finite(self):
        std, corr = einstein.cv_high_T_formal(0.1, 1e-3, 5)
        assert std == 1.0 and math.isfinite(corr)

    def test_high_T_formal_diverges(self):
        # magnitude grows without bound with j_max: documents the divergence
        mags = [abs(einstein.cv_high_T_formal(0.1, 1e-3, j)[1])
                for j in (10, 100, 1000)]
        assert mags[0] < mags[1] < mags[2]


class TestRelativeChange:
    def test_b_zero(self):
        assert einstein.relative_change(1.0, 0.0) == 0.0

    def test_linear_in_b(self):
        assert einstein.relative_change(2.0, 2e-3) == pytest.approx(
            2.0 * einstein.relative_change(2.0, 1e-3), rel=1e-14)

    def test_underflow_is_error(self):
        with pytest.raises(DomainError):
            einstein.relative_change(800.0, 1e-3)

    def test_dip_then_growth_shape(self):
        # theta_E = 240 K, k_B gamma^2 = 1e-3: relative change falls, then
        # grows, with a single slope sign change in 20..130 K
        b = 1e-3 * 240.0
        temps = np.arange(20.0, 131.0)
        rel = np.array([einstein.relative_change(240.0 / t, b) for t in temps])
        slope_signs = np.sign(np.diff(rel))
        changes = int(np.sum(slope_signs[1:] != slope_signs[:-1]))
        assert changes == 1
        assert slope_signs[0] < 0 and slope_signs[-1] > 0


class TestCurve:
    def test_fig1_total_below_standard(self):
        rows = einstein.curve(FIG1_PARAMS, FIG1_GRID)
        assert len(rows) == 700
        for r in rows:
            assert r.status == "ok"
            assert r.point.cv_total <= r.point.cv_standard

    def test_single_point_at_theta(self):
        rows = einstein.curve(EinsteinParams(theta_E=240.0),
                              TemperatureGrid(240.0, 240.0, 1))
        assert len(rows) == 1
        assert rows[0].point.cv_standard == pytest.approx(0.920674, rel=1e-6)

    def test_no_gup_no_correction(self):
        rows = einstein.curve(EinsteinParams(theta_E=240.0),
                              TemperatureGrid(10.0, 700.0, 50))
        assert all(r.point.cv_correction == 0.0 for r in rows)
        # identical code path as the textbook expression
        for r in rows:
            assert r.point.cv_total == einstein.cv_standard(240.0 / r.temperature)

    def test_point_poisoning(self):
        # T so large that delta drops below the supported minimum
        rows = einstein.curve(EinsteinParams(theta_E=240.0, kb_gamma2=1e-9),
                              TemperatureGrid(100.0, 1e9, 3,
                                              spacing="logarithmic"))
        statuses = [r.status for r in rows]
        assert statuses[0] == "ok" and statuses[-1] == "error"
        assert rows[-1].point is None

    def test_invalid_params(self):
        with pytest.raises(DomainError):
            einstein.curve(EinsteinParams(theta_E=-5.0),
                           TemperatureGrid(1.0, 2.0, 2))


class TestOracleConsistency:
    def test_discrepancy_is_second_order(self):
        delta = 1.0
        ratios = []
        for b in (1e-3, 5e-4, 2.5e-4):
            closed = (einstein.cv_standard(delta)
                      + einstein.cv_correction(delta, b))
            brute = oracle.oracle_cv(delta, b)
            ratios.append(abs(closed - brute) / b**2)
        assert max(ratios) / min(ratios) < 1.2
