"""Tests for the Riesz-type sums, decay scans, and the Mellin identity.

High-precision reference values come from scripts/oracles/gen_riesz.py
(mpmath at 40 digits, exact integer coefficients) and are frozen here.
"""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rieszmellin.riesz_sums as rs
from rieszmellin.lfunction_model import builtin, coefficient_table
from rieszmellin.riesz_sums import (
    DecayScanResult,
    RieszConfig,
    TailBoundError,
    decay_scan,
    mellin_transform_check,
    partial_M,
    riesz_P,
    riesz_P_corrected,
    scan_csv,
    scan_json,
    summatory_M,
)

# frozen references (scripts/oracles/gen_riesz.py)
P_ZETA_Y100_N4000 = -0.02748416863313594369329
P_CHI3_Y9_Z03_N2000 = 0.2990074371272710920199
GAMMA_QUARTER = 3.625609908221908311931
MINUS_8_LN2 = -5.545177444479562475338

ZETA = builtin("zeta")
CHI3 = builtin("dirichlet:3:1")
DK17 = builtin("dedekind_quadratic:17")
IMQ = builtin("dedekind_quadratic:-4")


class TestConfig:
    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            RieszConfig(y=0.0)
        with pytest.raises(ValueError):
            RieszConfig(y=1.0, N=0)
        with pytest.raises(ValueError):
            RieszConfig(y=1.0, tail_tol=0.0)
        with pytest.raises(ValueError):
            RieszConfig(y=1.0, epsilon=0.5)

    def test_z_coerced_complex(self):
        assert isinstance(RieszConfig(y=1.0, z=1).z, complex)


class TestSeriesValues:
    def test_zeta_against_reference(self):
        got = riesz_P(ZETA, RieszConfig(y=100.0, N=4000, tail_tol=1.0))
        assert abs(got - P_ZETA_Y100_N4000) < 1e-15
        assert abs(got.imag) == 0.0

    def test_odd_character_with_weight(self):
        got = riesz_P(CHI3, RieszConfig(y=9.0, z=0.3, N=2000, tail_tol=1.0))
        assert abs(got - P_CHI3_Y9_Z03_N2000) < 1e-15

    def test_weight_is_even_in_z(self):
        cfg_p = RieszConfig(y=50.0, z=0.7, N=500, tail_tol=1.0)
        cfg_m = RieszConfig(y=50.0, z=-0.7, N=500, tail_tol=1.0)
        assert riesz_P(ZETA, cfg_p) == riesz_P(ZETA, cfg_m)

    def test_imaginary_quadratic_degree_two(self):
        # single-component alpha = 1, so kernel arg is y/n^2 and the closed
        # path uses e^{-x} - 1
        tab = coefficient_table(IMQ, 300)
        got = riesz_P(IMQ, RieszConfig(y=30.0, N=300, tail_tol=1.0), tab)
        n = np.arange(1, 301, dtype=float)
        ref = float(np.sum(tab.b[1:].real / n * np.expm1(-30.0 / n**2)))
        assert abs(got - ref) < 1e-14

    def test_large_y_with_real_weight_stays_finite(self):
        # Gaussian decay beats the cosh weight for every term, so the
        # log-space assembly must not overflow on the way to a tiny value
        got = riesz_P(CHI3, RieszConfig(y=1e8, z=1.0, N=400000, tail_tol=1.0))
        assert np.isfinite(got.real)
        assert abs(got) < 1e-2

    def test_kernel_with_pole_overflows_honestly(self):
        # the constant part of the zeta-family kernel leaves a bare cosh
        # weight; at this y its true size is ~1e4342, beyond double range
        got = riesz_P(ZETA, RieszConfig(y=1e8, z=1.0, N=40000, tail_tol=1.0))
        assert not np.isfinite(got.real)

    def test_table_reuse_matches_fresh_build(self):
        tab = coefficient_table(ZETA, 5000)
        cfg = RieszConfig(y=64.0, N=3000, tail_tol=1.0)
        assert riesz_P(ZETA, cfg, table=tab) == riesz_P(ZETA, cfg)

    @given(y=st.floats(min_value=50.0, max_value=5000.0))
    @settings(max_examples=15, deadline=None)
    def test_matches_plain_vector_formula(self, y):
        tab = coefficient_table(ZETA, 2000)
        got = riesz_P(ZETA, RieszConfig(y=y, N=2000, tail_tol=1.0), tab)
        n = np.arange(1, 2001, dtype=float)
        ref = 2.0 * float(np.sum(tab.b[1:].real / n * np.expm1(-y / n**2)))
        assert abs(got - ref) < 1e-13


class TestQuadratureFallback:
    def test_matches_closed_path(self, monkeypatch):
        cfg = RieszConfig(y=16.0, N=60, tail_tol=1.0)
        closed = riesz_P(ZETA, cfg)
        monkeypatch.setattr(rs, "_closed_term_evaluator", lambda data: None)
        quad = riesz_P(ZETA, cfg)
        assert abs(quad - closed) < 1e-10 * max(1.0, abs(closed))

    def test_weighted_fallback(self, monkeypatch):
        cfg = RieszConfig(y=9.0, z=0.4, N=30, tail_tol=5.0)
        closed = riesz_P(CHI3, cfg)
        monkeypatch.setattr(rs, "_closed_term_evaluator", lambda data: None)
        quad = riesz_P(CHI3, cfg)
        assert abs(quad - closed) < 1e-10


class TestTailBound:
    def test_rejects_unreachable_tolerance(self):
        with pytest.raises(TailBoundError):
            riesz_P(ZETA, RieszConfig(y=100.0, N=2000, tail_tol=1e-12))

    def test_rejects_args_outside_decay_regime(self):
        with pytest.raises(TailBoundError):
            riesz_P(ZETA, RieszConfig(y=1e6, N=500, tail_tol=1.0))

    def test_auto_n_meets_tolerance(self):
        got = riesz_P(ZETA, RieszConfig(y=100.0, tail_tol=1e-6))
        dense = riesz_P(ZETA, RieszConfig(y=100.0, N=200000, tail_tol=1.0))
        assert abs(got - dense) < 2e-6

    def test_envelope_estimate_for_zeta(self):
        A, p = rs._small_x_envelope(ZETA.data)
        assert 1.7 < p < 2.2
        assert A < 50.0


class TestCorrected:
    def test_simple_pole_shifts_by_scaled_partial_sum(self):
        y = 1e4
        tab = coefficient_table(ZETA, 20000)
        cfg = RieszConfig(y=y, N=20000, tail_tol=1.0)
        base = riesz_P(ZETA, cfg, tab)
        corr = riesz_P_corrected(ZETA, cfg, tab)
        h = int(y ** 0.4)
        shift = 2.0 * float(np.sum(tab.b[1:h].real / np.arange(1, h, dtype=float)))
        assert abs((corr - base) - shift) < 1e-12

    def test_no_pole_means_no_correction(self):
        cfg = RieszConfig(y=400.0, N=5000, tail_tol=1.0)
        assert riesz_P_corrected(CHI3, cfg) == riesz_P(CHI3, cfg)

    def test_small_y_has_empty_correction(self):
        cfg = RieszConfig(y=2.0, N=2000, tail_tol=1.0)
        assert riesz_P_corrected(ZETA, cfg) == riesz_P(ZETA, cfg)

    def test_double_pole_correction_value(self):
        # real-quadratic data has a double pole; for D=17, y=30 the two
        # surviving terms collapse to 4 ln(7.5/30) = -8 ln 2
        tab = coefficient_table(DK17, 10)
        got = rs._correction(DK17.data, tab, 30.0, 0.1)
        assert abs(got - MINUS_8_LN2) < 1e-8

    def test_epsilon_controls_cutoff(self):
        y = 1e4
        tab = coefficient_table(ZETA, 20000)
        wide = riesz_P_corrected(
            ZETA, RieszConfig(y=y, N=20000, tail_tol=1.0, epsilon=0.1), tab
        )
        narrow = riesz_P_corrected(
            ZETA, RieszConfig(y=y, N=20000, tail_tol=1.0, epsilon=0.4), tab
        )
        # epsilon=0.4 keeps only n < 10^{0.4}, i.e. n <= 1
        assert wide != narrow


class TestSummatory:
    def test_known_mertens_values(self):
        assert summatory_M(ZETA, 10.0) == -1.0
        assert summatory_M(ZETA, 1e4) == -23.0
        assert summatory_M(ZETA, 0.5) == 0.0

    def test_partial_sums(self):
        assert partial_M(ZETA, 5, 4) == 0.0
        got = partial_M(ZETA, 1, 3)
        assert abs(got - (1.0 - 0.5 - 1.0 / 3.0)) < 1e-15
        with pytest.raises(ValueError):
            partial_M(ZETA, 0, 10)

    @given(h=st.integers(min_value=1, max_value=50),
           mid=st.integers(min_value=0, max_value=50),
           tail=st.integers(min_value=1, max_value=50))
    @settings(max_examples=25, deadline=None)
    def test_partial_sums_are_additive(self, h, mid, tail):
        n1 = h + mid
        n2 = n1 + tail
        tab = coefficient_table(ZETA, 200)
        whole = partial_M(ZETA, h, n2, tab)
        split = partial_M(ZETA, h, n1, tab) + partial_M(ZETA, n1 + 1, n2, tab)
        assert abs(whole - split) < 1e-13


class TestDecayScan:
    def test_rejects_bad_grid(self):
        with pytest.raises(ValueError):
            decay_scan(ZETA, 0.0, [100.0, 50.0, 200.0, 400.0], N_policy=2000)
        with pytest.raises(ValueError):
            decay_scan(ZETA, 0.0, [100.0], N_policy=2000)

    def test_too_few_points_after_exclusion(self):
        with pytest.raises(ValueError, match="usable grid points"):
            decay_scan(ZETA, 0.0, [100.0, 200.0, 400.0], N_policy=2000)

    def test_sparse_grid_can_lose_every_point(self):
        # 13 points over [1e2, 1e4] land alternating in sign, so the
        # exclusion rule removes all of them; the caller must densify
        with pytest.raises(ValueError, match="0 of 13"):
            decay_scan(ZETA, 0.0, np.logspace(2, 4, 13), N_policy=20000)

    def test_scan_shape_and_fit(self):
        grid = np.logspace(2, 4, 21)
        res = decay_scan(ZETA, 0.0, grid, N_policy=20000)
        assert isinstance(res, DecayScanResult)
        assert len(res.values) == 21 and len(res.kept) == 21
        assert res.N == 20000
        assert np.isfinite(res.fitted_slope)
        assert res.slope_stderr > 0
        assert 4 <= sum(res.kept) < 21  # oscillation forces some exclusions
        assert res.tail_bound < 1e-3

    def test_scan_uses_corrected_sum_for_pole_data(self):
        grid = np.logspace(2, 3, 11)
        res = decay_scan(ZETA, 0.0, grid, N_policy=20000)
        tab = coefficient_table(ZETA, 20000)
        cfg = RieszConfig(y=100.0, N=20000, tail_tol=1.0)
        assert res.values[0] == riesz_P_corrected(ZETA, cfg, tab)

    def test_corrected_override_forces_plain_sum(self):
        grid = np.logspace(2, 3, 11)
        res = decay_scan(ZETA, 0.0, grid, N_policy=20000, corrected=False)
        tab = coefficient_table(ZETA, 20000)
        cfg = RieszConfig(y=100.0, N=20000, tail_tol=1.0)
        assert res.values[0] == riesz_P(ZETA, cfg, tab)
        assert res.values[0] != riesz_P_corrected(ZETA, cfg, tab)

    def test_csv_and_json_round_trip(self):
        grid = np.logspace(2, 4, 21)
        res = decay_scan(ZETA, 0.0, grid, N_policy=20000)
        csv = scan_csv(res)
        lines = csv.strip().split("\n")
        assert lines[0] == "y,re,im,abs,log10y,log10abs"
        assert len(lines) == 22
        row = lines[1].split(",")
        assert len(row) == 6
        assert abs(float(row[0]) - 100.0) < 1e-9
        payload = json.loads(scan_json(res))
        assert payload["N"] == 20000
        assert payload["points_total"] == 21
        assert payload["points_used"] == sum(res.kept)

    def test_bit_identical_across_thread_counts(self, monkeypatch):
        grid = np.logspace(2, 4, 21)
        monkeypatch.setenv("RIESZ_THREADS", "1")
        one = scan_csv(decay_scan(ZETA, 0.0, grid, N_policy=20000))
        monkeypatch.setenv("RIESZ_THREADS", "8")
        eight = scan_csv(decay_scan(ZETA, 0.0, grid, N_policy=20000))
        assert one == eight

    def test_auto_policy_picks_sufficient_n(self):
        res = decay_scan(ZETA, 0.0, np.logspace(2, 3, 11))
        assert res.tail_bound < 1.1e-6
        assert res.N > math.sqrt(1000.0)


class TestPowerSeriesShortcut:
    def test_matches_direct_evaluation(self):
        tab = coefficient_table(CHI3, 30000)
        ev = rs._power_series_small_y(CHI3, tab, 0.5)
        for y in (1e-3, 1e-6, 1e-12):
            direct = rs._series_value(CHI3.data, tab, y, 0.5, tab.N)
            assert abs(ev(y) - direct) <= 1e-13 * abs(direct)

    def test_unavailable_when_kernel_has_pole(self):
        tab = coefficient_table(ZETA, 100)
        assert rs._power_series_small_y(ZETA, tab, 0.0) is None


class TestMellinIdentity:
    def test_identity_at_quarter_point(self):
        lhs, rhs, defect = mellin_transform_check(CHI3, 0.25, 0.0, N=150000)
        assert abs(rhs - 2.0 * GAMMA_QUARTER) < 1e-10
        assert defect < 1e-5

    def test_identity_with_weight(self):
        _, _, defect = mellin_transform_check(CHI3, 0.25, 0.5, N=150000)
        assert defect < 1e-5

    def test_identity_at_complex_point(self):
        _, _, defect = mellin_transform_check(CHI3, 0.2 + 0.1j, 0.0, N=150000)
        assert defect < 1e-4

    def test_strip_is_enforced(self):
        for s in (0.6, 0.0, -0.1, 0.5):
            with pytest.raises(ValueError, match="Re s"):
                mellin_transform_check(CHI3, s, 0.0, N=1000)

    def test_requires_regular_origin(self):
        with pytest.raises(ValueError, match="beta"):
            mellin_transform_check(ZETA, 0.25, 0.0, N=1000)
