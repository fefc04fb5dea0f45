"""Tests for zero ingestion, L-value evaluators, bracketed zero sums, and
the two-sum identity defect.

Reference values come from scripts/oracles/gen_identity.py (mpmath, 40
digits) and the bundled ordinate list from scripts/oracles/gen_zeta_zeros.py
(Riemann-Siegel sign scan + bisection).
"""

import cmath
import math

import numpy as np
import pytest

from rieszmellin.complex_special import gamma
from rieszmellin.lfunction_model import Instance, SelbergData, builtin
from rieszmellin.zeros_and_identity import (
    IdentityReport,
    ZeroRecord,
    bracket_zeros,
    bundled_zeros_path,
    hurwitz_zeta,
    lfunction_value,
    load_zeros,
    populate_derivatives,
    residue_terms,
    rhl_defect,
    zero_count_fit,
    zero_sum,
    zeta_like_derivative,
    zeta_value,
)

# frozen references (scripts/oracles/gen_identity.py)
ZETA_3 = 1.2020569031595942854
HURWITZ_2_Q = 17.19732915450711073927
L_CHI3_2 = 0.7813024128964862968672
ZETA_K5_2 = 1.161671195618638549759
L_CHI5_1 = 0.4304089409640040388894
LN_GOLDEN = 0.4812118250596034474978
ZETA_PRIME_RHO1 = 0.7832965118670309285446 + 0.1246998297481710896909j
ZETA_AT_HALF = -1.460354508809586812889

GAMMA_1 = 14.134725141734693790
GAMMA_100 = 236.5242296658162058

ZETA = builtin("zeta")
CHI3 = builtin("dirichlet:3:1")
DK5 = builtin("dedekind_quadratic:5")
IMQ = builtin("dedekind_quadratic:-4")

RECORDS = load_zeros(bundled_zeros_path())
POPULATED = populate_derivatives(ZETA, bracket_zeros(RECORDS, 0.01))


class TestLoadZeros:
    def test_bundled_list(self):
        assert len(RECORDS) == 100
        assert abs(RECORDS[0].gamma_ordinate - GAMMA_1) < 1e-12
        assert abs(RECORDS[-1].gamma_ordinate - GAMMA_100) < 1e-10
        assert RECORDS[0].rho == 0.5 + 1j * RECORDS[0].gamma_ordinate

    def test_empty_file(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("\n\n")
        assert load_zeros(p) == []

    def test_comment_lines_and_trailing_comments(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("# first two ordinates\n14.134725 # gamma_1\n\n21.022040\n")
        recs = load_zeros(p)
        assert [r.gamma_ordinate for r in recs] == [14.134725, 21.022040]

    def test_descending_rejected(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.1\n13.9\n")
        with pytest.raises(ValueError, match="line 2"):
            load_zeros(p)

    def test_duplicate_rejected(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.1\n14.1\n")
        with pytest.raises(ValueError, match="ascending"):
            load_zeros(p)

    def test_junk_line_reported(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.1\nfoo\n")
        with pytest.raises(ValueError, match="line 2"):
            load_zeros(p)

    def test_record_validation(self):
        with pytest.raises(ValueError):
            ZeroRecord(rho=0.5 - 1j, gamma_ordinate=-1.0)


class TestAnalyticValues:
    def test_zeta_at_even_integer(self):
        assert abs(zeta_value(2.0) - math.pi**2 / 6) < 1e-14

    def test_zeta_at_three(self):
        assert abs(zeta_value(3.0) - ZETA_3) < 1e-14

    def test_zeta_at_negative_one(self):
        assert abs(zeta_value(-1.0) + 1.0 / 12.0) < 1e-14

    def test_zeta_at_half(self):
        assert abs(zeta_value(0.5) - ZETA_AT_HALF) < 1e-13

    def test_hurwitz_quarter(self):
        assert abs(hurwitz_zeta(2.0, 0.25) - HURWITZ_2_Q) < 1e-12

    def test_high_ordinate_zero_is_zero(self):
        assert abs(zeta_value(0.5 + 1j * GAMMA_100)) < 1e-11

    def test_domain_checks(self):
        with pytest.raises(ValueError, match="pole"):
            zeta_value(1.0)
        with pytest.raises(ValueError):
            hurwitz_zeta(2.0, 1.5)

    def test_dirichlet_l(self):
        assert abs(lfunction_value(CHI3, 2.0) - L_CHI3_2) < 1e-12

    def test_dedekind_product(self):
        assert abs(lfunction_value(DK5, 2.0) - ZETA_K5_2) < 1e-12

    def test_complex_character(self):
        # order-4 character mod 5: compare continuation against the plain
        # series at a point of absolute convergence
        chi5c = builtin("dirichlet:5:1")
        from rieszmellin.lfunction_model import coefficient_table

        tab = coefficient_table(chi5c, 200000)
        n = np.arange(1, 200001, dtype=float)
        direct = np.sum(tab.a[1:] * n**-3.0)
        assert abs(lfunction_value(chi5c, 3.0) - direct) < 1e-12

    def test_unknown_instance(self):
        inst = Instance(
            name="custom",
            data=SelbergData(Q=1.0, alpha=(1,), beta=(0.5,), omega=1.0, k_F=0),
            roots=lambda p: (0.0,),
        )
        with pytest.raises(NotImplementedError):
            lfunction_value(inst, 2.0)


class TestDerivative:
    def test_against_independent_oracle(self):
        d = zeta_like_derivative(ZETA, 0.5 + 1j * GAMMA_1)
        assert abs(d - ZETA_PRIME_RHO1) < 1e-11

    def test_matches_finite_differences(self):
        rho = 0.5 + 1j * GAMMA_1
        d = zeta_like_derivative(ZETA, rho)
        h = 1e-4
        fd = []
        for hh in (h, h / 2):
            fd.append((zeta_value(rho + hh) - zeta_value(rho - hh)) / (2 * hh))
        richardson = (4 * fd[1] - fd[0]) / 3
        assert abs(d - richardson) < 1e-6

    def test_strip_enforced(self):
        with pytest.raises(ValueError, match="strip"):
            zeta_like_derivative(ZETA, 1.5 + 10j)

    def test_circle_touching_zero_detected(self):
        rho = 0.5 + 1j * (GAMMA_1 + 0.0100001)
        with pytest.raises(ValueError, match="zero-free"):
            zeta_like_derivative(ZETA, rho)

    def test_close_ordinates_rejected(self):
        recs = [
            ZeroRecord(rho=0.5 + 100j, gamma_ordinate=100.0),
            ZeroRecord(rho=0.5 + 100.015j, gamma_ordinate=100.015),
        ]
        with pytest.raises(ValueError, match="simplicity"):
            populate_derivatives(ZETA, recs)

    def test_dirichlet_derivative_nonzero(self):
        # first zero of the odd mod-3 character, coarse ordinate
        rho = 0.5 + 8.039737156608j
        d = zeta_like_derivative(CHI3, rho)
        assert abs(d) > 0.1


class TestBrackets:
    def test_default_constant_merges_pairs(self):
        marked = bracket_zeros(RECORDS, 0.01)
        n_brackets = marked[-1].bracket_id + 1
        assert n_brackets == 77
        ids = [m.bracket_id for m in marked]
        assert ids == sorted(ids)

    def test_first_merge_location(self):
        marked = bracket_zeros(RECORDS, 0.01)
        first_shared = next(
            i for i in range(1, 100)
            if marked[i].bracket_id == marked[i - 1].bracket_id
        )
        g0 = marked[first_shared - 1].gamma_ordinate
        g1 = marked[first_shared].gamma_ordinate
        thr = math.exp(-0.01 * g0 / math.log(g0)) + math.exp(
            -0.01 * g1 / math.log(g1)
        )
        assert g1 - g0 < thr

    def test_large_constant_gives_singletons(self):
        marked = bracket_zeros(RECORDS, 5.0)
        assert marked[-1].bracket_id + 1 == 100

    def test_near_coincident_pair_shares_bracket(self):
        recs = [
            ZeroRecord(rho=0.5 + 100j, gamma_ordinate=100.0),
            ZeroRecord(rho=0.5 + (100.0 + 1e-9) * 1j, gamma_ordinate=100.0 + 1e-9),
        ]
        marked = bracket_zeros(recs, 0.01)
        assert marked[0].bracket_id == marked[1].bracket_id

    def test_validation(self):
        with pytest.raises(ValueError, match="positive"):
            bracket_zeros(RECORDS, 0.0)
        recs = [
            ZeroRecord(rho=0.5 + 20j, gamma_ordinate=20.0),
            ZeroRecord(rho=0.5 + 15j, gamma_ordinate=15.0),
        ]
        with pytest.raises(ValueError, match="ascending"):
            bracket_zeros(recs, 0.01)


class TestZeroSum:
    def test_empty_is_zero(self):
        assert zero_sum(ZETA, 1.0, []) == 0.0

    def test_single_pair_structure(self):
        rec = POPULATED[0]
        nu = math.sqrt(math.pi)
        got = zero_sum(ZETA, nu, [rec])
        rho_bar = rec.rho.conjugate()
        term = (
            gamma((1.0 - rho_bar) / 2.0)
            * cmath.exp(rho_bar * math.log(nu))
            / rec.f_prime.conjugate()
        )
        assert abs(got - 2.0 * term.real) < 1e-15
        assert got.imag == 0.0

    def test_terms_decay_like_stirling(self):
        nu = math.sqrt(math.pi)
        full = zero_sum(ZETA, nu, POPULATED)
        head = zero_sum(ZETA, nu, POPULATED[:60])
        g60 = POPULATED[60].gamma_ordinate
        assert abs(full - head) < math.exp(-(math.pi / 4.0) * g60) * 1e6

    def test_unpopulated_derivative_rejected(self):
        with pytest.raises(ValueError, match="simple"):
            zero_sum(ZETA, 1.0, RECORDS)


class TestResidueTerms:
    def test_zero_for_nonpositive_order(self):
        assert residue_terms(ZETA, 0.5, 0) == (0.0, 0.0)
        assert residue_terms(IMQ, 0.5, -1) == (0.0, 0.0)

    def test_real_quadratic_closed_forms(self):
        # Res@1 = 4 nu / L(1,chi5); Res@0 = -2 pi / L'(0,chi5), with
        # L'(0,chi5) = ln((1+sqrt5)/2); each divided by sqrt(nu)
        nu = 0.7
        at1, at0 = residue_terms(DK5, nu, 1)
        want1 = 4.0 * nu / L_CHI5_1 / math.sqrt(nu)
        want0 = -2.0 * math.pi / LN_GOLDEN / math.sqrt(nu)
        assert abs(at1 - want1) < 1e-8 * abs(want1)
        assert abs(at0 - want0) < 1e-8 * abs(want0)

    def test_scaling_in_nu(self):
        a1, _ = residue_terms(DK5, 0.25, 1)
        b1, _ = residue_terms(DK5, 1.0, 1)
        # at_s1 is proportional to sqrt(nu)
        assert abs(a1 / b1 - math.sqrt(0.25)) < 1e-8

    def test_limit_oracle_match(self):
        nu = 0.7
        at1, _ = residue_terms(DK5, nu, 1)

        def g(s):
            return (
                gamma((1 - s) / 2.0) ** 2
                * cmath.exp(s * math.log(nu))
                / lfunction_value(DK5, s.conjugate()).conjugate()
            )

        h = 2e-3
        v1 = h * g(1.0 + h)
        v2 = (h / 2) * g(1.0 + h / 2)
        limit = (2 * v2 - v1) / math.sqrt(nu)
        assert abs(at1 - limit) < 5e-6 * abs(at1)


class TestIdentityDefect:
    def test_self_dual_point_vanishes(self):
        rep = rhl_defect(ZETA, math.sqrt(math.pi), POPULATED, 2000)
        assert abs(rep.lhs) < 1e-12
        assert abs(rep.eta * rep.nu * float(ZETA.data.Q) ** 2 - 1.0) < 1e-12

    def test_detuned_point_closes(self):
        rep = rhl_defect(ZETA, 2.0 * math.sqrt(math.pi), POPULATED, 20000)
        assert abs(rep.defect) < 1e-6
        assert rep.n_zeros_used == 100
        assert rep.last_bracket_magnitude < 1e-50

    def test_antisymmetry_under_swap(self):
        eta = 2.0 * math.sqrt(math.pi)
        rep_a = rhl_defect(ZETA, eta, POPULATED, 5000)
        rep_b = rhl_defect(ZETA, rep_a.nu, POPULATED, 5000)
        assert abs(rep_a.lhs + rep_b.lhs) < 1e-12

    def test_simplified_relation_has_no_residue_terms(self):
        rep = rhl_defect(IMQ, 1.0, [], 500)
        assert rep.residue_s1 == 0.0 and rep.residue_s0 == 0.0
        assert np.isfinite(rep.lhs.real)

    def test_populates_missing_fields(self):
        rep = rhl_defect(ZETA, 2.0 * math.sqrt(math.pi), RECORDS[:5], 1000)
        assert rep.n_zeros_used == 5
        assert rep.bracket_c == 0.01

    def test_rejects_bad_eta(self):
        with pytest.raises(ValueError):
            rhl_defect(ZETA, -1.0, [], 100)

    def test_report_reconstructs_sides(self):
        rep = rhl_defect(ZETA, 2.0 * math.sqrt(math.pi), POPULATED, 2000)
        assert isinstance(rep, IdentityReport)
        assert abs((rep.lhs - rep.defect) - rep.rhs) < 1e-18


class TestZeroCountFit:
    def test_count_below_hundred(self):
        count, C = zero_count_fit(RECORDS, 100.0)
        assert count == 29
        assert -1.2 < C < -0.6

    def test_doubled_degree_shifts_fit(self):
        _, c1 = zero_count_fit(RECORDS, 200.0, d_F=1.0)
        _, c2 = zero_count_fit(RECORDS, 200.0, d_F=2.0)
        assert c2 < c1 - 1.0

    def test_requires_coverage(self):
        with pytest.raises(ValueError):
            zero_count_fit(RECORDS, 10.0)
        with pytest.raises(ValueError):
            zero_count_fit([], 100.0)
