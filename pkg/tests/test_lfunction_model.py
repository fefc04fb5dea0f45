"""Tests for Selberg data, derived invariants, coefficients, characters."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import divisors, mobius

from rieszmellin.lfunction_model import (
    CoefficientTable,
    DirichletCharacter,
    SelbergData,
    builtin,
    coefficient_table,
    coefficients_from_euler,
    conjugate_data,
    derive_invariants,
    dirichlet_inverse,
    is_fundamental_discriminant,
    kronecker_chi,
    load_instance_file,
)


class TestDerivedInvariants:
    def test_zeta(self):
        inv = derive_invariants(builtin("zeta").data)
        assert inv.d_F == 1.0
        assert inv.j_F == 1
        assert inv.c_F == 1.0
        assert inv.r == 0
        assert inv.L == 2 and inv.k == (1,)

    def test_real_quadratic(self):
        inv = derive_invariants(builtin("dedekind_quadratic:5").data)
        assert inv.d_F == 2.0
        assert inv.j_F == 2
        assert inv.r == 1  # pole order at s=1 of the reflected product over F
        assert inv.k == (1, 1)

    def test_imaginary_quadratic(self):
        inv = derive_invariants(builtin("dedekind_quadratic:-4").data)
        assert inv.d_F == 2.0
        assert inv.j_F == 1
        assert inv.c_F == 0.5
        assert inv.r == 0

    def test_odd_dirichlet(self):
        inv = derive_invariants(builtin("dirichlet:3:1").data)
        assert inv.j_F == 0
        assert inv.c_F == 1.0  # Re(beta)/alpha = (1/2)/(1/2)

    def test_beta_zero_threshold(self):
        d = SelbergData(Q=1.0, alpha=(Fraction(1, 2),), beta=(1e-13,), omega=1.0, k_F=0)
        assert derive_invariants(d).j_F == 1

    def test_sum_k_equals_L_d_half(self):
        for spec in ("zeta", "dirichlet:3:1", "dedekind_quadratic:5",
                     "dedekind_quadratic:-4"):
            data = builtin(spec).data
            inv = derive_invariants(data)
            assert sum(inv.k) == inv.L * inv.d_F / 2

    def test_formal_mixed_beta_margin(self):
        # Gamma(s) Gamma(s+1/2) Gamma(s-C) Gamma(s+C): nearest negative pole
        # of the integrand sits at -C
        d = SelbergData(Q=1.0, alpha=(1, 1, 1, 1), beta=(0.0, 0.5, -0.3, 0.3),
                        omega=1.0, k_F=0)
        inv = derive_invariants(d)
        assert abs(inv.c_F - 0.3) < 1e-12
        assert inv.d_F == 8.0


class TestSelbergDataValidation:
    def test_float_half_is_exact_rational(self):
        d = SelbergData(Q=1.0, alpha=(0.5,), beta=(0.0,), omega=1.0, k_F=0)
        assert d.alpha == (Fraction(1, 2),)

    def test_irrational_float_rejected(self):
        with pytest.raises(ValueError):
            SelbergData(Q=1.0, alpha=(math.sqrt(2) / 2,), beta=(0.0,), omega=1.0, k_F=0)

    @pytest.mark.parametrize(
        "kw",
        [
            {"Q": 0.0},
            {"Q": -1.0},
            {"omega": 2.0},
            {"alpha": ()},
            {"alpha": (Fraction(-1, 2),)},
            {"k_F": -1},
            {"beta": (0.0, 0.0)},  # length mismatch
        ],
    )
    def test_invalid_fields(self, kw):
        base = dict(Q=1.0, alpha=(Fraction(1, 2),), beta=(0.0,), omega=1.0, k_F=1)
        base.update(kw)
        with pytest.raises(ValueError):
            SelbergData(**base)


class TestConjugateData:
    def test_involution(self):
        d = SelbergData(Q=2.0, alpha=(Fraction(1, 2),), beta=(0.5 + 1j,),
                        omega=1j, k_F=0)
        dd = conjugate_data(conjugate_data(d))
        assert dd.beta == d.beta and dd.omega == d.omega

    def test_real_beta_fixed_point(self):
        d = builtin("zeta").data
        assert conjugate_data(d).beta == d.beta

    def test_invariants_preserved(self):
        d = SelbergData(Q=2.0, alpha=(Fraction(1, 2), Fraction(1, 3)),
                        beta=(0.5 + 1j, 0.0), omega=1j, k_F=0)
        a, b = derive_invariants(d), derive_invariants(conjugate_data(d))
        assert (a.d_F, a.j_F, a.c_F) == (b.d_F, b.j_F, b.c_F)


class TestCoefficients:
    def test_zeta_a_all_ones(self):
        ct = coefficient_table(builtin("zeta"), 200)
        assert np.all(ct.a[1:] == 1.0)

    def test_zeta_b_is_mobius_exact(self):
        ct = coefficient_table(builtin("zeta"), 500)
        for n in range(1, 501):
            assert ct.b[n].real == int(mobius(n))
            assert ct.b[n].imag == 0.0

    def test_dirichlet_completely_multiplicative(self):
        inst = builtin("dirichlet:3:1")
        chi = DirichletCharacter(3, 1)
        ct = coefficient_table(inst, 100)
        for n in range(1, 101):
            assert abs(ct.a[n] - chi(n)) < 1e-14
            assert abs(ct.b[n] - int(mobius(n)) * chi(n)) < 1e-14

    def test_dedekind_divisor_sum(self):
        # independent brute-force oracle: a(n) = sum_{d|n} chi_D(d)
        ct = coefficient_table(builtin("dedekind_quadratic:5"), 100)
        for n in range(1, 101):
            want = sum(kronecker_chi(5, d) for d in divisors(n))
            assert abs(ct.a[n] - want) < 1e-12

    def test_convolution_identity_all_builtins(self):
        for spec in ("zeta", "dirichlet:3:1", "dirichlet:4:1",
                     "dedekind_quadratic:5", "dedekind_quadratic:-4"):
            ct = coefficient_table(builtin(spec), 300)
            worst = 0.0
            for n in range(2, 301):
                s = sum(ct.a[d] * ct.b[n // d] for d in divisors(n))
                worst = max(worst, abs(s))
            assert worst < 1e-12, spec

    def test_missing_prime_factor_raises(self):
        from rieszmellin.lfunction_model import EulerFactor

        factors = {2: EulerFactor(p=2, roots=(1.0,))}
        with pytest.raises(ValueError, match="missing Euler factor"):
            coefficients_from_euler(factors, 10)

    def test_inverse_requires_unit_leading(self):
        a = np.zeros(11, dtype=complex)
        a[1] = 2.0
        with pytest.raises(ValueError):
            dirichlet_inverse(a, 10)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_random_a_inverse_roundtrip(self, seed):
        rng = np.random.default_rng(seed)
        n = 50
        a = np.zeros(n + 1, dtype=complex)
        a[1] = 1.0
        a[2:] = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        b = dirichlet_inverse(a, n)
        # convolution identity
        for m in (2, 12, 30, 47, 50):
            s = sum(a[d] * b[m // d] for d in divisors(m))
            assert abs(s) < 1e-10
        # inverse of the inverse returns the original
        aa = dirichlet_inverse(b, n)
        assert np.max(np.abs(aa - a)) < 1e-9

    def test_b_growth_empirical(self):
        # |b(n)| <= K n^(1/2) comfortably for the quadratic Dedekind instance
        ct = coefficient_table(builtin("dedekind_quadratic:5"), 5000)
        n = np.arange(1, 5001)
        assert np.max(np.abs(ct.b[1:]) / np.sqrt(n)) <= 2.0

    def test_table_validation(self):
        a = np.zeros(4, dtype=complex)
        with pytest.raises(ValueError):
            CoefficientTable(N=3, a=a, b=a)


class TestCharacters:
    def test_mod3_odd(self):
        chi = DirichletCharacter(3, 1)
        assert chi.parity == 1
        assert abs(chi(2) + 1.0) < 1e-14

    def test_root_number_mod3(self):
        # Gauss sum i*sqrt(3) makes the root number exactly 1
        inst = builtin("dirichlet:3:1")
        assert abs(inst.data.omega - 1.0) < 1e-12

    def test_root_numbers_unimodular(self):
        for q, idx in [(5, 1), (5, 2), (7, 1), (8, 1), (8, 3), (12, 3), (11, 4)]:
            chi = DirichletCharacter(q, idx)
            if chi.is_primitive:
                assert abs(abs(chi.root_number()) - 1.0) < 1e-12

    def test_imprimitive_rejected(self):
        with pytest.raises(ValueError, match="conductor"):
            builtin("dirichlet:8:2")  # induced from modulus 4

    def test_principal_rejected(self):
        with pytest.raises(ValueError):
            builtin("dirichlet:5:0")

    def test_character_multiplicative(self):
        chi = DirichletCharacter(7, 2)
        for m in range(1, 7):
            for n in range(1, 7):
                assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-13


class TestBuiltinResolution:
    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin("maass:1")

    def test_bad_discriminant(self):
        with pytest.raises(ValueError):
            builtin("dedekind_quadratic:9")

    def test_fundamental_discriminants(self):
        good = [5, -4, 8, -3, 12, -8, 13, -20]
        bad = [9, 1, 0, -9, 25]
        assert all(is_fundamental_discriminant(D) for D in good)
        assert not any(is_fundamental_discriminant(D) for D in bad)


class TestInstanceFile:
    def test_euler_roundtrip(self, tmp_path):
        p = tmp_path / "inst.json"
        obj = {
            "Q": 0.5641895835477563,
            "alpha": [[1, 2]],
            "beta": [[0.0, 0.0]],
            "omega": [1.0, 0.0],
            "k_F": 1,
            "euler": {str(q): [[1.0, 0.0]] for q in (2, 3, 5, 7)},
        }
        p.write_text(json.dumps(obj))
        inst = load_instance_file(str(p))
        assert inst.data.alpha == (Fraction(1, 2),)
        ct = coefficient_table(inst, 10)
        assert np.all(ct.a[1:] == 1.0)

    def test_coefficient_list(self, tmp_path):
        p = tmp_path / "inst.json"
        obj = {
            "Q": 1.0,
            "alpha": [[4, 1]],
            "beta": [[0.25, 0.0]],
            "omega": [1.0, 0.0],
            "k_F": 0,
            "coefficients": [[1.0, 0.0], [0.5, 0.0], [0.25, 0.0]],
        }
        p.write_text(json.dumps(obj))
        inst = load_instance_file(str(p))
        ct = coefficient_table(inst, 3)
        assert ct.a[2] == 0.5
        with pytest.raises(ValueError):
            coefficient_table(inst, 50)

    def test_missing_field(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"Q": 1.0}))
        with pytest.raises(ValueError, match="missing field"):
            load_instance_file(str(p))
