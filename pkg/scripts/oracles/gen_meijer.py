"""Generate reference values for the Meijer G closed-form tests.

Standalone: uses mpmath only (not a package dependency).  Values are frozen
as literals into tests/test_meijer_closed_forms.py.

Run:  python3 scripts/oracles/gen_meijer.py
"""

import mpmath as mp

mp.mp.dps = 40


def gm0(b, z):
    """G^{m,0}_{0,m}(z | b)."""
    return mp.meijerg([[], []], [list(b), []], z)


def main():
    print("# G^{2,0}_{0,2}(1.3 | 0.2, 0.7)")
    print("G_B02_Z13 =", mp.nstr(gm0([mp.mpf("0.2"), mp.mpf("0.7")], mp.mpf("1.3")), 22))

    print("# G^{2,0}_{0,2}(1.1 | 0.35, 0.1)")
    print("G_B035_C01_Z11 =", mp.nstr(gm0([mp.mpf("0.35"), mp.mpf("0.1")], mp.mpf("1.1")), 22))

    print("# G^{3,0}_{0,3}(0.9 | 0.25, 0.25+1/3, 0.25+2/3)")
    b = [mp.mpf("0.25") + mp.mpf(j) / 3 for j in range(3)]
    print("G_B025_Z09_M3 =", mp.nstr(gm0(b, mp.mpf("0.9")), 22))

    print("# G^{5,0}_{0,5}(1.2 | 0.1 + j/5)")
    b = [mp.mpf("0.1") + mp.mpf(j) / 5 for j in range(5)]
    print("G_B01_Z12_M5 =", mp.nstr(gm0(b, mp.mpf("1.2")), 22))

    print("# G^{4,0}_{0,4}(5 | 0.25 + j/4)")
    b = [mp.mpf("0.25") + mp.mpf(j) / 4 for j in range(4)]
    print("G_B025_Z5_M4 =", mp.nstr(gm0(b, mp.mpf("5")), 22))

    print("# G^{4,0}_{0,4}(1 | 0, 1/2, -0.3, 0.3)  (four-factor kernel shape)")
    C = mp.mpf("0.3")
    g4 = gm0([mp.mpf(0), mp.mpf("0.5"), -C, C], mp.mpf(1))
    print("G_FOURFACTOR_Z1 =", mp.nstr(g4, 22))
    print("# same at z = 0.5 and z = 2")
    print("G_FOURFACTOR_Z05 =", mp.nstr(gm0([mp.mpf(0), mp.mpf("0.5"), -C, C], mp.mpf("0.5")), 22))
    print("G_FOURFACTOR_Z2 =", mp.nstr(gm0([mp.mpf(0), mp.mpf("0.5"), -C, C], mp.mpf(2)), 22))

    print("# Bessel-product side of the degree-four split kernel at z=1:")
    print("#   8 sqrt(pi) K_{2C}(2 sqrt2 e^{i pi/4}) K_{2C}(2 sqrt2 e^{-i pi/4})")
    a1 = 2 * mp.sqrt(2) * mp.exp(mp.mpc(0, mp.pi / 4))
    kk = 8 * mp.sqrt(mp.pi) * mp.besselk(2 * C, a1) * mp.besselk(2 * C, mp.conj(a1))
    print("KK_PRODUCT_Z1 =", mp.nstr(kk, 22))

    print("# residue constants of Gamma(s)Gamma(s+1/2)Gamma(s-C)Gamma(s+C):")
    res0 = mp.sqrt(mp.pi) * mp.gamma(-C) * mp.gamma(C)
    print("RES0_FOURFACTOR =", mp.nstr(res0, 22))
    resC = mp.gamma(C) * mp.gamma(C + mp.mpf("0.5")) * mp.gamma(2 * C)
    print("RESC_FOURFACTOR =", mp.nstr(resC, 22))

    print("# 2 K_0(2):")
    print("TWO_K0_2 =", mp.nstr(2 * mp.besselk(0, 2), 22))


if __name__ == "__main__":
    main()
