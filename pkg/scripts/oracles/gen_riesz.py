"""Frozen high-precision references for the Riesz-type sums.

Standalone: mpmath + sympy only, no package imports.  Values are computed
from exact integer coefficients with 40-digit arithmetic and pasted into
tests/test_riesz_sums.py as literals.
"""

import mpmath as mp
from sympy import mobius

mp.mp.dps = 40


def p_zeta(y, N):
    # sum over n <= N of mu(n)/n * 2(e^{-y/n^2} - 1)
    y = mp.mpf(y)
    acc = mp.mpf(0)
    for n in range(1, N + 1):
        m = mobius(n)
        if m:
            acc += mp.mpf(m) / n * 2 * mp.expm1(-y / n**2)
    return acc


def chi3(n):
    r = n % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def p_chi3(y, z, N):
    # b(n) = mu(n) chi(n); kernel 2 x e^{-x^2}, x = sqrt(y)/n; cosh weight
    y, z = mp.mpf(y), mp.mpf(z)
    sy = mp.sqrt(y)
    acc = mp.mpf(0)
    for n in range(1, N + 1):
        b = mobius(n) * chi3(n)
        if b:
            x = sy / n
            acc += mp.mpf(b) / n * 2 * x * mp.exp(-x * x) * mp.cosh(z * sy / n)
    return acc


print("P_ZETA_Y100_N4000   =", mp.nstr(p_zeta(100, 4000), 22))
print("P_CHI3_Y9_Z03_N2000 =", mp.nstr(p_chi3(9, mp.mpf(3) / 10, 2000), 22))
print("GAMMA_QUARTER       =", mp.nstr(mp.gamma(mp.mpf(1) / 4), 22))
print("MINUS_8_LN2         =", mp.nstr(-8 * mp.log(2), 22))
