"""Frozen references for the L-value evaluators, zero derivatives, and the
r=1 residue corrections.  Standalone mpmath at 40 digits.

The real-quadratic (D=5) residues have closed forms:
  Res@1 of Gamma((1-s)/2)^2 nu^s / (zeta L) is 4 nu / L(1, chi5),
  Res@0 is -2 pi / L'(0, chi5)  with  L'(0, chi5) = ln((1+sqrt5)/2),
so the circle quadrature can be pinned against golden-ratio constants.
"""

import mpmath as mp

mp.mp.dps = 40


def L_chi5(s):
    # kronecker symbol mod 5: 1,-1,-1,1,0 pattern
    chi = {1: 1, 2: -1, 3: -1, 4: 1, 0: 0}
    return mp.fsum(
        chi[a % 5] * mp.zeta(s, mp.mpf(a) / 5) for a in range(1, 5)
    ) * mp.power(5, -s)


def L_chi3(s):
    return (mp.zeta(s, mp.mpf(1) / 3) - mp.zeta(s, mp.mpf(2) / 3)) * mp.power(3, -s)


rho1 = mp.mpf("0.5") + 1j * mp.mpf("14.13472514173469379")

print("ZETA_3          =", mp.nstr(mp.zeta(3), 22))
print("HURWITZ_2_Q     =", mp.nstr(mp.zeta(2, mp.mpf(1) / 4), 22))
print("L_CHI3_2        =", mp.nstr(L_chi3(2), 22))
print("ZETA_K5_2       =", mp.nstr(mp.zeta(2) * L_chi5(2), 22))
# s=1 is a Hurwitz pole in each summand; use the class-number closed form,
# cross-checked against the grouped conditionally convergent series
print("L_CHI5_1        =", mp.nstr(2 * mp.log((1 + mp.sqrt(5)) / 2) / mp.sqrt(5), 22))
print("LN_GOLDEN       =", mp.nstr(mp.log((1 + mp.sqrt(5)) / 2), 22))
print("ZETA_PRIME_RHO1 =", mp.nstr(mp.diff(mp.zeta, rho1), 22))
print("ZETA_AT_HALF    =", mp.nstr(mp.zeta(mp.mpf("0.5")), 22))
