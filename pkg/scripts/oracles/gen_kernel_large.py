"""Reference log-magnitudes for the large-x Z~ evaluator.

Closed forms: for Gamma(s/2) data, Z~(x) = 2 exp(-x^2); for Gamma(s/2)^2
data (real-quadratic shape), Z~(x) = 4 K_0(2x); for Gamma(s/2 + 1/4) data
(odd character shape), Z~(x) = 2 x exp(-x^2).  Derivatives: -4x exp(-x^2)
and -8 K_1(2x).

Run standalone (mpmath only; not a package dependency):
    python3 scripts/oracles/gen_kernel_large.py
"""

import mpmath as mp

mp.mp.dps = 40

print("# ln|Z~| for alpha=(1/2,1/2), beta=(0,0): ln(4 K_0(2x))")
for x in (4, 10, 31.622776601683793, 100, 1000):
    v = mp.log(4 * mp.besselk(0, 2 * mp.mpf(x)))
    print(f"LN_4K0_X{x} = {mp.nstr(v, 22)}")

print("# ln|d/dx Z~| for the same data: ln(8 K_1(2x))")
for x in (10, 100):
    v = mp.log(8 * mp.besselk(1, 2 * mp.mpf(x)))
    print(f"LN_8K1_X{x} = {mp.nstr(v, 22)}")

print("# zeta shape sanity: ln 2 - x^2 at x=10 ->", mp.nstr(mp.log(2) - 100, 22))
