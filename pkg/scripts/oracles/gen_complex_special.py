#!/usr/bin/env python3
"""High-precision oracle values for the complex_special tests.

Run standalone with mpmath installed (mpmath is *not* a package dependency;
it is only used offline to produce the frozen literals below).  Output is
pasted into tests/test_complex_special.py.  Computed at 30 significant
digits so the 1e-13 assertions downstream have headroom.
"""

import mpmath as mp

mp.mp.dps = 30


def show(tag, val):
    print(f"{tag:34s} = {mp.nstr(val, 22)}")


# principal-branch log-gamma (analytic continuation from the positive reals)
show("loggamma(3+4j)", mp.loggamma(mp.mpc(3, 4)))
show("loggamma(-2.5+0.1j)", mp.loggamma(mp.mpc(-2.5, 0.1)))
show("loggamma(-0.5)", mp.loggamma(mp.mpf(-0.5)))
show("loggamma(0.5+30j)", mp.loggamma(mp.mpc(0.5, 30)))
show("gamma(0.25+25j) magnitude", mp.fabs(mp.gamma(mp.mpc(0.25, 25))))
show("gamma(0.25+12.5j) magnitude", mp.fabs(mp.gamma(mp.mpc(0.25, 12.5))))

# modified Bessel K
show("besselk(0, 2)", mp.besselk(0, 2))
# integrand below 1e-9000 past t=10; finite interval keeps tanh-sinh happy
show("besselk(0, 2) via integral", mp.quad(lambda t: mp.exp(-2 * mp.cosh(t)), [0, 10]))
show("besselk(0.6, 2sqrt2 e^{i pi/4})",
     mp.besselk(mp.mpf("0.6"), 2 * mp.sqrt(2) * mp.exp(mp.mpc(0, mp.pi / 4))))
show("besselk(1, 0.01)", mp.besselk(1, mp.mpf("0.01")))
show("besselk(0, 50)", mp.besselk(0, 50))
show("sqrt(pi/2)*exp(-1)", mp.sqrt(mp.pi / 2) * mp.exp(-1))
