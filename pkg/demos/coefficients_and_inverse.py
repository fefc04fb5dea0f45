"""
Dirichlet coefficients and their convolution inverse
====================================================

Every instance carries a coefficient sequence a(n) generated from its
Euler product, plus the Dirichlet-convolution inverse b(n) defined by
(a * b)(n) = [n = 1].  For zeta the inverse is exactly the Moebius
function; for a quadratic-field zeta the a(n) count ideals of norm n.
"""

import numpy as np

from rieszmellin.lfunction_model import builtin, coefficient_table

N = 30

for name in ("zeta", "dirichlet:3:1", "dedekind_quadratic:17"):
    table = coefficient_table(builtin(name), N)
    a = table.a.real
    b = table.b.real
    print(name)
    print("  n  :", " ".join(f"{n:>4d}" for n in range(1, 16)))
    print("  a  :", " ".join(f"{a[n]:>4.0f}" for n in range(1, 16)))
    print("  b  :", " ".join(f"{b[n]:>4.0f}" for n in range(1, 16)))
    print()

# convolution sanity at scale: (a*b)(n) over n <= 5000 collapses to the
# delta at n = 1, to machine precision
N = 5000
table = coefficient_table(builtin("zeta"), N)
conv = np.zeros(N + 1, dtype=complex)
for d in range(1, N + 1):
    if table.a[d] != 0:
        ks = np.arange(1, N // d + 1)
        conv[d * ks] += table.a[d] * table.b[ks]
print(f"zeta convolution over n <= {N}: (a*b)(1) = {conv[1].real:.15f}, "
      f"max |(a*b)(n>1)| = {np.max(np.abs(conv[2:])):.2e}")

# Mertens-style partial sums of the inverse stay small, as they should
# for the Moebius function
M = np.cumsum(table.b.real[1:])
print(f"partial sums of b(n) for zeta: M(100) = {M[99]:.0f}, "
      f"M(1000) = {M[999]:.0f}, M(5000) = {M[4999]:.0f}")
