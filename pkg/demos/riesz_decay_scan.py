"""
Riesz-type sums: raw decay vs pole-compensated decay
====================================================

P(y) = sum_n b(n) K(n/sqrt(y)) should decay as y grows; how fast depends
on whether the Gamma-product kernel has a pole at the origin.  When it
does, subtracting the residue sum over n < y^{1/2-eps} (the "corrected"
sum) is what exposes the underlying decay rate.

The scan fits a log-log slope over the points that sit above the kernel
truncation tail; points drowned by the tail are dropped, not fitted.
"""

import argparse
import logging

import numpy as np

from rieszmellin.lfunction_model import builtin
from rieszmellin.riesz_sums import decay_scan

log = logging.getLogger("riesz_demo")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    # the corrected remainder oscillates, and both flanks of each sign
    # change are excluded from the fit -- a sparse grid can lose nearly
    # every point that way, so sample densely and sum deep
    ap.add_argument("--points", type=int, default=65)
    ap.add_argument("--N", type=int, default=1_000_000)
    ap.add_argument("--ymax", type=float, default=1e6)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")

    inst = builtin("zeta")
    grid = np.logspace(2, np.log10(args.ymax), args.points)

    for corrected in (False, True):
        res = decay_scan(inst, 0.0, grid, N_policy=args.N, corrected=corrected)
        tag = "corrected" if corrected else "plain"
        kept = sum(res.kept)
        log.info("%s scan: slope %.4f +- %.4f over %d/%d points, tail %.1e",
                 tag, res.fitted_slope, res.slope_stderr, kept,
                 args.points, res.tail_bound)
        print(f"\n{tag} sum, first/last kept values")
        for i in (0, kept - 1):
            idx = [j for j, k in enumerate(res.kept) if k][i]
            print(f"  y = {res.y_grid[idx]:>12.1f}   |P| = {abs(res.values[idx]):.6e}")

    print("\nthe two fits measure different things: the plain sum is")
    print("dominated by the smooth contribution of the kernel's pole at")
    print("the origin, while the corrected sum subtracts its head and")
    print("fits the decay of the oscillatory remainder.")


if __name__ == "__main__":
    main()
