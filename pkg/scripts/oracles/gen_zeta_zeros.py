"""Generate the bundled list of the first 100 positive zeta zero ordinates.

Standalone mpmath: scan the Riemann-Siegel Z function for sign changes on a
0.05-step grid, then bisect each bracket to ~1e-18.  Output goes to
src/rieszmellin/data/zeta_zeros_100.txt, one ordinate per line, ascending.

Sanity targets: first ordinate 14.1347251417..., 29 ordinates below 100,
100th ordinate 236.5242296658...
"""

import mpmath as mp

mp.mp.dps = 30


def bisect_zero(lo, hi):
    flo = mp.siegelz(lo)
    for _ in range(80):
        mid = (lo + hi) / 2
        fm = mp.siegelz(mid)
        if fm == 0:
            return mid
        if (flo < 0) != (fm < 0):
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < mp.mpf("1e-21"):
            break
    return (lo + hi) / 2


def main():
    zeros = []
    step = mp.mpf("0.05")
    t = mp.mpf("14.0")
    prev = mp.siegelz(t)
    while len(zeros) < 100:
        t2 = t + step
        cur = mp.siegelz(t2)
        if (prev < 0) != (cur < 0):
            zeros.append(bisect_zero(t, t2))
        t, prev = t2, cur
    lines = [mp.nstr(z, 20) for z in zeros]
    below_100 = sum(1 for z in zeros if z < 100)
    print("first:", lines[0])
    print("count below 100:", below_100)
    print("last:", lines[-1])
    with open("src/rieszmellin/data/zeta_zeros_100.txt", "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
