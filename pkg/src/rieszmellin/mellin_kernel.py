"""Vertical-line Mellin-Barnes evaluation of the Gamma-product kernels.

Z(x) is the inverse Mellin transform of prod_i Gamma(alpha_i s + conj(beta_i))
on a line left of 0 inside the pole-free margin; Z~(x) is the same integral on
a line right of 1.  The two differ by the residue at s = 0 (computed here by
circle quadrature).  Truncation heights come from the Stirling magnitude
estimate; the trapezoid step is halved adaptively until the value settles.

All reductions are fixed-order compensated sums, so a given ContourSpec
always reproduces the same bits.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .complex_special import Accuracy, log_gamma, stirling_log_magnitude
from .lfunction_model import SelbergData, DerivedInvariants, derive_invariants

log = logging.getLogger(__name__)

__all__ = [
    "ContourError",
    "ContourSpec",
    "ConvergenceError",
    "DecayConstants",
    "decay_constants",
    "default_contours",
    "kernel_Z",
    "kernel_Z_prime",
    "kernel_Z_tilde",
    "kernel_Z_tilde_log",
    "residue_at_zero",
]


class ContourError(ValueError):
    """Abscissa outside the legal band for the requested kernel."""


class ConvergenceError(RuntimeError):
    """Step halving exhausted max_terms without the value settling."""


@dataclass(frozen=True)
class ContourSpec:
    """A truncated vertical line for the Mellin-Barnes integral."""

    abscissa: float
    height_T: float
    step: float = 0.05
    refinement: Accuracy = Accuracy(rel_tol=1e-11, abs_floor=1e-250, max_terms=10)

    def __post_init__(self):
        if not self.height_T > 0 or not self.step > 0:
            raise ValueError("height_T and step must be positive")


@dataclass(frozen=True)
class DecayConstants:
    """Constants governing the super-exponential decay of Z~ and Z~'.

    With L the lcm of the alpha denominators and k_i = alpha_i L:
      C1 = L d_F / (2 (prod k_i^{k_i})^{2/(L d_F)}),   C2 = 2 / d_F,
      C3 = sum conj(beta_i) + (1 - q)/2,               C4 = max(0, C2 - 1),
      C5 = 2 Re C3 + d_F C4 + d_F.
    b_ij lists (conj(beta_i) + j - 1)/k_i for j = 1..k_i, flattened, which is
    the lower-parameter vector of the equivalent Meijer G-function.
    """

    L: int
    k: tuple
    b_ij: tuple
    C1: float
    C2: float
    C3: complex
    C4: float
    C5: float


def decay_constants(data: SelbergData) -> DecayConstants:
    inv = derive_invariants(data)
    L, k, d_F = inv.L, inv.k, inv.d_F
    betas_bar = data.beta_bar()
    prod_kk = 1.0
    for ki in k:
        prod_kk *= float(ki) ** ki
    C1 = L * d_F / (2.0 * prod_kk ** (2.0 / (L * d_F)))
    C2 = 2.0 / d_F
    C3 = sum(betas_bar) + (1 - data.q) / 2.0
    C4 = max(0.0, C2 - 1.0)
    C5 = 2.0 * C3.real + d_F * C4 + d_F
    b_ij = tuple(
        (bb + (j - 1)) / ki for bb, ki in zip(betas_bar, k) for j in range(1, ki + 1)
    )
    return DecayConstants(L=L, k=k, b_ij=b_ij, C1=C1, C2=C2, C3=C3, C4=C4, C5=C5)


def _solve_height(data: SelbergData, sigma: float, target_log: float) -> float:
    """Smallest T (to ~1%) with the Stirling integrand estimate below target."""
    alphas = data.alpha_floats()
    betas = data.beta_bar()

    def g(T: float) -> float:
        return stirling_log_magnitude(sigma, T, alphas, betas)

    lo, hi = 2.0, 16.0
    while g(hi) > target_log:
        lo, hi = hi, hi * 2.0
        if hi > 2e5:
            raise ConvergenceError("required truncation height exceeds 2e5")
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if g(mid) > target_log:
            lo = mid
        else:
            hi = mid
    return hi


def default_contours(data: SelbergData, tol: float = 1e-12):
    """(ContourSpec for Z, ContourSpec for Z~): mid-band abscissas, heights
    solved from the Stirling estimate at the given tolerance."""
    inv = derive_invariants(data)
    margin = 0.5 * min(inv.c_F, 1.0)
    c, d = -margin, 1.0 + margin
    lt = math.log(tol)
    acc = Accuracy(rel_tol=max(tol, 1e-13), abs_floor=1e-250, max_terms=10)
    spec_c = ContourSpec(abscissa=c, height_T=_solve_height(data, c, lt), refinement=acc)
    spec_d = ContourSpec(abscissa=d, height_T=_solve_height(data, d, lt), refinement=acc)
    return spec_c, spec_d


def _gamma_poles(data: SelbergData, max_m: int = 6):
    """Poles of prod Gamma(alpha_i s + conj(beta_i)) nearest the origin."""
    poles = []
    for a, bb in zip(data.alpha_floats(), data.beta_bar()):
        for m in range(max_m):
            poles.append(-(m + bb) / a)
    return poles


def _line_value(
    data: SelbergData,
    x: float,
    sigma: float,
    T: float,
    h: float,
    derivative: bool,
):
    """One trapezoid pass of (1/2 pi i) int prod Gamma(alpha s + conj beta)
    x^{-s} [(-s)/x if derivative] ds on the truncated line.

    Returns (value, gross) where gross = h * sum |f| / 2pi bounds the
    round-off floor of the cancellation-prone sum.
    """
    alphas = data.alpha_floats()
    betas = data.beta_bar()
    lx = math.log(x)
    n = int(math.ceil(T / h))
    re_parts = []
    im_parts = []
    gross = 0.0
    for j in range(-n, n + 1):
        t = j * h
        s = complex(sigma, t)
        lg = -s * lx
        for a, bb in zip(alphas, betas):
            lg += log_gamma(a * s + bb)
        if lg.real < -745.0:
            continue
        v = cmath.exp(lg)
        if derivative:
            v *= -s / x
        w = 0.5 if abs(j) == n else 1.0
        re_parts.append(w * v.real)
        im_parts.append(w * v.imag)
        gross += w * abs(v)
    total = complex(math.fsum(re_parts), math.fsum(im_parts))
    return total * h / (2.0 * math.pi), gross * h / (2.0 * math.pi)


def _kernel_line(
    data: SelbergData,
    x: float,
    contour: ContourSpec,
    ln_scale: float,
    derivative: bool = False,
) -> complex:
    acc = contour.refinement
    sigma = contour.abscissa
    if ln_scale < -709.0:
        # value underflows double precision outright
        log.debug("kernel underflow shortcut at x=%.6g (ln_scale=%.1f)", x, ln_scale)
        return 0.0 + 0.0j
    lx = math.log(x)
    # integrand peak estimate caps how far below it truncation can usefully go
    peak_log = (
        stirling_log_magnitude(sigma, 1.0, data.alpha_floats(), data.beta_bar())
        - sigma * lx
    )
    target_abs = max(
        ln_scale + math.log(acc.rel_tol) - math.log(1e3),
        peak_log + math.log(1e-19),
    )
    T = max(contour.height_T, _solve_height(data, sigma, target_abs + sigma * lx))
    h = contour.step
    val, gross = _line_value(data, x, sigma, T, h, derivative)
    for it in range(acc.max_terms):
        h *= 0.5
        new, gross = _line_value(data, x, sigma, T, h, derivative)
        delta = abs(new - val)
        val = new
        # relative target, floored at the double-precision cancellation limit
        # of the oscillatory sum (the value may sit far below its integrand)
        settle = max(
            acc.rel_tol * abs(new),
            math.exp(max(ln_scale, -700.0)) * acc.rel_tol,
            3e-16 * gross,
        )
        if delta <= settle:
            log.debug(
                "kernel line x=%.6g sigma=%.3f T=%.1f settled at h=%.5f (pass %d)",
                x, sigma, T, h, it + 2,
            )
            return val
    raise ConvergenceError(
        f"no convergence at x={x}, sigma={sigma} within {acc.max_terms} halvings"
    )


def _check_band(sigma: float, lo: float, hi: float, which: str) -> None:
    if not (lo < sigma < hi):
        raise ContourError(
            f"abscissa {sigma} outside the {which} band ({lo:.6g}, {hi:.6g})"
        )


def _ln_scale_left(inv: DerivedInvariants, sigma: float, x: float) -> float:
    # |Z| is bounded by K x^{|c|} as x -> 0 and tends to a residue-sized
    # constant for large x; the scale guess feeds the truncation target.
    return abs(sigma) * min(0.0, math.log(x))


def _ln_scale_right(dc: DecayConstants, sigma: float, x: float) -> float:
    if x <= 1.0:
        return -sigma * math.log(x)
    return -dc.C1 * x**dc.C2 + dc.C2 * dc.C3.real * math.log(x)


def kernel_Z(
    data: SelbergData,
    x: float,
    contour: ContourSpec | None = None,
) -> complex:
    """Z(x): inverse Mellin transform of the conjugated Gamma product on a
    line inside (-c_F, 0)."""
    if not x > 0:
        raise ValueError("x must be positive")
    inv = derive_invariants(data)
    if contour is None:
        contour = default_contours(data)[0]
    _check_band(contour.abscissa, -inv.c_F, 0.0, "Z")
    return _kernel_line(data, x, contour, _ln_scale_left(inv, contour.abscissa, x))


def kernel_Z_tilde(
    data: SelbergData,
    x: float,
    contour: ContourSpec | None = None,
) -> complex:
    """Z~(x): the same integrand on a line inside (1, 1 + c_F)."""
    if not x > 0:
        raise ValueError("x must be positive")
    inv = derive_invariants(data)
    if contour is None:
        contour = default_contours(data)[1]
    _check_band(contour.abscissa, 1.0, 1.0 + inv.c_F, "Z~")
    dc = decay_constants(data)
    return _kernel_line(data, x, contour, _ln_scale_right(dc, contour.abscissa, x))


def kernel_Z_prime(
    data: SelbergData,
    x: float,
    contour: ContourSpec | None = None,
) -> complex:
    """d/dx of Z(x): integrand picks up a factor (-s) x^{-1}."""
    if not x > 0:
        raise ValueError("x must be positive")
    inv = derive_invariants(data)
    if contour is None:
        contour = default_contours(data)[0]
    _check_band(contour.abscissa, -inv.c_F, 0.0, "Z")
    ln_scale = _ln_scale_left(inv, contour.abscissa, x) - math.log(x)
    return _kernel_line(data, x, contour, ln_scale, derivative=True)


def residue_at_zero(data: SelbergData, x: float, nodes: int = 128) -> complex:
    """Residue at s = 0 of prod Gamma(alpha_i s + conj(beta_i)) x^{-s}.

    Circle quadrature with radius half the distance to the nearest other
    Gamma pole (capped at 0.4).  Returns 0 when no beta component vanishes
    (the integrand is then regular at the origin).
    """
    if not x > 0:
        raise ValueError("x must be positive")
    inv = derive_invariants(data)
    if inv.j_F == 0:
        return 0.0 + 0.0j
    r0 = 0.4
    for p in _gamma_poles(data):
        if abs(p) > 1e-9:
            r0 = min(r0, 0.5 * abs(p))
    alphas = data.alpha_floats()
    betas = data.beta_bar()
    lx = math.log(x)
    re_parts, im_parts = [], []
    for j in range(nodes):
        s = r0 * cmath.exp(2j * math.pi * j / nodes)
        lg = -s * lx
        for a, bb in zip(alphas, betas):
            lg += log_gamma(a * s + bb)
        v = cmath.exp(lg) * s
        re_parts.append(v.real)
        im_parts.append(v.imag)
    total = complex(math.fsum(re_parts), math.fsum(im_parts))
    return total / nodes


# ---------------------------------------------------------------------------
# large-x evaluation through the Stirling saddle
# ---------------------------------------------------------------------------


def _psi_real(w: float) -> float:
    """Digamma for w > 0: recurrence into the asymptotic range."""
    acc = 0.0
    while w < 10.0:
        acc -= 1.0 / w
        w += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    tail = iw2 * (1.0 / 12.0 - iw2 * (1.0 / 120.0 - iw2 / 252.0))
    return acc + math.log(w) - 0.5 * iw - tail


def _psi1_real(w: float) -> float:
    """Trigamma for w > 0, same scheme."""
    acc = 0.0
    while w < 10.0:
        acc += 1.0 / (w * w)
        w += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    return acc + iw * (1.0 + 0.5 * iw + iw2 * (1.0 / 6.0 - iw2 * (1.0 / 30.0 - iw2 / 42.0)))


def kernel_Z_tilde_log(data: SelbergData, x: float, derivative: bool = False):
    """ln-magnitude and unit phase of Z~(x) (or d/dx Z~) at large x.

    The band-line quadrature produces the exponentially small value of Z~
    through cancellation, so its absolute error floor (~1e-18 of the
    integrand scale) swamps the true magnitude once C1 x^{C2} passes ~40.
    Here the line is shifted to the real Stirling saddle sigma* solving

        sum_i alpha_i psi(alpha_i sigma + Re conj(beta_i)) = ln x,

    where the integrand itself carries the decay and is positive to leading
    order, so the relative accuracy is uniform in x.  Crossing out of the
    defining band is legal: for Re beta >= 0 the Gamma product has no poles
    right of the origin.

    Returns (ln|value|, value / |value|).
    """
    if not x >= 2.0:
        raise ValueError("saddle evaluation needs x >= 2; use kernel_Z_tilde")
    if any(complex(b).real < 0 for b in data.beta):
        raise ValueError("saddle shift requires Re beta >= 0 throughout")
    alphas = data.alpha_floats()
    betas = data.beta_bar()
    lx = math.log(x)

    def slope(sigma: float) -> float:
        return math.fsum(
            a * _psi_real(a * sigma + bb.real) for a, bb in zip(alphas, betas)
        )

    lo, hi = 1.0, 2.0
    while slope(lo) >= lx and lo > 1e-4:
        lo *= 0.5
    while slope(hi) < lx:
        hi *= 2.0
        if hi > 1e13:
            raise ConvergenceError("saddle search diverged")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if slope(mid) < lx:
            lo = mid
        else:
            hi = mid
    sigma = 0.5 * (lo + hi)

    curv = math.fsum(
        a * a * _psi1_real(a * sigma + bb.real) for a, bb in zip(alphas, betas)
    )
    width = 1.0 / math.sqrt(curv)
    half_T = 12.0 * width
    n = 193
    h = 2.0 * half_T / (n - 1)

    def ln_integrand(s: complex) -> complex:
        acc = -s * lx
        for a, bb in zip(alphas, betas):
            acc += log_gamma(a * s + bb)
        return acc

    base = ln_integrand(complex(sigma)).real
    re_parts, im_parts = [], []
    for j in range(n):
        s = complex(sigma, -half_T + j * h)
        v = cmath.exp(ln_integrand(s) - base)
        if derivative:
            v *= -s / x
        if j == 0 or j == n - 1:
            v *= 0.5
        re_parts.append(v.real)
        im_parts.append(v.imag)
    total = complex(math.fsum(re_parts), math.fsum(im_parts)) * h / (2.0 * math.pi)
    mag = abs(total)
    if mag == 0.0:
        raise ConvergenceError("saddle quadrature lost the value entirely")
    return base + math.log(mag), total / mag
