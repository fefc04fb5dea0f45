"""Riesz-type sums over inverted coefficients, their residue-corrected
variant, summatory functions, the decay-exponent scan, and the Mellin
transform identity connecting the sum to a Gamma-product series.

The sum is  P_z(y) = sum_n b(n)/n * Z((sqrt(y)/n)^{d_F}) * cosh(sqrt(y) z / n).
For data built from alpha components 1/2 and 1 the kernel has an elementary
closed form and the series is evaluated as a vectorized log-space sum; other
data fall back to the contour engine with one quadrature per distinct
argument.

Reductions are chunked at a fixed width with per-chunk numpy sums combined
by math.fsum in index order, so results are bit-identical no matter how many
worker threads RIESZ_THREADS allows.
"""

from __future__ import annotations

import cmath
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .complex_special import Accuracy, gamma
from .lfunction_model import (
    CoefficientTable,
    Instance,
    coefficient_table,
    derive_invariants,
)
from .mellin_kernel import kernel_Z, residue_at_zero

log = logging.getLogger(__name__)

__all__ = [
    "DecayScanResult",
    "RieszConfig",
    "TailBoundError",
    "decay_scan",
    "mellin_transform_check",
    "partial_M",
    "riesz_P",
    "riesz_P_corrected",
    "scan_csv",
    "scan_json",
    "summatory_M",
]

_CHUNK = 65536
EULER_GAMMA = 0.5772156649015328606


class TailBoundError(RuntimeError):
    """The series tail cannot be bounded below tail_tol at the requested N."""


@dataclass(frozen=True)
class RieszConfig:
    """Evaluation point and truncation policy for the Riesz-type sum."""

    y: float
    z: complex = 0.0
    N: int | None = None
    tail_tol: float = 1e-8
    epsilon: float = 0.1

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("y must be positive")
        if self.N is not None and self.N < 1:
            raise ValueError("N must be at least 1")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if not 0 < self.epsilon < 0.5:
            raise ValueError("epsilon must lie in (0, 1/2)")
        object.__setattr__(self, "z", complex(self.z))


@dataclass(frozen=True)
class DecayScanResult:
    """Grid scan of |P| with a log-log slope fit."""

    y_grid: tuple
    values: tuple
    fitted_slope: float
    slope_stderr: float
    kept: tuple
    N: int
    tail_bound: float


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("RIESZ_THREADS", "1")))
    except ValueError:
        return 1


def _chunked_sum(arr) -> complex:
    """Fixed-chunk reduction: per-chunk numpy sums combined by fsum in index
    order.  Chunk boundaries never depend on the thread count."""
    a = np.asarray(arr)
    if a.size == 0:
        return 0.0 + 0.0j
    views = [a[i : i + _CHUNK] for i in range(0, a.size, _CHUNK)]
    workers = _thread_count()
    if workers > 1 and len(views) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            partials = list(ex.map(np.sum, views))
    else:
        partials = [np.sum(v) for v in views]
    re = math.fsum(float(np.real(p)) for p in partials)
    im = math.fsum(float(np.imag(p)) for p in partials)
    return complex(re, im)


def _log_cosh_split(w):
    """cosh(w) = exp(m) * c with m = |Re w| real and |c| <= 1."""
    m = np.abs(np.real(w))
    c = 0.5 * (np.exp(w - m) + np.exp(-w - m))
    return m, c


def _safe_exp(expo):
    """exp with hard underflow to zero; overflow still propagates as inf."""
    return np.where(expo < -745.0, 0.0, np.exp(np.maximum(expo, -745.0)))


def _k0_fast(x):
    """Vectorized K_0 to ~2e-7 relative (rational fits), scan path only."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x <= 2.0
    if small.any():
        xs = x[small]
        t = (xs / 3.75) ** 2
        i0 = 1.0 + t * (3.5156229 + t * (3.0899424 + t * (1.2067492
             + t * (0.2659732 + t * (0.0360768 + t * 0.0045813)))))
        u = (xs / 2.0) ** 2
        out[small] = (-np.log(xs / 2.0) * i0 - EULER_GAMMA
            + u * (0.42278420 + u * (0.23069756 + u * (0.03488590
            + u * (0.00262698 + u * (0.00010750 + u * 0.00000740))))))
    big = ~small
    if big.any():
        xb = x[big]
        v = 2.0 / xb
        out[big] = (np.exp(-xb) / np.sqrt(xb)) * (1.25331414
            + v * (-0.07832358 + v * (0.02189568 + v * (-0.01062446
            + v * (0.00587872 + v * (-0.00251540 + v * 0.00053208))))))
    return out


def _xpow(x, e: float):
    if e == 0.0:
        return 1.0
    if e == 1.0:
        return x
    if e == 2.0:
        return x * x
    return x ** e


def _phase(x, im: float, scale: float):
    if abs(im) < 1e-15:
        return 1.0
    return np.exp(1j * scale * im * np.log(x))


def _closed_term_evaluator(data):
    """Vectorized f(x_arr, w_arr) -> kernel * cosh values for data whose
    kernel is elementary, or None.  x is the kernel argument, w = sqrt(y) z/n
    (None signals z = 0).  Large-y magnitudes are assembled in log space so
    nothing overflows before the Gaussian factor wins."""
    alphas = data.alpha_floats()
    betas = data.beta_bar()
    if len(alphas) == 1 and abs(alphas[0] - 0.5) < 1e-12:
        bb = betas[0]
        if abs(bb) < 1e-12:
            def f(x, w):
                if w is None:
                    return 2.0 * np.expm1(-x * x)
                m, c = _log_cosh_split(w)
                return 2.0 * c * (_safe_exp(-x * x + m) - np.exp(m))
            return f

        def f(x, w):
            if w is None:
                return 2.0 * _xpow(x, 2.0 * bb.real) * np.exp(-x * x) * \
                    _phase(x, bb.imag, 2.0)
            m, c = _log_cosh_split(w)
            mag = _safe_exp(-x * x + 2.0 * bb.real * np.log(x) + m)
            return 2.0 * c * mag * _phase(x, bb.imag, 2.0)
        return f
    if len(alphas) == 1 and abs(alphas[0] - 1.0) < 1e-12:
        bb = betas[0]
        if abs(bb) < 1e-12:
            def f(x, w):
                if w is None:
                    return np.expm1(-x)
                m, c = _log_cosh_split(w)
                return c * (_safe_exp(-x + m) - np.exp(m))
            return f

        def f(x, w):
            if w is None:
                return _xpow(x, bb.real) * np.exp(-x) * _phase(x, bb.imag, 1.0)
            m, c = _log_cosh_split(w)
            mag = _safe_exp(-x + bb.real * np.log(x) + m)
            return c * mag * _phase(x, bb.imag, 1.0)
        return f
    if (len(alphas) == 2 and all(abs(a - 0.5) < 1e-12 for a in alphas)
            and all(abs(b) < 1e-12 for b in betas)):
        def f(x, w):
            # 4 K_0(2x) + 4(ln x + gamma); cosh applied plainly -- this shape
            # is only used at moderate y in scans
            kern = 4.0 * _k0_fast(2.0 * x) + 4.0 * (np.log(x) + EULER_GAMMA)
            return kern if w is None else kern * np.cosh(w)
        return f
    return None


@lru_cache(maxsize=32)
def _small_x_envelope(data):
    """Empirical (A, p) with |Z(x)| <= A x^p for x <= 0.5, safety factor 10."""
    probes = np.array([0.4, 0.2, 0.1, 0.05, 0.02])
    f = _closed_term_evaluator(data)
    if f is not None:
        vals = np.abs(np.asarray(f(probes, None), dtype=complex))
    else:
        vals = np.array([abs(kernel_Z(data, float(x))) for x in probes])
    good = vals > 0
    if good.sum() < 2:
        return 1.0, 1.0
    p = np.polyfit(np.log(probes[good]), np.log(vals[good]), 1)[0]
    p = float(max(p, 0.05))
    A = float(np.max(vals[good] / probes[good] ** p)) * 10.0
    return A, p


def _tail_bound(data, table, y: float, N: int, z: complex) -> float:
    sy = math.sqrt(y)
    if sy >= N:
        raise TailBoundError(
            f"kernel arguments do not enter the decay regime: need N > sqrt(y) "
            f"(N={N}, sqrt(y)={sy:.3g})"
        )
    inv = derive_invariants(data)
    A, p = _small_x_envelope(data)
    e = p * inv.d_F
    b_max = float(np.max(np.abs(table.b[1:]))) if table.N >= 1 else 1.0
    cosh_fac = math.cosh(min(sy * abs(z) / N, 700.0))
    return A * b_max * y ** (e / 2.0) * N ** (-e) / e * cosh_fac


def _real_b(table, N: int):
    b = table.b[1 : N + 1]
    if np.all(b.imag == 0.0):
        return b.real
    return b


def _series_value(data, table, y: float, z: complex, N: int) -> complex:
    d_F = derive_invariants(data).d_F
    sy = math.sqrt(y)
    f = _closed_term_evaluator(data)
    if f is not None:
        n = np.arange(1, N + 1, dtype=float)
        b_over_n = _real_b(table, N) / n
        x = _xpow(sy / n, d_F)
        w = None if z == 0 else (z * sy) / n
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            terms = b_over_n * f(x, w)
        return _chunked_sum(terms)
    # contour-engine fallback: one quadrature per distinct argument
    if N > 25_000:
        log.warning("quadrature kernel path with N=%d will be slow", N)
    cache: dict[float, complex] = {}
    re_parts, im_parts = [], []
    for k in range(1, N + 1):
        arg = (sy / k) ** d_F
        v = cache.get(arg)
        if v is None:
            v = kernel_Z(data, arg)
            cache[arg] = v
        term = table.b[k] / k * v
        if z != 0:
            term *= np.cosh(z * sy / k)
        re_parts.append(term.real)
        im_parts.append(term.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def _auto_N(data, table_probe, y: float, z: complex, tail_tol: float) -> int:
    N = max(2048, int(4 * math.sqrt(y)))
    while N <= 50_000_000:
        # table-free bound probe: assume |b| <= 2 sqrt-ish handled by caller
        try:
            if _tail_bound(data, table_probe, y, N, z) < tail_tol:
                return N
        except TailBoundError:
            pass
        N *= 2
    raise TailBoundError("auto-N exceeded 5e7 without meeting tail_tol")


def riesz_P(instance: Instance, cfg: RieszConfig, table: CoefficientTable | None = None) -> complex:
    """Partial sum of P_z(y) to N terms with the tail bounded below tail_tol.

    A precomputed coefficient table may be passed to amortize sieving across
    calls; it must cover the resolved N.
    """
    data = instance.data
    if cfg.N is None:
        probe = table if table is not None else coefficient_table(instance, 4096)
        N = _auto_N(data, probe, cfg.y, cfg.z, cfg.tail_tol)
    else:
        N = cfg.N
    if table is None or table.N < N:
        table = coefficient_table(instance, N)
    bound = _tail_bound(data, table, cfg.y, N, cfg.z)
    if bound > cfg.tail_tol:
        raise TailBoundError(
            f"tail bound {bound:.3g} exceeds tail_tol {cfg.tail_tol:.3g} at N={N}"
        )
    return _series_value(data, table, cfg.y, cfg.z, N)


def _correction(data, table, y: float, epsilon: float) -> complex:
    """Residue-sum correction over n < floor(y^{1/2 - epsilon})."""
    inv = derive_invariants(data)
    if inv.j_F == 0:
        return 0.0 + 0.0j
    h = int(y ** (0.5 - epsilon))
    top = h - 1
    if top < 1:
        return 0.0 + 0.0j
    sy = math.sqrt(y)
    if inv.j_F == 1:
        # simple pole: the residue does not depend on the kernel argument
        res = residue_at_zero(data, 1.0)
        acc = _chunked_sum(table.b[1 : top + 1] / np.arange(1, top + 1, dtype=float))
        return res * acc
    re_parts, im_parts = [], []
    for k in range(1, top + 1):
        r = residue_at_zero(data, (sy / k) ** inv.d_F)
        term = table.b[k] / k * r
        re_parts.append(term.real)
        im_parts.append(term.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def riesz_P_corrected(instance: Instance, cfg: RieszConfig, table: CoefficientTable | None = None) -> complex:
    """riesz_P plus the pole-compensation sum; identical to riesz_P when the
    Gamma product is regular at the origin."""
    data = instance.data
    if cfg.N is None:
        probe = table if table is not None else coefficient_table(instance, 4096)
        N = _auto_N(data, probe, cfg.y, cfg.z, cfg.tail_tol)
        cfg = RieszConfig(y=cfg.y, z=cfg.z, N=N, tail_tol=cfg.tail_tol, epsilon=cfg.epsilon)
    if table is None or table.N < cfg.N:
        table = coefficient_table(instance, cfg.N)
    base = riesz_P(instance, cfg, table)
    return base + _correction(data, table, cfg.y, cfg.epsilon)


def summatory_M(instance: Instance, x: float) -> complex:
    """Sum of b(n) for n <= x."""
    top = int(math.floor(x))
    if top < 1:
        return 0.0 + 0.0j
    table = coefficient_table(instance, top)
    return _chunked_sum(table.b[1 : top + 1])


def partial_M(instance: Instance, h: int, N: int, table: CoefficientTable | None = None) -> complex:
    """Sum of b(n)/n over h <= n <= N; empty ranges give zero."""
    if N < h:
        return 0.0 + 0.0j
    if h < 1:
        raise ValueError("h must be at least 1")
    if table is None or table.N < N:
        table = coefficient_table(instance, N)
    n = np.arange(h, N + 1, dtype=float)
    return _chunked_sum(table.b[h : N + 1] / n)


def decay_scan(
    instance: Instance,
    z: complex,
    y_grid,
    N_policy: int | None = None,
    corrected: bool | None = None,
) -> DecayScanResult:
    """Evaluate the (pole-corrected, when applicable) sum over the grid and
    fit a log-log slope, excluding sign-change neighborhoods.

    N_policy: fixed term count, or None to size the series so the worst-grid
    tail bound is about 1e-6.
    corrected: force the pole-compensated sum on or off; None applies it
    exactly when the Gamma product has a pole at the origin.
    """
    ys = [float(v) for v in y_grid]
    if len(ys) < 2 or any(b <= a for a, b in zip(ys, ys[1:])):
        raise ValueError("y_grid must be strictly increasing")
    data = instance.data
    inv = derive_invariants(data)
    if N_policy is None:
        probe = coefficient_table(instance, 4096)
        N = _auto_N(data, probe, ys[-1], z, 1e-6)
    else:
        N = int(N_policy)
    table = coefficient_table(instance, N)
    worst = _tail_bound(data, table, ys[-1], N, z)
    use_correction = inv.j_F > 0 if corrected is None else bool(corrected)
    vals = []
    for y in ys:
        cfg = RieszConfig(y=y, z=z, N=N, tail_tol=max(worst * 1.01, 1e-300))
        v = (riesz_P_corrected if use_correction else riesz_P)(instance, cfg, table)
        vals.append(v)
    varr = np.array(vals)
    finite = np.isfinite(varr) & (np.abs(varr) > 0)
    keep = finite.copy()
    scale = float(np.max(np.abs(varr[finite]), initial=0.0))
    essentially_real = finite.any() and bool(
        np.all(np.abs(varr.imag[finite]) <= 1e-12 * scale)
    )
    if essentially_real:
        # a sign change forces |P| through zero; log|P| there says nothing
        # about the envelope, so drop the flanking points
        sg = np.sign(varr.real)
        for i in range(len(ys)):
            if (i > 0 and finite[i - 1] and sg[i] != sg[i - 1]) or (
                i + 1 < len(ys) and finite[i + 1] and sg[i] != sg[i + 1]
            ):
                keep[i] = False
    if keep.sum() < 4:
        raise ValueError(
            f"fewer than 4 usable grid points after sign-change exclusion "
            f"({int(keep.sum())} of {len(ys)})"
        )
    lx = np.log10(np.array(ys)[keep])
    lv = np.log10(np.abs(varr[keep]))
    (slope, _), cov = np.polyfit(lx, lv, 1, cov=True)
    stderr = float(math.sqrt(max(cov[0, 0], 0.0)))
    return DecayScanResult(
        y_grid=tuple(ys),
        values=tuple(complex(v) for v in vals),
        fitted_slope=float(slope),
        slope_stderr=stderr,
        kept=tuple(bool(k) for k in keep),
        N=N,
        tail_bound=float(worst),
    )


def scan_csv(result: DecayScanResult) -> str:
    lines = ["y,re,im,abs,log10y,log10abs"]
    for y, v in zip(result.y_grid, result.values):
        a = abs(v)
        la = math.log10(a) if a > 0 else float("-inf")
        lines.append(
            f"{y:.12e},{v.real:.12e},{v.imag:.12e},{a:.12e},"
            f"{math.log10(y):.12e},{la:.12e}"
        )
    return "\n".join(lines) + "\n"


def scan_json(result: DecayScanResult) -> str:
    payload = {
        "N": result.N,
        "fitted_slope": result.fitted_slope,
        "points_total": len(result.y_grid),
        "points_used": int(sum(result.kept)),
        "slope_stderr": result.slope_stderr,
        "tail_bound": result.tail_bound,
    }
    return json.dumps(payload, sort_keys=True)


# --- Mellin transform identity -------------------------------------------

_GL_NODES = 16
_PANEL_WIDTH = math.log(10.0)
_POWER_TERMS = 14
_SMALL_Y = 0.01
_p_panel_memo: dict = {}


def _power_series_small_y(instance, table, z: complex):
    """Exact small-y evaluator for the truncated sum when the kernel belongs
    to the elementary single-component family with Re beta > 0.

    With t = sqrt(y)/n every term is kappa * t^{2b} e^{-t^2} cosh(z t), so
    P_N(y) = kappa * sum_m c_m(z) B_m y^{b+m} with B_m a fixed Dirichlet-type
    sum over the table.  Valid for y <= _SMALL_Y; agrees with the direct
    path to machine precision because both use the same truncation.
    """
    data = instance.data
    alphas = data.alpha_floats()
    if len(alphas) != 1:
        return None
    if abs(alphas[0] - 0.5) < 1e-12:
        kappa = 2.0
    elif abs(alphas[0] - 1.0) < 1e-12:
        kappa = 1.0
    else:
        return None
    bb = data.beta_bar()[0]
    if bb.real <= 1e-12:
        return None
    key = (instance.name, hash(data), table.N, "power-B")
    B = _p_panel_memo.get(key)
    if B is None:
        n = np.arange(1, table.N + 1, dtype=float)
        br = _real_b(table, table.N)
        phase = (np.exp(-2j * bb.imag * np.log(n))
                 if abs(bb.imag) > 1e-15 else 1.0)
        with np.errstate(under="ignore"):
            B = tuple(
                _chunked_sum(br * phase * n ** (-(1.0 + 2.0 * bb.real + 2.0 * m)))
                for m in range(_POWER_TERMS + 1)
            )
        _p_panel_memo[key] = B
    cs = []
    for m in range(_POWER_TERMS + 1):
        acc = 0.0 + 0.0j
        for l in range(m + 1):
            k = m - l
            acc += (-1) ** k * z ** (2 * l) / (
                math.factorial(k) * math.factorial(2 * l)
            )
        cs.append(acc)

    def eval_small(y: float) -> complex:
        ly = math.log(y)
        return kappa * sum(
            c * b * cmath.exp((bb + m) * ly) for m, (c, b) in enumerate(zip(cs, B))
        )

    return eval_small


def _p_panel(instance, table, z: complex, k: int):
    """P values and Gauss-Legendre geometry on panel k, cached per instance
    and z so sweeps over s reuse them.

    Panel k spans u in [k*W, (k+1)*W) with W = ln 10, u = ln y.
    """
    key = (instance.name, hash(instance.data), table.N, complex(z), k)
    hit = _p_panel_memo.get(key)
    if hit is not None:
        return hit
    xg, wg = leggauss(_GL_NODES)
    um = (k + 0.5) * _PANEL_WIDTH
    uh = 0.5 * _PANEL_WIDTH
    us = um + uh * xg
    small = _power_series_small_y(instance, table, z) if (
        (k + 1) * _PANEL_WIDTH <= math.log(_SMALL_Y)
    ) else None
    if small is not None:
        pv = np.array([small(math.exp(u)) for u in us])
    else:
        pv = np.array(
            [_series_value(instance.data, table, math.exp(u), z, table.N) for u in us]
        )
    if len(_p_panel_memo) > 8192:
        _p_panel_memo.clear()
    out = (us, wg * uh, pv)
    _p_panel_memo[key] = out
    return out


def mellin_transform_check(
    instance: Instance,
    s: complex,
    z: complex,
    quad: Accuracy | None = None,
    N: int = 2_000_000,
):
    """Both sides of the transform identity
        F(2s+1) * int_0^inf y^{-s-1} P_z(y) dy
          = (2/d_F) sum_t z^{2t}/(2t)! prod_i Gamma((2 alpha_i/d_F)(t-s) + conj(beta_i))
    in the strip 0 < Re s < 1/2, for data with Re beta_i > 0 throughout.

    Returns (lhs, rhs, relative defect).  The outer integral runs over
    decade-aligned Gauss-Legendre panels in u = ln y, truncated where the
    integrand bound falls below the working floor; panels are cached per
    (instance, z) so sweeps over s reuse the P evaluations.
    """
    s = complex(s)
    z = complex(z)
    if not 0 < s.real < 0.5:
        raise ValueError("Re s must lie in (0, 1/2)")
    data = instance.data
    if any(b.real <= 0 for b in data.beta):
        raise ValueError("identity requires Re beta > 0 for every component")
    if quad is None:
        quad = Accuracy(rel_tol=1e-10, abs_floor=1e-18, max_terms=10)
    inv = derive_invariants(data)
    d_F = inv.d_F

    # rhs series; factorial growth of (2t)! kills terms quickly
    terms = []
    t = 0
    while True:
        g = 1.0 + 0.0j
        for a, bb in zip(data.alpha_floats(), data.beta_bar()):
            g *= gamma((2.0 * a / d_F) * (t - s) + bb)
        term = g * z ** (2 * t) / math.factorial(2 * t)
        terms.append(term)
        if z == 0 or (t > 0 and abs(term) < quad.abs_floor):
            break
        t += 1
        if t > 400:
            raise RuntimeError("series did not converge within 400 terms")
    rhs = (2.0 / d_F) * complex(
        math.fsum(v.real for v in terms), math.fsum(v.imag for v in terms)
    )

    # small-y cutoff: integrand ~ y^{p d_F/2 - Re s}, truncate at 1e-9 of scale
    _, p = _small_x_envelope(data)
    margin = p * d_F / 2.0 - s.real
    if margin <= 0.01:
        raise ValueError("outer integral does not converge at this s")
    u_lo = -21.0 / margin
    # large-y cutoff: all terms of the truncated series are dead
    q = 0.5 * (abs(z) + math.sqrt(abs(z) ** 2 + 180.0))
    u_hi = math.log(max(q, 1.0) ** 2 * float(N) ** 2)
    k_lo = int(math.floor(u_lo / _PANEL_WIDTH))
    k_hi = int(math.ceil(u_hi / _PANEL_WIDTH))

    table = coefficient_table(instance, N)
    parts = []
    for k in range(k_lo, k_hi):
        us, ws, pv = _p_panel(instance, table, z, k)
        parts.extend(
            w * cmath.exp(-s * u) * v for u, w, v in zip(us, ws, pv)
        )
    integral = complex(math.fsum(v.real for v in parts),
                       math.fsum(v.imag for v in parts))

    # F(2s+1) by direct series; Re(2s+1) > 1 guarantees convergence
    sig = 2 * s + 1
    n = np.arange(1, table.N + 1, dtype=float)
    with np.errstate(under="ignore"):
        fv = _chunked_sum(table.a[1 : table.N + 1] * n ** (-sig))
    lhs = fv * integral
    defect = abs(lhs - rhs) / abs(rhs)
    return lhs, rhs, defect
