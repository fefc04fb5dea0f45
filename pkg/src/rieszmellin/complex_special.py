"""Complex special functions used throughout the package.

Provides the principal-branch log-Gamma, Gamma, the modified Bessel function
of the second kind K_nu for complex arguments, and Stirling-based magnitude
estimates of Gamma products along vertical lines.  The magnitude estimates
drive every truncation decision in the contour-integral modules, so they are
kept in log space internally to survive arguments where the linear value
underflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "Accuracy",
    "DomainError",
    "PoleError",
    "bessel_k",
    "gamma",
    "log_gamma",
    "stirling_log_magnitude",
    "stirling_magnitude",
]


class PoleError(ValueError):
    """Argument sits on (or numerically on) a pole."""


class DomainError(ValueError):
    """Argument outside the domain of validity (origin, branch cut, ...)."""


@dataclass(frozen=True)
class Accuracy:
    """Refinement targets for series and quadrature loops.

    rel_tol   -- target relative error of the returned value
    abs_floor -- magnitude below which absolute error governs instead
    max_terms -- cap on refinement rounds (step halvings / series terms)
    """

    rel_tol: float = 1e-11
    abs_floor: float = 1e-300
    max_terms: int = 10

    def __post_init__(self) -> None:
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.abs_floor < 0.0:
            raise ValueError("abs_floor must be nonnegative")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# B_{2n} / (2n (2n-1)) for n = 1..12; enough for Re w >= 10 where the
# asymptotic series bottoms out far below 1e-16 relative.
_STIRLING_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    854513.0 / 63756.0,
    -236364091.0 / 1506960.0,
)

_POLE_EPS = 1e-12


def _stirling_series(w: complex) -> complex:
    out = (w - 0.5) * cmath.log(w) - w + 0.5 * _LOG_2PI
    r = 1.0 / w
    r2 = r * r
    term = r
    for c in _STIRLING_COEF:
        out += c * term
        term *= r2
    return out


def _log_sin_pi(z: complex) -> complex:
    # Branch of log sin(pi z) that keeps the reflection formula on the
    # analytic continuation from the positive real axis.  Valid for
    # Im z >= 0: factor out the growing exponential e^{-i pi z}.
    return (
        -1j * math.pi * z
        + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
        + (0.5j * math.pi - math.log(2.0))
    )


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Analytic continuation of log(Gamma) from the positive real axis; the
    imaginary part is *not* reduced mod 2*pi.  Raises PoleError within
    1e-12 of a nonpositive integer.
    """
    z = complex(z)
    if z.real < 0.5:
        m = round(z.real)
        if m <= 0 and abs(z - m) < _POLE_EPS:
            raise PoleError(f"log_gamma pole at {m}: z={z!r}")
        if z.imag < 0.0:
            return log_gamma(z.conjugate()).conjugate()
        return _LOG_PI - _log_sin_pi(z) - log_gamma(1.0 - z)
    # shift into the Stirling region Re w >= 10
    acc = 0.0 + 0.0j
    w = z
    while w.real < 10.0:
        acc += cmath.log(w)
        w += 1.0
    return _stirling_series(w) - acc


def gamma(z: complex) -> complex:
    """Gamma(z) = exp(log_gamma(z)); same pole handling as log_gamma.

    Saturates to a signed complex infinity when the magnitude overflows
    the double range.
    """
    lg = log_gamma(z)
    try:
        return cmath.exp(lg)
    except OverflowError:
        c, s = math.cos(lg.imag), math.sin(lg.imag)
        return complex(math.copysign(math.inf, c), math.copysign(math.inf, s))


def stirling_log_magnitude(
    sigma: float,
    t: float,
    alpha,
    beta,
) -> float:
    """log of the Stirling magnitude estimate of prod Gamma(alpha_i s + beta_i).

    Each factor is estimated by (2 pi)^{1/2} |t_i|^{sigma_i - 1/2}
    exp(-pi |t_i| / 2), with sigma_i + i t_i = alpha_i (sigma + i t) + beta_i.
    Intended for |t| >= 2; factors whose own ordinate drops below 1 are
    clamped to avoid a spurious log singularity.
    """
    total = 0.0
    for a, b in zip(alpha, beta):
        b = complex(b)
        si = a * sigma + b.real
        ti = abs(a * t + b.imag)
        if ti < 1.0:
            ti = 1.0
        total += 0.5 * _LOG_2PI + (si - 0.5) * math.log(ti) - 0.5 * math.pi * ti
    return total


def stirling_magnitude(sigma: float, t: float, alpha, beta) -> float:
    """Upper estimate of |prod Gamma(alpha_i (sigma + i t) + beta_i)|.

    Product of per-factor Stirling magnitudes; within a factor of 2 of the
    true magnitude once |t| >= 10.  Underflows quietly to 0.0 for very
    large ordinates, which is the correct reading for truncation purposes.
    """
    lg = stirling_log_magnitude(sigma, t, alpha, beta)
    if lg < -745.0:
        return 0.0
    return math.exp(lg)


# ---------------------------------------------------------------------------
# modified Bessel K
# ---------------------------------------------------------------------------

_SERIES_MAX_TERMS = 80
_INT_ORDER_EPS = 1e-6  # nu = n +/- eps pair for near-integer orders


def _i_series(nu: float, z: complex) -> complex:
    # I_nu(z) = (z/2)^nu sum_k (z^2/4)^k / (k! Gamma(nu+k+1))
    q = 0.25 * z * z
    term = cmath.exp(nu * cmath.log(0.5 * z) - log_gamma(nu + 1.0))
    total = term
    for k in range(1, _SERIES_MAX_TERMS):
        term *= q / (k * (nu + k))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _k_series_noninteger(nu: float, z: complex) -> complex:
    s = math.sin(math.pi * nu)
    return 0.5 * math.pi * (_i_series(-nu, z) - _i_series(nu, z)) / s


def _k_series(nu: float, z: complex) -> complex:
    n = round(nu)
    if abs(nu - n) < 1e-9:
        # limit definition via a Richardson pair straddling the integer
        hi = _k_series_noninteger(n + _INT_ORDER_EPS, z)
        lo = _k_series_noninteger(n - _INT_ORDER_EPS, z)
        return 0.5 * (hi + lo)
    return _k_series_noninteger(nu, z)


def _trapezoid_halving(f, T: float, h0: float, acc: Accuracy) -> complex:
    # integral of f over [0, T], f effectively zero at T; trapezoid with
    # step halving, fixed-order summation for reproducibility.
    n = max(int(math.ceil(T / h0)), 8)
    h = T / n
    vals = [f(k * h) for k in range(n + 1)]
    total = h * (0.5 * vals[0] + sum(vals[1:-1]) + 0.5 * vals[-1])
    for _ in range(acc.max_terms):
        mids = [f((k + 0.5) * h) for k in range(n)]
        new_total = 0.5 * total + 0.5 * h * sum(mids)
        h *= 0.5
        n *= 2
        done = abs(new_total - total) <= max(
            acc.rel_tol * abs(new_total), acc.abs_floor
        )
        total = new_total
        if done:
            break
    return total


def _k_integral(nu: float, z: complex, acc: Accuracy) -> complex:
    # K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt, Re z > 0.
    # The integrand is even in t, so plain trapezoid converges geometrically.
    x = z.real
    target = max(750.0 / x, 2.0)
    T = math.acosh(target) + 1.0

    def f(t: float) -> complex:
        e = -z * math.cosh(t)
        if e.real < -745.0:
            return 0.0j
        return cmath.exp(e) * math.cosh(nu * t)

    return _trapezoid_halving(f, T, 0.25, acc)


def _i_integral(nu: float, w: complex, acc: Accuracy) -> complex:
    # I_nu(w) = (1/pi) int_0^pi e^{w cos th} cos(nu th) dth
    #           - (sin(nu pi)/pi) int_0^inf e^{-w cosh t - nu t} dt,  Re w > 0
    def f_osc(th: float) -> complex:
        return cmath.exp(w * math.cos(th)) * math.cos(nu * th)

    first = _trapezoid_halving(f_osc, math.pi, math.pi / 32.0, acc) / math.pi
    s = math.sin(math.pi * nu)
    if abs(s) < 1e-15:
        return first
    x = w.real
    T = math.acosh(max(750.0 / x, 2.0)) + 1.0

    def f_tail(t: float) -> complex:
        e = -w * math.cosh(t) - nu * t
        if e.real < -745.0:
            return 0.0j
        return cmath.exp(e)

    return first - (s / math.pi) * _trapezoid_halving(f_tail, T, 0.25, acc)


def _k_asymptotic(nu: float, z: complex) -> complex:
    # K_nu(z) ~ sqrt(pi/(2z)) e^{-z} sum_k a_k(nu)/z^k, truncated at the
    # smallest term.  Only used in the near-imaginary band where neither the
    # integral representation nor the series applies; accuracy there bottoms
    # out around the e^{-2|z|} level, as asymptotics do.
    pref = cmath.sqrt(0.5 * math.pi / z) * cmath.exp(-z)
    mu = 4.0 * nu * nu
    term = 1.0 + 0.0j
    total = term
    best = abs(term)
    for k in range(1, 40):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        if abs(term) >= best:
            break
        best = abs(term)
        total += term
    return pref * total


def bessel_k(nu: float, z: complex, acc: Accuracy | None = None) -> complex:
    """Modified Bessel function of the second kind, principal branch.

    Real order, complex argument with |arg z| < pi.  Integer orders go
    through the nu -> n limit.  In the sector |arg z| <= 3*pi/8 (and for
    small or left-half-plane arguments via series / connection formula)
    relative error is at the 1e-13 level; in the residual near-imaginary
    band |arg z| in (3*pi/8, 5*pi/8) with |z| > 6 only the truncated
    asymptotic expansion is available and accuracy degrades toward
    ~e^{-2|z|} there.  No package-internal computation touches that band.
    """
    if acc is None:
        acc = Accuracy(rel_tol=1e-13, abs_floor=1e-300, max_terms=12)
    z = complex(z)
    nu = abs(float(nu))  # K_{-nu} = K_nu
    if z == 0.0:
        raise DomainError("bessel_k undefined at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError("bessel_k branch cut on the negative real axis")
    if z.imag < 0.0:
        return bessel_k(nu, z.conjugate(), acc).conjugate()

    p = cmath.phase(z)  # in [0, pi)
    if p >= 0.625 * math.pi:
        # rotate to the right half plane: K(w e^{i pi}) = e^{-i nu pi} K(w)
        #                                                - i pi I(w)
        w = z * cmath.exp(-1j * math.pi)
        if abs(w) <= 6.0:
            i_part = _i_series(nu, w)
        else:
            i_part = _i_integral(nu, w, acc)
        return (
            cmath.exp(-1j * math.pi * nu) * bessel_k(nu, w, acc)
            - 1j * math.pi * i_part
        )
    if p <= 0.375 * math.pi:
        return _k_integral(nu, z, acc)
    if abs(z) <= 6.0:
        return _k_series(nu, z)
    return _k_asymptotic(nu, z)
