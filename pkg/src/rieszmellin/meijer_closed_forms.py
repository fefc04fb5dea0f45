"""Closed-form special values of G^{m,0}_{0,m} and the map from Z~ to them.

Six named identities are implemented: the single- and double-factor
exponential forms (sepG01), the Bessel-K form (sepG03), the cube/quartic/
quintic root-exponential forms (sepG04, sepG1, sepG05), and the degree-four
split form with a product of two K's at conjugate arguments (sepG2).
g_quadrature evaluates the defining line integral directly, so the closed
forms and the contour engine check each other.

ztilde_prefactor_map rewrites the right-line kernel of any rational-alpha
data set as prefactor * G(w), which is what makes the large-x decay
constants in mellin_kernel explicit.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .complex_special import Accuracy, bessel_k, gamma, log_gamma, stirling_log_magnitude
from .lfunction_model import SelbergData, derive_invariants
from .mellin_kernel import ContourSpec, ConvergenceError

log = logging.getLogger(__name__)

__all__ = [
    "GSpec",
    "IDENTITY_FORMS",
    "PatternError",
    "four_factor_kernel",
    "g_closed",
    "g_quadrature",
    "ztilde_prefactor_map",
]

IDENTITY_FORMS = ("sepG01", "sepG03", "sepG04", "sepG05", "sepG1", "sepG2")

_TOL = 1e-12  # structural pattern tolerance


class PatternError(ValueError):
    """Lower-parameter vector does not match the named identity's pattern."""


@dataclass(frozen=True)
class GSpec:
    """Signature of a G^{m,0}_{0,m}(z | b) value."""

    m: int
    b: tuple
    z: complex

    def __post_init__(self):
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError("m must be a positive integer")
        b = tuple(complex(v) for v in self.b)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "z", complex(self.z))
        if len(b) != self.m:
            raise ValueError(f"expected {self.m} lower parameters, got {len(b)}")
        if self.z == 0:
            raise ValueError("z must be nonzero")


def _require(cond: bool, form: str, msg: str) -> None:
    if not cond:
        raise PatternError(f"{form}: {msg}")


def _check_progression(form: str, b: tuple, step: float) -> complex:
    """Validate b = (b0, b0+step, ..., b0+(m-1)step) and return b0."""
    b0 = b[0]
    for j, v in enumerate(b):
        _require(abs(v - (b0 + j * step)) < _TOL, form,
                 f"lower parameters must step by {step}")
    return b0


def _zpow(z: complex, b: complex) -> complex:
    return cmath.exp(b * cmath.log(z))


def _real_order(form: str, nu: complex) -> float:
    _require(abs(nu.imag) < _TOL, form, "Bessel order must be real")
    return nu.real


def g_closed(spec: GSpec, form: str) -> complex:
    """Closed form of G^{m,0}_{0,m}(z | b) for the named identity.

    sepG01 covers both the m=1 form e^{-z} z^b and the m=2 form
    sqrt(pi) z^b e^{-2 sqrt z} for the half-step pair (b, b+1/2).
    Raises PatternError when b does not fit the identity's shape.
    """
    if form not in IDENTITY_FORMS:
        raise ValueError(f"unknown identity {form!r}; choose from {IDENTITY_FORMS}")
    b, z = spec.b, spec.z
    if form == "sepG01":
        if spec.m == 1:
            return cmath.exp(-z) * _zpow(z, b[0])
        _require(spec.m == 2, "sepG01", "m must be 1 or 2")
        b0 = _check_progression("sepG01", b, 0.5)
        return math.sqrt(math.pi) * _zpow(z, b0) * cmath.exp(-2 * cmath.sqrt(z))
    if form == "sepG03":
        _require(spec.m == 2, "sepG03", "m must be 2")
        b0, c0 = b
        nu = _real_order("sepG03", b0 - c0)
        return 2.0 * _zpow(z, 0.5 * (b0 + c0)) * bessel_k(nu, 2 * cmath.sqrt(z))
    if form == "sepG04":
        _require(spec.m == 3, "sepG04", "m must be 3")
        b0 = _check_progression("sepG04", b, 1.0 / 3.0)
        return (2 * math.pi / math.sqrt(3.0)) * _zpow(z, b0) * cmath.exp(
            -3 * _zpow(z, 1.0 / 3.0)
        )
    if form == "sepG05":
        _require(spec.m == 5, "sepG05", "m must be 5")
        b0 = _check_progression("sepG05", b, 0.2)
        return (4 * math.pi**2 / math.sqrt(5.0)) * _zpow(z, b0) * cmath.exp(
            -5 * _zpow(z, 0.2)
        )
    if form == "sepG1":
        _require(spec.m == 4, "sepG1", "m must be 4")
        b0 = _check_progression("sepG1", b, 0.25)
        return math.sqrt(2.0) * math.pi**1.5 * _zpow(z, b0) * cmath.exp(
            -4 * _zpow(z, 0.25)
        )
    # sepG2: pattern (b, b+1/2, 2b-c, c)
    _require(spec.m == 4, "sepG2", "m must be 4")
    b0, b1, b2, c0 = b
    _require(abs(b1 - (b0 + 0.5)) < _TOL, "sepG2", "second parameter must be b + 1/2")
    _require(abs(b2 - (2 * b0 - c0)) < _TOL, "sepG2", "third parameter must be 2b - c")
    nu = _real_order("sepG2", 2 * c0 - 2 * b0)
    # principal branch: for z = x > 0 this makes the two arguments complex
    # conjugates and the product real
    root = cmath.exp(0.25 * cmath.log(-spec.z))
    a1 = 2 * math.sqrt(2.0) * root
    a2 = 2 * math.sqrt(2.0) * cmath.sqrt(z) / root
    return 8 * math.sqrt(math.pi) * _zpow(z, b0) * bessel_k(nu, a1) * bessel_k(nu, a2)


def _g_line_pass(b: tuple, z: complex, c0: float, T: float, h: float):
    lz = cmath.log(z)
    n = int(math.ceil(T / h))
    re_parts, im_parts = [], []
    gross = 0.0
    for j in range(-n, n + 1):
        v = complex(c0, j * h)
        lg = -v * lz
        for bj in b:
            lg += log_gamma(bj + v)
        if lg.real < -745.0:
            continue
        val = cmath.exp(lg)
        w = 0.5 if abs(j) == n else 1.0
        re_parts.append(w * val.real)
        im_parts.append(w * val.imag)
        gross += w * abs(val)
    total = complex(math.fsum(re_parts), math.fsum(im_parts))
    return total * h / (2.0 * math.pi), gross * h / (2.0 * math.pi)


def g_quadrature(spec: GSpec, contour: ContourSpec | None = None) -> complex:
    """G^{m,0}_{0,m}(z | b) by trapezoid quadrature of the defining integral
    (1/2 pi i) int prod_j Gamma(b_j + v) z^{-v} dv on a vertical line right
    of every pole of the integrand."""
    b, z = spec.b, spec.z
    pole_edge = -min(bj.real for bj in b)
    if contour is None:
        c0 = pole_edge + 0.5
        acc = Accuracy(rel_tol=1e-11, abs_floor=1e-250, max_terms=10)
        h0 = 0.05
        min_T = 0.0
    else:
        c0 = contour.abscissa
        acc = contour.refinement
        h0 = contour.step
        min_T = contour.height_T
        if c0 <= pole_edge:
            raise ValueError(
                f"abscissa {c0} does not separate the poles (need > {pole_edge:.6g})"
            )
    arg_z = abs(cmath.phase(z))
    if arg_z >= spec.m * math.pi / 2:
        raise ValueError("integral diverges: |arg z| >= m pi / 2")
    ones = (1.0,) * spec.m
    target = math.log(acc.rel_tol) - math.log(1e3) + c0 * math.log(abs(z))

    def decayed(T):
        return stirling_log_magnitude(c0, T, ones, b) + T * arg_z <= target

    T = max(min_T, 4.0)
    while not decayed(T):
        T *= 2.0
        if T > 2e5:
            raise ConvergenceError("required truncation height exceeds 2e5")
    h = h0
    val, gross = _g_line_pass(b, z, c0, T, h)
    for _ in range(acc.max_terms):
        h *= 0.5
        new, gross = _g_line_pass(b, z, c0, T, h)
        delta = abs(new - val)
        val = new
        if delta <= max(acc.rel_tol * abs(new), 3e-16 * gross):
            return val
    raise ConvergenceError(
        f"no convergence for m={spec.m}, z={z} within {acc.max_terms} halvings"
    )


def ztilde_prefactor_map(data: SelbergData, x: float):
    """Rewrite the right-line kernel as prefactor * G^{m,0}_{0,m}(w | b_ij).

    Returns (prefactor, w, GSpec).  With L the lcm of the alpha denominators
    and k_i = alpha_i L, the Gamma multiplication formula gives
        prefactor = L (2 pi)^{q/2 - sum(k_i)/2} prod k_i^{conj(beta_i) - 1/2},
        w = x^L / prod k_i^{k_i},
    and lower parameters (conj(beta_i) + j - 1)/k_i, j = 1..k_i.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    inv = derive_invariants(data)
    L, k = inv.L, inv.k
    betas_bar = data.beta_bar()
    sum_k = sum(k)
    prefactor = complex(L) * (2 * math.pi) ** ((data.q - sum_k) / 2.0)
    prod_kk = 1.0
    for ki in k:
        prod_kk *= float(ki) ** ki
    for bb, ki in zip(betas_bar, k):
        prefactor *= _zpow(complex(ki), bb - 0.5)
    w = x**L / prod_kk
    b_ij = tuple(
        (bb + (j - 1)) / ki for bb, ki in zip(betas_bar, k) for j in range(1, ki + 1)
    )
    return prefactor, w, GSpec(m=sum_k, b=b_ij, z=w)


def four_factor_kernel(x: float, C: float = 0.3) -> complex:
    """Left-line kernel of the degree-four data alpha=(1,1,1,1),
    beta=(0, 1/2, -C, C) in closed form.

    The right-line kernel is exactly G^{4,0}_{0,4}(x | 0, 1/2, -C, C)
    (prefactor 1, w = x), i.e. the sepG2 Bessel product.  Crossing the strip
    picks up the residue at s = 0,
        sqrt(pi) Gamma(-C) Gamma(C) = -pi sqrt(pi) / (C sin(pi C)),
    and -- because beta has the component -C -- a second Gamma pole at
    s = C inside the strip, contributing Gamma(C) Gamma(C+1/2) Gamma(2C)
    x^{-C}.  Both must be subtracted from the Bessel product to match the
    left-line integral; dropping the s = C term leaves an O(x^{-C}) error.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    if not 0 < C < 0.5:
        raise ValueError("C must lie in (0, 1/2)")
    zt = g_closed(GSpec(m=4, b=(0.0, 0.5, -C, C), z=x), "sepG2")
    res0 = -math.pi * math.sqrt(math.pi) / (C * math.sin(math.pi * C))
    res_C = (gamma(C) * gamma(C + 0.5) * gamma(2 * C)).real * x ** (-C)
    return zt - res0 - res_C
