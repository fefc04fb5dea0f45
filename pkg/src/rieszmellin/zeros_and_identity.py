"""Zero-ordinate ingestion, analytic L-values with numerical derivatives at
zeros, bracketed zero sums, and the defect of the two-sum modular identity

    omega sqrt(eta) sum b(n)/n Z(eta/n) - sqrt(nu) sum conj(b(n))/n Zbar(nu/n)
      = -(1/sqrt(nu)) sum_rho prodGamma(alpha_i(1-conj(rho))+beta_i)
                                / conj(F'(rho)) * nu^conj(rho)  - residue terms

with eta*nu = 1/Q^2.  Note the kernel argument here is eta/n, not the
(sqrt(y)/n)^{d_F} shape used by the decay sums.

L-values come from Euler-Maclaurin Hurwitz zeta sums (good to ~1e-12 for
|Im s| up to a few hundred), so only instances expressible through Dirichlet
characters are supported analytically.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, replace
from importlib import resources
from types import SimpleNamespace

import numpy as np

from .complex_special import gamma
from .lfunction_model import (
    DirichletCharacter,
    coefficient_table,
    conjugate_data,
    derive_invariants,
    kronecker_chi,
)
from .mellin_kernel import kernel_Z

log = logging.getLogger(__name__)

__all__ = [
    "IdentityReport",
    "ZeroRecord",
    "bracket_zeros",
    "bundled_zeros_path",
    "hurwitz_zeta",
    "lfunction_value",
    "load_zeros",
    "populate_derivatives",
    "residue_terms",
    "rhl_defect",
    "zero_count_fit",
    "zero_sum",
    "zeta_like_derivative",
    "zeta_value",
]

# B_2 .. B_24
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
)

# default contour parameters, echoed in serialized reports
DERIVATIVE_RADIUS = 0.01
DERIVATIVE_NODES = 64
RESIDUE_RADIUS = 0.1
RESIDUE_NODES = 128


@dataclass(frozen=True)
class ZeroRecord:
    """One nontrivial zero: ordinate, location, derivative there, bracket."""

    rho: complex
    gamma_ordinate: float
    f_prime: complex = 0.0 + 0.0j
    bracket_id: int = -1

    def __post_init__(self):
        if not self.gamma_ordinate > 0:
            raise ValueError("gamma ordinate must be positive")


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the identity at (eta, nu) and their difference."""

    eta: float
    nu: float
    lhs_eta_term: complex
    lhs_nu_term: complex
    zero_sum: complex
    residue_s1: complex
    residue_s0: complex
    defect: complex
    n_zeros_used: int
    n_terms_used: int
    last_bracket_magnitude: float
    bracket_c: float

    @property
    def lhs(self) -> complex:
        return self.lhs_eta_term - self.lhs_nu_term

    @property
    def rhs(self) -> complex:
        return self.lhs - self.defect


def bundled_zeros_path():
    """Path to the packaged first-100 zeta ordinate list."""
    return resources.files("rieszmellin").joinpath("data/zeta_zeros_100.txt")


def load_zeros(path) -> list:
    """Parse one ascending positive ordinate per line into ZeroRecords.

    Blank lines and '#' comments (whole-line or trailing) are ignored.
    """
    records = []
    prev = 0.0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                g = float(text)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: not a decimal ordinate: {text!r}") from exc
            if not g > prev:
                raise ValueError(
                    f"line {lineno}: ordinates must be strictly ascending "
                    f"({g} after {prev})"
                )
            records.append(ZeroRecord(rho=0.5 + 1j * g, gamma_ordinate=g))
            prev = g
    return records


def hurwitz_zeta(s: complex, a: float) -> complex:
    """Hurwitz zeta by Euler-Maclaurin: direct terms to M ~ 1.2|Im s|, the
    continuation term M^{1-s}/(s-1), and twelve Bernoulli corrections.
    Reliable to ~1e-12 relative for |Im s| up to a few hundred and
    Re s > -20."""
    s = complex(s)
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    if abs(s - 1.0) < 1e-12:
        raise ValueError("pole at s = 1")
    M = max(30, int(1.2 * abs(s.imag)) + 1)
    re = 0.0
    im = 0.0
    for n in range(M):
        v = cmath.exp(-s * math.log(n + a))
        re += v.real
        im += v.imag
    acc = complex(re, im)
    q = M + a
    lq = math.log(q)
    acc += cmath.exp((1 - s) * lq) / (s - 1)
    acc += 0.5 * cmath.exp(-s * lq)
    poch = s
    qpow = cmath.exp((-s - 1) * lq)
    inv_q2 = 1.0 / (q * q)
    fact = 2.0
    for k, b2k in enumerate(_BERNOULLI, start=1):
        acc += b2k / fact * poch * qpow
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        qpow *= inv_q2
        fact *= (2 * k + 1) * (2 * k + 2)
    return acc


def zeta_value(s: complex) -> complex:
    return hurwitz_zeta(s, 1.0)


def _dirichlet_l(s: complex, q: int, chi_of) -> complex:
    acc = 0.0 + 0.0j
    for a in range(1, q + 1):
        c = chi_of(a)
        if c:
            acc += c * hurwitz_zeta(s, a / q)
    return cmath.exp(-s * math.log(q)) * acc


def lfunction_value(instance, s: complex) -> complex:
    """Analytic continuation of the instance's Dirichlet series."""
    s = complex(s)
    kind = instance.name.split(":")[0]
    if kind == "zeta":
        return zeta_value(s)
    if kind == "dirichlet":
        q, index = instance.meta["q"], instance.meta["index"]
        chi = DirichletCharacter(q, index)
        return _dirichlet_l(s, q, chi)
    if kind == "dedekind_quadratic":
        D = instance.meta["D"]
        aD = abs(D)
        return zeta_value(s) * _dirichlet_l(s, aD, lambda a: complex(kronecker_chi(D, a)))
    raise NotImplementedError(
        f"no analytic evaluator for instance {instance.name!r}"
    )


def zeta_like_derivative(instance, rho: complex, radius: float = DERIVATIVE_RADIUS,
                         nodes: int = DERIVATIVE_NODES) -> complex:
    """F'(rho) by Cauchy differentiation on a small circle.

    The circle must be zero-free apart from rho itself; a collapse of
    min |F| on the circle flags a nearby second zero.
    """
    rho = complex(rho)
    if not 0 < rho.real < 1:
        raise ValueError("rho must lie in the critical strip")
    vals = []
    for j in range(nodes):
        theta = 2.0 * math.pi * j / nodes
        vals.append(lfunction_value(instance, rho + radius * cmath.exp(1j * theta)))
    if min(abs(v) for v in vals) < 1e-6:
        raise ValueError(
            f"circle of radius {radius} around {rho} is not zero-free; "
            "a second zero appears to lie inside or near it"
        )
    acc_re = []
    acc_im = []
    for j, v in enumerate(vals):
        theta = 2.0 * math.pi * j / nodes
        t = v * cmath.exp(-1j * theta) / radius
        acc_re.append(t.real)
        acc_im.append(t.imag)
    return complex(math.fsum(acc_re), math.fsum(acc_im)) / nodes


def populate_derivatives(instance, records, radius: float = DERIVATIVE_RADIUS,
                         nodes: int = DERIVATIVE_NODES) -> list:
    """Fill f_prime for every record; rejects ordinate pairs closer than the
    two circle radii (the derivative circles would overlap)."""
    for a, b in zip(records, records[1:]):
        if b.gamma_ordinate - a.gamma_ordinate <= 2.0 * radius:
            raise ValueError(
                f"ordinates {a.gamma_ordinate} and {b.gamma_ordinate} are "
                f"closer than 2r = {2 * radius}; simplicity check fails"
            )
    return [
        replace(rec, f_prime=zeta_like_derivative(instance, rec.rho, radius, nodes))
        for rec in records
    ]


def bracket_zeros(records, c: float) -> list:
    """Assign bracket ids: consecutive zeros share a bracket when their gap
    is below exp(-c g/ln g) + exp(-c g'/ln g'); closure is transitive."""
    if c <= 0:
        raise ValueError("c must be positive")
    out = []
    bracket = -1
    prev = None
    for rec in records:
        if prev is not None and rec.gamma_ordinate <= prev.gamma_ordinate:
            raise ValueError("records must be strictly ascending in ordinate")
        if prev is None:
            bracket = 0
        else:
            g0, g1 = prev.gamma_ordinate, rec.gamma_ordinate
            thr = math.exp(-c * g0 / math.log(g0)) + math.exp(-c * g1 / math.log(g1))
            if g1 - g0 >= thr:
                bracket += 1
        out.append(replace(rec, bracket_id=bracket))
        prev = rec
    return out


def _is_real_coefficients(instance) -> bool:
    tab = coefficient_table(instance, 50)
    return bool(np.all(np.abs(tab.a.imag) < 1e-14)) and abs(
        complex(instance.data.omega).imag
    ) < 1e-14


def _zero_sum_detail(instance, nu: float, records):
    data = instance.data
    alphas = data.alpha_floats()
    betas = tuple(complex(b) for b in data.beta)
    lnu = math.log(nu)
    double = _is_real_coefficients(instance)
    bracket_totals = []
    current = []
    current_id = None
    for rec in records:
        if abs(rec.f_prime) < 1e-12:
            raise ValueError(
                f"|F'| = {abs(rec.f_prime):.3g} at ordinate "
                f"{rec.gamma_ordinate}; zero not numerically simple"
            )
        rho_bar = rec.rho.conjugate()
        g = 1.0 + 0.0j
        for a, b in zip(alphas, betas):
            g *= gamma(a * (1.0 - rho_bar) + b)
        term = g * cmath.exp(rho_bar * lnu) / rec.f_prime.conjugate()
        if double:
            term = complex(2.0 * term.real, 0.0)
        if rec.bracket_id != current_id and current:
            bracket_totals.append(sum(current))
            current = []
        current_id = rec.bracket_id
        current.append(term)
    if current:
        bracket_totals.append(sum(current))
    if not bracket_totals:
        return 0.0 + 0.0j, 0.0
    total = complex(
        math.fsum(t.real for t in bracket_totals),
        math.fsum(t.imag for t in bracket_totals),
    )
    return total, abs(bracket_totals[-1])


def zero_sum(instance, nu: float, records) -> complex:
    """Bracket-ordered sum over zeros of
    prod Gamma(alpha_i(1-conj(rho))+beta_i) nu^conj(rho) / conj(F'(rho)),
    doubled into conjugate pairs for real-coefficient instances."""
    total, _ = _zero_sum_detail(instance, nu, records)
    return total


def _circle_residue(f, center: complex, radius: float, nodes: int) -> complex:
    acc_re = []
    acc_im = []
    for j in range(nodes):
        theta = 2.0 * math.pi * j / nodes
        e = cmath.exp(1j * theta)
        t = f(center + radius * e) * radius * e
        acc_re.append(t.real)
        acc_im.append(t.imag)
    return complex(math.fsum(acc_re), math.fsum(acc_im)) / nodes


def residue_terms(instance, nu: float, r: int):
    """The two pole corrections of the identity, as residues at s = 1 and
    s = 0 of prod Gamma(alpha_i(1-s)+beta_i) nu^s / conj(F(conj(s))),
    each divided by sqrt(nu).  Zero for r <= 0."""
    if r <= 0:
        return 0.0 + 0.0j, 0.0 + 0.0j
    data = instance.data
    alphas = data.alpha_floats()
    betas = tuple(complex(b) for b in data.beta)
    lnu = math.log(nu)

    def g(s: complex) -> complex:
        acc = 1.0 + 0.0j
        for a, b in zip(alphas, betas):
            acc *= gamma(a * (1.0 - s) + b)
        fbar = lfunction_value(instance, s.conjugate()).conjugate()
        return acc * cmath.exp(s * lnu) / fbar

    rt = math.sqrt(nu)
    at_s1 = _circle_residue(g, 1.0 + 0.0j, RESIDUE_RADIUS, RESIDUE_NODES) / rt
    at_s0 = _circle_residue(g, 0.0 + 0.0j, RESIDUE_RADIUS, RESIDUE_NODES) / rt
    return at_s1, at_s0


def _kernel_sum(data, table, scale: float, cap: int) -> complex:
    """sum_{n<=cap} b(n)/n Z(scale/n) using the elementary closed form when
    one exists, else the contour engine per distinct argument."""
    from .riesz_sums import _chunked_sum, _closed_term_evaluator

    f = _closed_term_evaluator(data)
    n = np.arange(1, cap + 1, dtype=float)
    if f is not None:
        with np.errstate(under="ignore"):
            terms = (table.b[1 : cap + 1] / n) * f(scale / n, None)
        return _chunked_sum(terms)
    if cap > 25_000:
        log.warning("kernel sum via quadrature with cap=%d will be slow", cap)
    cache = {}
    parts_re, parts_im = [], []
    for k in range(1, cap + 1):
        x = scale / k
        v = cache.get(x)
        if v is None:
            v = kernel_Z(data, x)
            cache[x] = v
        t = table.b[k] / k * v
        parts_re.append(t.real)
        parts_im.append(t.imag)
    return complex(math.fsum(parts_re), math.fsum(parts_im))


def rhl_defect(instance, eta: float, zeros, term_cap: int,
               bracket_c: float = 0.01) -> IdentityReport:
    """Evaluate both sides of the identity at eta (nu = 1/(Q^2 eta)) with
    term_cap kernel terms and the supplied zero list.

    Brackets and derivatives are filled in if the records lack them.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    data = instance.data
    Q = float(data.Q)
    nu = 1.0 / (Q * Q * eta)
    assert abs(eta * nu * Q * Q - 1.0) < 1e-12
    records = list(zeros)
    if records and any(rec.bracket_id < 0 for rec in records):
        records = bracket_zeros(records, bracket_c)
    if records and any(rec.f_prime == 0 for rec in records):
        records = populate_derivatives(instance, records)

    table = coefficient_table(instance, term_cap)
    sum_eta = _kernel_sum(data, table, eta, term_cap)
    conj_table = SimpleNamespace(b=table.b.conjugate())
    sum_nu = _kernel_sum(conjugate_data(data), conj_table, nu, term_cap)
    omega = complex(data.omega)
    lhs_eta = omega * math.sqrt(eta) * sum_eta
    lhs_nu = math.sqrt(nu) * sum_nu

    ztot, last_mag = _zero_sum_detail(instance, nu, records)
    r = derive_invariants(data).r
    at_s1, at_s0 = residue_terms(instance, nu, r)
    rhs = -ztot / math.sqrt(nu) - at_s1 - at_s0
    lhs = lhs_eta - lhs_nu
    return IdentityReport(
        eta=eta,
        nu=nu,
        lhs_eta_term=lhs_eta,
        lhs_nu_term=lhs_nu,
        zero_sum=ztot,
        residue_s1=at_s1,
        residue_s0=at_s0,
        defect=lhs - rhs,
        n_zeros_used=len(records),
        n_terms_used=term_cap,
        last_bracket_magnitude=last_mag,
        bracket_c=bracket_c,
    )


def zero_count_fit(records, T: float, d_F: float = 1.0):
    """Count ordinates below T and fit C in
    N(T) ~ (d_F/pi) T log T + C T, counting conjugate pairs (the bundled
    lists are one-sided, so each record contributes two zeros).
    Diagnostic only."""
    gs = [rec.gamma_ordinate for rec in records if rec.gamma_ordinate <= T]
    if not gs:
        raise ValueError("no ordinates at or below T")
    count = len(gs)
    ts = np.array(gs)
    resid = 2.0 * np.arange(1, count + 1) - (d_F / math.pi) * ts * np.log(ts)
    fitted = float(np.linalg.lstsq(ts[:, None], resid, rcond=None)[0][0])
    return count, fitted
