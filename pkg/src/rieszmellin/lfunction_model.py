"""Selberg-class instance data and coefficient machinery.

A SelbergData records the functional-equation data (Q, alpha, beta, omega)
together with the declared pole order k_F at s = 1.  From it we derive the
structural invariants (degree, zero-beta count, contour margin, residue
order) that the kernel and identity modules consume.  Coefficients a_F(n)
come from polynomial Euler products; the inverse coefficients b_F(n) from
Dirichlet-series inversion.

Built-in instances: the Riemann zeta function, primitive Dirichlet L-functions
of modulus <= 100, and Dedekind zeta functions of quadratic fields.
"""

from __future__ import annotations

import cmath
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
import sympy.ntheory as nt
from sympy.functions.combinatorial.numbers import jacobi_symbol as _jacobi

log = logging.getLogger(__name__)

__all__ = [
    "CoefficientTable",
    "DerivedInvariants",
    "EulerFactor",
    "Instance",
    "SelbergData",
    "builtin",
    "coefficient_table",
    "coefficients_from_euler",
    "conjugate_data",
    "derive_invariants",
    "dirichlet_inverse",
    "load_instance_file",
]

_ZERO_EPS = 1e-12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        fr = Fraction(x).limit_denominator(10_000)
        if float(fr) == x:
            return fr
        raise ValueError(
            f"alpha component {x!r} is not recognisably rational; "
            "pass it as a (numerator, denominator) pair"
        )
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class SelbergData:
    """Functional-equation data (Q, alpha, beta, omega) plus declared k_F.

    alpha components are exact rationals.  Components of beta with negative
    real part are tolerated (some closed-form Gamma products of interest sit
    formally outside the class); a warning is logged because the structural
    invariants then lose their usual meaning.
    """

    Q: float
    alpha: tuple
    beta: tuple
    omega: complex
    k_F: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(_as_fraction(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(complex(b) for b in self.beta))
        object.__setattr__(self, "omega", complex(self.omega))
        if not self.Q > 0:
            raise ValueError("Q must be positive")
        if len(self.alpha) == 0:
            raise ValueError("alpha must be nonempty")
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have equal length")
        if any(a <= 0 for a in self.alpha):
            raise ValueError("alpha components must be positive")
        if abs(abs(self.omega) - 1.0) > _ZERO_EPS:
            raise ValueError(f"|omega| must be 1, got {abs(self.omega)!r}")
        if self.k_F < 0:
            raise ValueError("k_F must be nonnegative")
        if any(b.real < -_ZERO_EPS for b in self.beta):
            log.warning(
                "beta has a component with negative real part (%s); "
                "treating the instance formally",
                self.beta,
            )

    @property
    def q(self) -> int:
        return len(self.alpha)

    def alpha_floats(self) -> tuple:
        return tuple(float(a) for a in self.alpha)

    def beta_bar(self) -> tuple:
        return tuple(b.conjugate() for b in self.beta)


@dataclass(frozen=True)
class DerivedInvariants:
    """Structural invariants derived from SelbergData."""

    d_F: float
    j_F: int
    c_F: float
    r: int
    L: int
    k: tuple

    def __post_init__(self):
        if self.L < 1 or any(ki < 1 for ki in self.k):
            raise ValueError("L and k components must be positive integers")


@dataclass(frozen=True)
class EulerFactor:
    """Inverse roots of the local polynomial 1/F_p(s) at a prime."""

    p: int
    roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(complex(r) for r in self.roots))
        if self.p < 2:
            raise ValueError("p must be a prime >= 2")
        if any(abs(r) > 1.0 + 1e-9 for r in self.roots):
            raise ValueError(f"Euler roots must satisfy |root| <= 1 at p={self.p}")


@dataclass(frozen=True)
class CoefficientTable:
    """a_F(1..N) and the Dirichlet inverse b_F(1..N); index 0 unused."""

    N: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.a.shape != (self.N + 1,) or self.b.shape != (self.N + 1,):
            raise ValueError("coefficient arrays must have length N+1")
        if abs(self.a[1] - 1.0) > _ZERO_EPS or abs(self.b[1] - 1.0) > _ZERO_EPS:
            raise ValueError("a(1) and b(1) must equal 1")


def derive_invariants(data: SelbergData) -> DerivedInvariants:
    """Degree, zero-beta count, contour margin, residue order, and the
    integer decomposition (L, k_i) of the alpha vector.

    r uses the proof-side convention r = j_F - k_F: it is the pole order at
    s = 1 of the reflected Gamma product over F, and is what decides whether
    the identity carries residue terms.
    """
    alphas = data.alpha
    d_F = float(2 * sum(alphas, Fraction(0)))
    j_F = sum(1 for b in data.beta if abs(b) < _ZERO_EPS)
    re_parts = [b.real for b in data.beta]
    if all(abs(x) < _ZERO_EPS for x in re_parts):
        c_F = min(1.0 / (2.0 * float(a)) for a in alphas)
    else:
        c_F = min(x / float(a) for x, a in zip(re_parts, alphas))
    if c_F <= _ZERO_EPS:
        # formal instance (mixed or negative beta real parts): fall back to
        # the actual margin to the nearest strictly negative integrand pole
        cands = []
        for a, b in zip(alphas, data.beta):
            af = float(a)
            for m in range(0, 4):
                gap = (m + b.real) / af
                if gap > 1e-9:
                    cands.append(gap)
        if not cands:
            raise ValueError("no pole-free margin left of 0 for this data")
        c_F = min(cands)
        log.debug("c_F fell back to pole-margin value %.6g", c_F)
    L = 1
    for a in alphas:
        L = L * a.denominator // gcd(L, a.denominator)
    k = tuple(int(a * L) for a in alphas)
    return DerivedInvariants(d_F=d_F, j_F=j_F, c_F=c_F, r=j_F - data.k_F, L=L, k=k)


def conjugate_data(data: SelbergData) -> SelbergData:
    """Dual data: beta and omega conjugated, Q and alpha unchanged."""
    return SelbergData(
        Q=data.Q,
        alpha=data.alpha,
        beta=tuple(b.conjugate() for b in data.beta),
        omega=data.omega.conjugate(),
        k_F=data.k_F,
    )


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


def _prime_power_coeffs(roots: Sequence[complex], m_max: int) -> np.ndarray:
    """a(p^m) for m = 0..m_max from the Newton power-sum recursion."""
    out = np.zeros(m_max + 1, dtype=complex)
    out[0] = 1.0
    if m_max == 0:
        return out
    power_sums = np.zeros(m_max + 1, dtype=complex)
    for r in roots:
        if r == 0:
            continue
        rk = r
        for kk in range(1, m_max + 1):
            power_sums[kk] += rk
            rk *= r
    for m in range(1, m_max + 1):
        acc = 0.0 + 0.0j
        for kk in range(1, m + 1):
            acc += power_sums[kk] * out[m - kk]
        out[m] = acc / m
    return out


def _spf_sieve(N: int) -> np.ndarray:
    spf = np.zeros(N + 1, dtype=np.int64)
    spf[1] = 1
    i = 2
    while i * i <= N:
        if spf[i] == 0:
            spf[i : N + 1 : i][spf[i : N + 1 : i] == 0] = i
        i += 1
    spf[spf == 0] = np.arange(N + 1)[spf == 0]
    return spf


def coefficients_from_euler(
    factors: Mapping[int, EulerFactor] | Callable[[int], EulerFactor],
    N: int,
) -> np.ndarray:
    """a_F(1..N) from local Euler factors, extended multiplicatively.

    `factors` is either a mapping prime -> EulerFactor covering every prime
    <= N, or a callable producing the factor on demand.  Returns an array of
    length N+1 with index 0 unused.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    spf = _spf_sieve(N)
    a = np.zeros(N + 1, dtype=complex)
    a[0] = 0.0
    a[1] = 1.0
    get = factors if callable(factors) else None

    # per-prime tables of a(p^m) up to the largest power below N
    pp: dict[int, np.ndarray] = {}
    for p in range(2, N + 1):
        if spf[p] != p:
            continue
        if get is not None:
            fac = get(p)
        else:
            try:
                fac = factors[p]
            except KeyError as exc:
                raise ValueError(f"missing Euler factor for prime {p} <= {N}") from exc
        m_max = int(math.log(N) / math.log(p) + 1e-9)
        pp[p] = _prime_power_coeffs(fac.roots, m_max)

    for n in range(2, N + 1):
        p = int(spf[n])
        m = 0
        rest = n
        while rest % p == 0:
            rest //= p
            m += 1
        a[n] = pp[p][m] * a[rest]
    return a


def dirichlet_inverse(a: np.ndarray, N: Optional[int] = None) -> np.ndarray:
    """b with (a * b)(n) = [n == 1] under Dirichlet convolution, n <= N.

    Works for arbitrary (not necessarily multiplicative) a with a(1) = 1.
    Sieve-style forward elimination: when row n is final, its contribution
    b(n) a(k) is subtracted from every multiple nk.
    """
    a = np.asarray(a, dtype=complex)
    if N is None:
        N = len(a) - 1
    if len(a) < N + 1:
        raise ValueError("coefficient vector shorter than N+1")
    if abs(a[1] - 1.0) > _ZERO_EPS:
        raise ValueError("a(1) must equal 1")
    b = np.zeros(N + 1, dtype=complex)
    b[1] = 1.0
    for n in range(1, N + 1):
        bn = b[n]
        if bn == 0:
            continue
        kmax = N // n
        if kmax >= 2:
            b[2 * n : N + 1 : n] -= bn * a[2 : kmax + 1]
    return b


# ---------------------------------------------------------------------------
# Dirichlet characters (q <= 100) and quadratic characters
# ---------------------------------------------------------------------------


class DirichletCharacter:
    """Character mod q, indexed by its exponent tuple on the CRT generators.

    Index enumeration is lexicographic over the exponent tuples, so index 0
    is always the principal character and the indexing is stable.
    """

    def __init__(self, q: int, index: int):
        if q < 1 or q > 100:
            raise ValueError("modulus must be in 1..100")
        self.q = q
        self.index = index
        self._components = _character_components(q)
        sizes = [ord_ for (_, _, ord_) in self._components]
        total = 1
        for s in sizes:
            total *= s
        if not 0 <= index < total:
            raise ValueError(f"character index {index} out of range 0..{total - 1}")
        # decode index -> exponent per component (last component fastest)
        exps = []
        rem = index
        for s in reversed(sizes):
            exps.append(rem % s)
            rem //= s
        self.exponents = tuple(reversed(exps))
        self._table = self._build_table()

    def _build_table(self) -> np.ndarray:
        q = self.q
        tab = np.zeros(q, dtype=complex)
        for n in range(q):
            if gcd(n, q) != 1:
                continue
            val = 1.0 + 0.0j
            for (pe, gens, ord_), c in zip(self._components, self.exponents):
                t = _component_dlog(n % pe, pe, gens)
                # gens is one generator for cyclic parts, a pair for 2^e >= 8
                if isinstance(gens, tuple):
                    # t = (t_minus, t_five); orders are (2, ord/2)
                    tm, tf = t
                    cm, cf = c // (ord_ // 2), c % (ord_ // 2)
                    val *= cmath.exp(2j * math.pi * (tm * cm) / 2.0)
                    val *= cmath.exp(2j * math.pi * (tf * cf) / (ord_ // 2))
                else:
                    val *= cmath.exp(2j * math.pi * (t * c) / ord_)
            tab[n] = val
        return tab

    def __call__(self, n: int) -> complex:
        return self._table[n % self.q]

    @property
    def is_principal(self) -> bool:
        return all(c == 0 for c in self.exponents)

    def conductor(self) -> int:
        cond = 1
        for (pe, gens, ord_), c in zip(self._components, self.exponents):
            p = _base_prime(pe)
            e = _valuation(pe, p)
            if isinstance(gens, tuple):
                cm, cf = c // (ord_ // 2), c % (ord_ // 2)
                if cf != 0:
                    cond *= 2 ** (e - _valuation_int(cf, 2, cap=e))
                elif cm != 0:
                    cond *= 4
            else:
                if c == 0:
                    continue
                if p == 2:
                    cond *= 4  # the (Z/4)* component
                else:
                    m = ord_
                    # minimal f with p^{e-f} | c
                    v = 0
                    cc = c
                    while cc % p == 0 and v < e:
                        cc //= p
                        v += 1
                    f = max(e - v, 1)
                    cond *= p**f
        return cond

    @property
    def is_primitive(self) -> bool:
        return self.conductor() == self.q

    @property
    def parity(self) -> int:
        """0 for even (chi(-1)=1), 1 for odd."""
        val = self((-1) % self.q)
        return 0 if abs(val - 1.0) < 1e-9 else 1

    def gauss_sum(self) -> complex:
        q = self.q
        return sum(
            self._table[a] * cmath.exp(2j * math.pi * a / q) for a in range(1, q)
        )

    def root_number(self) -> complex:
        a = self.parity
        tau = self.gauss_sum()
        return tau / (1j**a * math.sqrt(self.q))


def _base_prime(pe: int) -> int:
    for p in (2, 3, 5, 7):
        if pe % p == 0:
            return p
    p = 2
    while pe % p != 0:
        p += 1
    return p


def _valuation(pe: int, p: int) -> int:
    v = 0
    while pe % p == 0:
        pe //= p
        v += 1
    return v


def _valuation_int(c: int, p: int, cap: int) -> int:
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


def _character_components(q: int):
    """[(p^e, generator(s), component order)] for the CRT split of (Z/q)*."""
    comps = []
    for p, e in sorted(nt.factorint(q).items()):
        pe = p**e
        if p == 2:
            if e == 1:
                continue  # trivial group
            if e == 2:
                comps.append((4, 3, 2))
            else:
                comps.append((pe, (-1 % pe, 5), 2 ** (e - 1)))
        else:
            g = nt.primitive_root(pe)
            comps.append((pe, g, pe // p * (p - 1)))
    return comps


def _component_dlog(n: int, pe: int, gens):
    """Discrete log of n in the component group (brute force; q <= 100)."""
    if isinstance(gens, tuple):
        gm, gf = gens
        # group = <-1> x <5>; orders 2 and pe/4
        of = pe // 4
        for tm in range(2):
            acc = pow(gm, tm, pe)
            for tf in range(of):
                if acc == n % pe:
                    return (tm, tf)
                acc = acc * gf % pe
        raise ArithmeticError(f"dlog failure for {n} mod {pe}")
    g = gens
    acc = 1
    t = 0
    target = n % pe
    while t <= pe:
        if acc == target:
            return t
        acc = acc * g % pe
        t += 1
    raise ArithmeticError(f"dlog failure for {n} mod {pe}")


def kronecker_chi(D: int, n: int) -> int:
    """Quadratic character chi_D(n) attached to a fundamental discriminant."""
    if n <= 0:
        raise ValueError("n must be positive")
    out = 1
    m = n
    while m % 2 == 0:
        m //= 2
        if D % 2 == 0:
            return 0
        rem = D % 8
        out *= 1 if rem in (1, 7) else -1
    if m == 1:
        return out
    # odd part via the Jacobi symbol
    out *= int(_jacobi(D % m, m))
    return out


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in nt.factorint(n).values())


# ---------------------------------------------------------------------------
# built-in instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A named Selberg-class instance: data plus a coefficient source.

    Exactly one of `roots` (local Euler roots, by prime) and `fixed_a`
    (a literal a_F(1..N) table) is set.
    """

    name: str
    data: SelbergData
    roots: Optional[Callable[[int], tuple]] = None
    fixed_a: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def euler_factor(self, p: int) -> EulerFactor:
        if self.roots is None:
            raise ValueError(f"instance {self.name} has no Euler-product source")
        return EulerFactor(p=p, roots=self.roots(p))


def builtin(spec: str) -> Instance:
    """Resolve an instance id: 'zeta', 'dirichlet:q:index', or
    'dedekind_quadratic:D'."""
    parts = spec.split(":")
    name = parts[0]
    if name == "zeta":
        data = SelbergData(
            Q=math.pi**-0.5, alpha=(Fraction(1, 2),), beta=(0.0,), omega=1.0, k_F=1
        )
        return Instance(name="zeta", data=data, roots=lambda p: (1.0,))
    if name == "dirichlet":
        if len(parts) != 3:
            raise ValueError("dirichlet instance id must be dirichlet:q:index")
        q, index = int(parts[1]), int(parts[2])
        chi = DirichletCharacter(q, index)
        if chi.is_principal:
            raise ValueError("principal character is not a primitive L-function")
        if not chi.is_primitive:
            raise ValueError(
                f"character {index} mod {q} has conductor {chi.conductor()} < {q}; "
                "use the primitive character of that conductor"
            )
        a = chi.parity
        data = SelbergData(
            Q=math.sqrt(q / math.pi),
            alpha=(Fraction(1, 2),),
            beta=(a / 2.0,),
            omega=chi.root_number(),
            k_F=0,
        )
        return Instance(
            name=spec,
            data=data,
            roots=lambda p: (chi(p),),
            meta={"q": q, "index": index, "parity": a},
        )
    if name == "dedekind_quadratic":
        if len(parts) != 2:
            raise ValueError("dedekind instance id must be dedekind_quadratic:D")
        D = int(parts[1])
        if not is_fundamental_discriminant(D):
            raise ValueError(f"{D} is not a fundamental discriminant")
        if D > 0:
            data = SelbergData(
                Q=math.sqrt(D) / math.pi,
                alpha=(Fraction(1, 2), Fraction(1, 2)),
                beta=(0.0, 0.0),
                omega=1.0,
                k_F=1,
            )
        else:
            data = SelbergData(
                Q=math.sqrt(-D) / (2.0 * math.pi),
                alpha=(Fraction(1),),
                beta=(0.0,),
                omega=1.0,
                k_F=1,
            )
        return Instance(
            name=spec,
            data=data,
            roots=lambda p: (1.0, float(kronecker_chi(D, p))),
            meta={"D": D},
        )
    raise ValueError(f"unknown instance {spec!r}")


def coefficient_table(instance: Instance, N: int) -> CoefficientTable:
    """a_F and b_F up to N for an instance (Euler product or literal table)."""
    if instance.fixed_a is not None:
        if len(instance.fixed_a) < N + 1:
            raise ValueError(
                f"instance {instance.name} carries only "
                f"{len(instance.fixed_a) - 1} coefficients, need {N}"
            )
        a = np.asarray(instance.fixed_a[: N + 1], dtype=complex)
    else:
        a = coefficients_from_euler(instance.euler_factor, N)
    b = dirichlet_inverse(a, N)
    return CoefficientTable(N=N, a=a, b=b)


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------


def load_instance_file(path: str) -> Instance:
    """Read a JSON instance file.

    Required fields: Q (real), alpha ([[m, n], ...]), beta ([[re, im], ...]),
    omega ([re, im]), k_F (int).  The coefficient source is either
    "euler": {"p": [[re, im], ...], ...} or "coefficients": [[re, im], ...]
    listing a_F(1), a_F(2), ... directly.
    """
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    for key in ("Q", "alpha", "beta", "omega", "k_F"):
        if key not in obj:
            raise ValueError(f"instance file missing field {key!r}")
    data = SelbergData(
        Q=float(obj["Q"]),
        alpha=tuple(Fraction(int(m), int(n)) for m, n in obj["alpha"]),
        beta=tuple(complex(re, im) for re, im in obj["beta"]),
        omega=complex(obj["omega"][0], obj["omega"][1]),
        k_F=int(obj["k_F"]),
    )
    name = obj.get("name", path)
    if "euler" in obj:
        table = {
            int(p): tuple(complex(re, im) for re, im in roots)
            for p, roots in obj["euler"].items()
        }

        def roots_fn(p: int, _table=table):
            try:
                return _table[p]
            except KeyError as exc:
                raise ValueError(f"instance file lacks Euler factor for p={p}") from exc

        return Instance(name=name, data=data, roots=roots_fn)
    if "coefficients" in obj:
        coeffs = obj["coefficients"]
        a = np.zeros(len(coeffs) + 1, dtype=complex)
        for i, c in enumerate(coeffs, start=1):
            a[i] = complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c)
        return Instance(name=name, data=data, fixed_a=a)
    raise ValueError("instance file needs either 'euler' or 'coefficients'")
