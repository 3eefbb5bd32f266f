"""Generating functions in the variables s_1, s_2, ... (deg s_a = a).

The pipeline G^(n) = J_{k-n}(s_n M_n) ... J_{k-2}(s_2 M_2) G^(1), the operators
L_p and M_n, closed forms for n = 2, 3, the substitution s_a -> sigma_a(X tT)
and the two-block symmetric generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import PoleAtKappa
from .field import KAPPA, ONE, ZERO, K, KappaRational, asc_poch
from .poly import S, T, U1, U2, V1, V2, X, Ambient, Bidegree, Poly, det, mono_from_dict, sv, tv

HALF = K(Fraction(1, 2))


# -- series ---------------------------------------------------------------


def s_weight(m) -> int:
    return sum(v[1] * e for v, e in m if v[0] == S)


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial in s_1, ..., s_nvars truncated at weighted degree max_weight.

    ``nvars = None`` means no s-variable is set to zero.
    """

    poly: Poly
    max_weight: int
    nvars: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "poly", self.poly.truncate(self.max_weight, s_weight))

    @classmethod
    def make(cls, terms: dict, max_weight: int, nvars: int | None = None) -> "TruncatedSeries":
        return cls(Poly(terms, Ambient(1)), max_weight, nvars)

    def with_poly(self, p: Poly) -> "TruncatedSeries":
        return TruncatedSeries(p, self.max_weight, self.nvars)

    def coefficient(self, exps) -> KappaRational:
        """Coefficient of s_1^e1 s_2^e2 ..."""
        m = mono_from_dict({sv(a + 1): e for a, e in enumerate(exps) if e})
        return self.poly.terms.get(m, ZERO)

    def weight_part(self, k: int) -> Poly:
        return self.poly._raw({m: c for m, c in self.poly.terms.items() if s_weight(m) == k})

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.with_poly(self.poly + other.poly)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.with_poly(self.poly - other.poly)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        w = min(self.max_weight, other.max_weight)
        return self.poly.truncate(w, s_weight) == other.poly.truncate(w, s_weight)

    def is_zero(self) -> bool:
        return not self.poly

    def to_json(self) -> dict:
        return {"max_weight": self.max_weight, "nvars": self.nvars, "series": self.poly.to_json()}


# -- epsilon tables ---------------------------------------------------------


def epsilon(m: int) -> int:
    return 1 if m >= 0 else 0


def eps_plus(a: int, b: int, m: int) -> int:
    if a >= m and b >= m:
        return 1
    if a < m and b < m:
        return -1
    return 0


def eps_minus(a: int, b: int, m: int) -> int:
    if b < m <= a:
        return 1
    if a < m <= b:
        return -1
    return 0


# -- operators on series ----------------------------------------------------


def _s_poly(c: int, nvars, amb) -> Poly | None:
    """s_c as a polynomial, with s_0 = 1; None when it vanishes."""
    if c < 0 or (nvars is not None and c > nvars):
        return None
    if c == 0:
        return Poly.const(1, amb)
    return Poly.variable(sv(c), amb)


def _indices(p: Poly) -> set:
    return {v[1] for m in p.terms for v, _ in m if v[0] == S}


def _second_order(f: TruncatedSeries, pairs, kappa) -> Poly:
    """sum over (coeff, c, a, b) of coeff * s_c d_a d_b f."""
    amb = f.poly.ambient
    out = Poly.zero(amb)
    first: dict = {}
    for coeff, c, a, b in pairs:
        sc = _s_poly(c, f.nvars, amb)
        if sc is None:
            continue
        if a not in first:
            first[a] = f.poly.partial(sv(a))
        da = first[a]
        if not da:
            continue
        dab = da.partial(sv(b))
        if dab:
            out = out + (sc * dab).scale(coeff)
    return out


def apply_Lp(p: int, f: TruncatedSeries, kappa=None) -> TruncatedSeries:
    """L_p = (kappa+1-p) d_p + sum_{a,b>=1} eps+_{a,b}(p) s_{a+b-p} d_a d_b."""
    if p < 1:
        raise ValueError("p must be >= 1")
    kap = KAPPA if kappa is None else K(kappa)
    out = f.poly.partial(sv(p)).scale(kap + (1 - p))
    present = sorted(_indices(f.poly))
    pairs = []
    for a in present:
        for b in present:
            e = eps_plus(a, b, p)
            if e:
                pairs.append((e, a + b - p, a, b))
    out = out + _second_order(f, pairs, kap)
    return f.with_poly(out)


def apply_Mn(n: int, f: TruncatedSeries) -> TruncatedSeries:
    """M_n = sum over ordered pairs 0 < a, b < n with a + b >= n of s_{a+b-n} d_a d_b."""
    if n < 2:
        raise ValueError("n must be >= 2")
    pairs = [(1, a + b - n, a, b) for a in range(1, n) for b in range(1, n) if a + b >= n]
    return f.with_poly(_second_order(f, pairs, None))


def apply_J(nu, n: int, f: TruncatedSeries, kappa=None) -> TruncatedSeries:
    """J_nu(s_n M_n) f = sum_r (s_n M_n)^r f / (r! (nu+1)^(r)), truncated."""
    nu = K(nu)
    if kappa is not None and not nu.is_constant():
        nu = nu.specialize(K(kappa).constant_value())
    amb = f.poly.ambient
    sn = Poly.variable(sv(n), amb)
    out = f.poly
    term = f
    r = 0
    fact = 1
    while True:
        r += 1
        fact *= r
        nxt = apply_Mn(n, term).poly * sn
        term = f.with_poly(nxt)
        if term.is_zero():
            break
        denom = asc_poch(nu + 1, r) * fact
        if not denom:
            raise PoleAtKappa(f"({nu}+1)^({r}) vanishes")
        out = out + term.poly.scale(denom.inverse())
    return f.with_poly(out)


def build_G(n: int, G1: TruncatedSeries, max_weight: int | None = None, kappa=None) -> TruncatedSeries:
    """G^(n) from the seed G^(1)."""
    w = G1.max_weight if max_weight is None else max_weight
    g = TruncatedSeries(G1.poly, w, n)
    kap = KAPPA if kappa is None else K(kappa)
    for m in range(2, n + 1):
        g = apply_J(kap - m, m, g)
    return g


# -- seeds and normalizations -----------------------------------------------


def seed_A(max_weight: int, kappa=None) -> TruncatedSeries:
    """sum_a (kappa-1)^(a) s_1^a / a!."""
    kap = KAPPA if kappa is None else K(kappa)
    terms = {}
    fact = 1
    for a in range(max_weight + 1):
        if a:
            fact *= a
        terms[mono_from_dict({sv(1): a}) if a else ()] = asc_poch(kap - 1, a) / fact
    return TruncatedSeries.make(terms, max_weight, 1)


def seed_B(max_weight: int, kappa=None) -> TruncatedSeries:
    """(1 - s_1/2)^(3 - 2 kappa) = sum_a (2 kappa - 3)^(a) (s_1/2)^a / a!."""
    kap = KAPPA if kappa is None else K(kappa)
    terms = {}
    fact = 1
    for a in range(max_weight + 1):
        if a:
            fact *= a
        terms[mono_from_dict({sv(1): a}) if a else ()] = asc_poch(2 * kap - 3, a) / (fact * 2**a)
    return TruncatedSeries.make(terms, max_weight, 1)


SEEDS = {"A": seed_A, "B": seed_B}


def l1_constants(G1: TruncatedSeries, d: int, kappa=None) -> list:
    """[c_1, ..., c_d] with L_1(G_k) = c_k G_{k-1}.

    On s_2 = s_3 = ... = 0, L_1 reduces to kappa d_1 + s_1 d_1^2, so
    c_k = k (kappa+k-1) g_k / g_{k-1} for G^(1) = sum g_k s_1^k.
    """
    kap = KAPPA if kappa is None else K(kappa)
    g = [G1.coefficient([k]) for k in range(d + 1)]
    out = []
    for k in range(1, d + 1):
        if not g[k - 1]:
            raise PoleAtKappa(f"seed coefficient g_{k - 1} vanishes")
        out.append((kap + (k - 1)) * k * g[k] / g[k - 1])
    return out


def normalization(G1: TruncatedSeries, d: int, kappa=None) -> KappaRational:
    """N_d = c_1 ... c_d, so that P^D_nu = P_nu / N_|nu|."""
    out = ONE
    for c in l1_constants(G1, d, kappa):
        out = out * c
    return out


def g3_coefficient(a: int, b: int, c: int, kappa=None) -> KappaRational:
    """A_{a,b,c} = (a+2b+3c+2k-3)^(c) / (k-2)^(c) * (b+2c+k-1)^(a+b+c)."""
    if min(a, b, c) < 0:
        raise ValueError("indices must be non-negative")
    kap = KAPPA if kappa is None else K(kappa)
    den = asc_poch(kap - 2, c)
    if not den:
        raise PoleAtKappa("(kappa-2)^(c) vanishes")
    return asc_poch(2 * kap + (a + 2 * b + 3 * c - 3), c) / den * asc_poch(kap + (b + 2 * c - 1), a + b + c)


def g2_closed_form(max_weight: int, kappa=None) -> TruncatedSeries:
    """((1 - s_1/2)^2 - s_2)^(-(kappa - 3/2)) expanded as sum_r (alpha)^(r)/r! h^r."""
    kap = KAPPA if kappa is None else K(kappa)
    amb = Ambient(1)
    s1 = Poly.variable(sv(1), amb)
    s2 = Poly.variable(sv(2), amb)
    h = s1 - (s1 * s1).scale(K(Fraction(1, 4))) + s2
    alpha = kap - Fraction(3, 2)
    out = Poly.const(1, amb)
    hp = Poly.const(1, amb)
    fact = 1
    for r in range(1, max_weight + 1):
        fact *= r
        hp = (hp * h).truncate(max_weight, s_weight)
        out = out + hp.scale(asc_poch(alpha, r) / fact)
    return TruncatedSeries(out, max_weight, 2)


def g3_closed_form(max_weight: int, kappa=None) -> TruncatedSeries:
    terms = {}
    for c in range(max_weight // 3 + 1):
        for b in range((max_weight - 3 * c) // 2 + 1):
            for a in range(max_weight - 3 * c - 2 * b + 1):
                m = mono_from_dict({sv(1): a, sv(2): b, sv(3): c})
                terms[m] = g3_coefficient(a, b, c, kappa) / (_fact(a) * _fact(b) * _fact(c))
    return TruncatedSeries.make(terms, max_weight, 3)


def _fact(k: int) -> int:
    out = 1
    for x in range(2, k + 1):
        out *= x
    return out


# -- sigma and substitution -------------------------------------------------


def x_zero(n: int, partition=None, full: bool = False):
    """Predicate for X entries forced to zero (diagonal blocks)."""
    if full:
        return lambda i, j: False
    from .bases import _as_partition

    part = _as_partition(partition, n)
    return part.in_blocks


@lru_cache(maxsize=None)
def _sigma_all(n: int, parts: tuple, full: bool) -> tuple:
    amb = Ambient(n)
    zero = x_zero(n, parts, full)
    # M = X tT, M_ab = sum_c x_ac t_bc
    M = [[Poly.zero(amb) for _ in range(n)] for _ in range(n)]
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            acc = Poly.zero(amb)
            for c in range(1, n + 1):
                if not zero(a, c):
                    acc = acc + Poly.variable((X, a, c), amb) * Poly.variable(tv(b, c), amb)
            M[a - 1][b - 1] = acc
    out = [Poly.const(1, amb)]
    for i in range(1, n + 1):
        acc = Poly.zero(amb)
        for S_ in combinations(range(n), i):
            acc = acc + det([[M[r][c] for c in S_] for r in S_])
        out.append(acc)
    return tuple(out)


def sigma(n: int, i: int, partition=None, full: bool = False) -> Poly:
    """sigma_i(X tT): sum of i x i principal minors of X tT."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    parts = tuple(partition.parts) if hasattr(partition, "parts") else (tuple(partition) if partition else (1,) * n)
    return _sigma_all(n, parts, full)[i]


def substitute_sigma(G: TruncatedSeries, n: int, partition=None, full: bool = False, degree: int | None = None) -> Poly:
    """G~(X, T) = G(sigma_1, ..., sigma_n, 0, ...), optionally only the weight-``degree`` part."""
    amb = Ambient(n)
    sig = [sigma(n, i, partition, full) for i in range(n + 1)]
    powers: dict = {}

    def pw(a, e):
        if (a, e) not in powers:
            powers[(a, e)] = sig[a] ** e
        return powers[(a, e)]

    acc: dict = {}
    for m, c in G.poly.terms.items():
        if degree is not None and s_weight(m) != degree:
            continue
        if any(v[1] > n for v, _ in m):
            continue
        term = Poly({(): c}, amb)
        for v, e in m:
            term = term * pw(v[1], e)
            if not term:
                break
        for tm, tc in term.terms.items():
            acc[tm] = acc[tm] + tc if tm in acc else tc
    return Poly(acc, amb)


def substitute_and_extract(G: TruncatedSeries, n: int, partition=None, max_total_degree: int | None = None,
                           full: bool = False, degree: int | None = None) -> dict:
    """{nu: P_nu(T)} where G~(X, T) = sum_nu P_nu(T) X^nu (unnormalized)."""
    out: dict = {}
    degrees = [degree] if degree is not None else range((max_total_degree if max_total_degree is not None else G.max_weight) + 1)
    for d in degrees:
        p = substitute_sigma(G, n, partition, full, d)
        for xm, coeff in p.collect(X).items():
            rows = [[0] * n for _ in range(n)]
            for v, e in xm:
                rows[v[1] - 1][v[2] - 1] = e
            out[tuple(tuple(r) for r in rows)] = coeff
    return out


@lru_cache(maxsize=None)
def _extract_cached(n: int, d: int, seed: str, full: bool) -> dict:
    G = build_G(n, SEEDS[seed](d), d)
    return substitute_and_extract(G, n, None, full=full, degree=d)


def descending_from_genfun(bd: Bidegree, seed: str = "A", full: bool = False) -> dict:
    """P^D_nu = P_nu / N_|nu| for nu in N_0(a, b) (or all of N(a, b) with ``full``)."""
    from .bases import enumerate_N, enumerate_N0

    n, d = bd.n, bd.degree
    idx = enumerate_N(bd) if full else enumerate_N0(bd)
    if d == 0:
        return {nu: Poly.const(1, Ambient(n)) for nu in idx}
    raw = _extract_cached(n, d, seed, full)
    norm = normalization(SEEDS[seed](d), d)
    amb = Ambient(n)
    return {nu: raw.get(nu, Poly.zero(amb)).scale(norm.inverse()) for nu in idx}


# -- the two-block symmetric generator --------------------------------------


def uv_degree(m) -> int:
    return sum(e for v, e in m if v[0] in (U1, U2, V1, V2))


def build_symmetric_G(n1: int, n2: int, max_degree: int, kappa=None) -> Poly:
    """f^(-(kappa-3/2)) truncated at total (u, v)-degree, with
    f = 1 - tau12 - tau21 + (tau12 - tau21)^2 / 4 + tau11 tau22."""
    if not n1 >= n2 >= 1:
        raise ValueError("need n1 >= n2 >= 1")
    kap = KAPPA if kappa is None else K(kappa)
    n = n1 + n2
    amb = Ambient(n)
    t = lambda i, j: Poly.variable(tv(i, j), amb)
    u1 = lambda i: Poly.variable((U1, 1, i), amb)
    u2 = lambda i: Poly.variable((U2, 1, i), amb)
    v1 = lambda j: Poly.variable((V1, 1, j), amb)
    v2 = lambda j: Poly.variable((V2, 1, j), amb)
    zero = Poly.zero(amb)
    tau11 = sum((t(i, j) * u1(i) * u2(j) for i in range(1, n1 + 1) for j in range(1, n1 + 1)), zero)
    tau22 = sum((t(n1 + i, n1 + j) * v1(i) * v2(j) for i in range(1, n2 + 1) for j in range(1, n2 + 1)), zero)
    tau12 = sum((t(i, n1 + j) * u1(i) * v2(j) for i in range(1, n1 + 1) for j in range(1, n2 + 1)), zero)
    tau21 = sum((t(n1 + j, i) * v1(j) * u2(i) for i in range(1, n1 + 1) for j in range(1, n2 + 1)), zero)
    diff = tau12 - tau21
    h = tau12 + tau21 - (diff * diff).scale(K(Fraction(1, 4))) - tau11 * tau22
    h = h.truncate(max_degree, uv_degree)
    alpha = kap - Fraction(3, 2)
    out = Poly.const(1, amb)
    hp = Poly.const(1, amb)
    fact = 1
    for r in range(1, max_degree // 2 + 1):
        fact *= r
        hp = (hp * h).truncate(max_degree, uv_degree)
        if not hp:
            break
        out = out + hp.scale(asc_poch(alpha, r) / fact)
    return out


# -- commutation ------------------------------------------------------------


def weight_monomials(max_weight: int, nvars: int | None = None) -> list:
    """All s-monomials of weighted degree <= max_weight."""
    top = max_weight if nvars is None else min(nvars, max_weight)
    out = []

    def rec(a: int, left: int, acc: dict):
        if a > top:
            out.append(mono_from_dict(acc))
            return
        for e in range(left // a + 1):
            if e:
                acc[sv(a)] = e
            rec(a + 1, left - a * e, acc)
            acc.pop(sv(a), None)

    rec(1, max_weight, {})
    return out


def commutator_lhs(p: int, q: int, f: TruncatedSeries) -> TruncatedSeries:
    return apply_Lp(p, apply_Lp(q, f)) - apply_Lp(q, apply_Lp(p, f))


def commutator_rhs(p: int, q: int, f: TruncatedSeries, coeff: int = 2) -> TruncatedSeries:
    """coeff * sum_{a+b=p+q} eps-_{p,q}(b) d_a L_b f.

    ``coeff = 2`` is the identity that holds; the printed form has -1.
    """
    out = f.with_poly(Poly.zero(f.poly.ambient))
    for b in range(1, p + q):
        a = p + q - b
        e = eps_minus(p, q, b)
        if e:
            lb = apply_Lp(b, f).poly.partial(sv(a))
            out = out + f.with_poly(lb.scale(coeff * e))
    return out


def check_commutation(p: int, q: int, max_weight: int, coeff: int = 2) -> bool:
    """[L_p, L_q] = coeff * sum_{a+b=p+q} eps-_{p,q}(b) d_a L_b on every monomial of weight <= max_weight."""
    for m in weight_monomials(max_weight):
        f = TruncatedSeries(Poly({m: ONE}, Ambient(1)), max_weight, None)
        if commutator_lhs(p, q, f) != commutator_rhs(p, q, f, coeff):
            return False
    return True
