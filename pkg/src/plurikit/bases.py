"""Index sets, the projection Pi, and the monomial / descending bases of the
spaces of pluriharmonic polynomials of a fixed bidegree.

Multi-indices are tuples of row tuples.  Everything is computed
symbolically in kappa and cached; a rational ``kappa`` argument checks the
excluded set first and then specializes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import linalg
from .errors import PoleAtKappa, SingularGram, SingularSystem
from .field import KAPPA, ONE, ZERO, K, KappaRational, desc_poch
from .poly import T, Ambient, Bidegree, Poly, t_monomial, tv
from .weyl import apply_D, apply_D_power, inner_product

MultiIndex = tuple  # tuple of n row tuples


# -- multi-index helpers --------------------------------------------------


def mi_zero(n: int) -> MultiIndex:
    return tuple((0,) * n for _ in range(n))


def mi_unit(n: int, i: int, j: int) -> MultiIndex:
    """e_ij with 1-based indices."""
    return tuple(tuple(1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)) for r in range(n))


def mi_add(nu: MultiIndex, i: int, j: int, by: int = 1) -> MultiIndex | None:
    rows = [list(r) for r in nu]
    rows[i - 1][j - 1] += by
    if rows[i - 1][j - 1] < 0:
        return None
    return tuple(tuple(r) for r in rows)


def mi_abs(nu: MultiIndex) -> int:
    return sum(sum(r) for r in nu)


def mi_transpose(nu: MultiIndex) -> MultiIndex:
    return tuple(zip(*nu)) if nu else nu


def mi_factorial(nu: MultiIndex) -> int:
    out = 1
    for r in nu:
        for e in r:
            for x in range(2, e + 1):
                out *= x
    return out


def mi_flatten(nu: MultiIndex) -> list:
    return [e for r in nu for e in r]


def mi_unflatten(flat, n: int) -> MultiIndex:
    flat = list(flat)
    if len(flat) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(flat)}")
    return tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))


def mi_bidegree(nu: MultiIndex) -> Bidegree:
    return Bidegree(tuple(sum(r) for r in nu), tuple(sum(c) for c in zip(*nu)))


def offdiag_flatten(nu: MultiIndex) -> tuple:
    """(nu_12, nu_13, nu_23, nu_21, nu_31, nu_32) for n = 3: upper then lower, row-major."""
    n = len(nu)
    upper = [nu[i][j] for i in range(n) for j in range(i + 1, n)]
    lower = [nu[i][j] for i in range(n) for j in range(i)]
    return tuple(upper + lower)


def offdiag_unflatten(flat, n: int) -> MultiIndex:
    flat = list(flat)
    rows = [[0] * n for _ in range(n)]
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)] + [(i, j) for i in range(n) for j in range(i)]
    if len(flat) != len(pos):
        raise ValueError(f"expected {len(pos)} entries, got {len(flat)}")
    for (i, j), e in zip(pos, flat):
        rows[i][j] = e
    return tuple(tuple(r) for r in rows)


# -- partitions -----------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be non-increasing")

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def block_of(self, i: int) -> int:
        """Block number of the 1-based index i."""
        acc = 0
        for s, p in enumerate(self.parts):
            acc += p
            if i <= acc:
                return s
        raise ValueError(f"index {i} outside partition of {self.n}")

    def in_blocks(self, i: int, j: int) -> bool:
        """(i, j) in I(n), the union of the diagonal index squares."""
        return self.block_of(i) == self.block_of(j)

    def block_pairs(self) -> list:
        n = self.n
        return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if self.in_blocks(i, j)]

    def is_trivial(self) -> bool:
        return all(p == 1 for p in self.parts)


def _as_bidegree(a, b=None) -> Bidegree:
    if isinstance(a, Bidegree):
        return a
    return Bidegree(tuple(a), tuple(b))


def _as_partition(partition, n: int) -> Partition:
    if partition is None:
        return Partition.trivial(n)
    if isinstance(partition, Partition):
        p = partition
    else:
        p = Partition(tuple(partition))
    if p.n != n:
        raise ValueError(f"partition {p.parts} does not sum to n = {n}")
    return p


# -- index sets -------------------------------------------------------------


def enumerate_N(bd: Bidegree, zero=lambda i, j: False) -> list:
    """All nu with row sums a and column sums b, row-major lexicographic.

    ``zero(i, j)`` (1-based) forces nu_ij = 0.
    """
    n = bd.n
    out: list = []
    rows: list = []

    def fill_row(r: int, col_left: list):
        if r == n:
            if not any(col_left):
                out.append(tuple(rows))
            return
        row: list = []

        def fill_entry(c: int, remaining: int):
            if c == n:
                if remaining == 0:
                    rows.append(tuple(row))
                    fill_row(r + 1, [col_left[k] - row[k] for k in range(n)])
                    rows.pop()
                return
            hi = 0 if zero(r + 1, c + 1) else min(remaining, col_left[c])
            for e in range(hi + 1):
                row.append(e)
                fill_entry(c + 1, remaining - e)
                row.pop()

        fill_entry(0, bd.a[r])

    if sum(bd.a) == sum(bd.b):
        fill_row(0, list(bd.b))
    return out


def enumerate_N0(a, b=None, partition=None) -> list:
    """N_0^n(a, b): nu in N(a, b) with nu_ij = 0 on I(n)."""
    bd = _as_bidegree(a, b)
    part = _as_partition(partition, bd.n)
    return enumerate_N(bd, part.in_blocks)


def all_bidegrees(n: int, d: int) -> Iterator[Bidegree]:
    """Every bidegree of total degree d in size n."""

    def comps(total, k):
        if k == 1:
            yield (total,)
            return
        for x in range(total, -1, -1):
            for rest in comps(total - x, k - 1):
                yield (x,) + rest

    for a in comps(d, n):
        for b in comps(d, n):
            yield Bidegree(a, b)


# -- excluded kappa ---------------------------------------------------------


def xi_set(bd: Bidegree) -> set:
    """Integers kappa at which the diagonal recursion degenerates."""
    out = set()
    for ai, bi in zip(bd.a, bd.b):
        if min(ai, bi) >= 1:
            out.update(range(2 - (ai + bi), 2 - max(ai, bi)))
    return out


def _check_kappa(kappa, excluded, what: str):
    if kappa is None:
        return
    q = Fraction(K(kappa).constant_value())
    hit = excluded(q.numerator) if callable(excluded) else q.numerator in excluded
    if q.denominator == 1 and hit:
        raise PoleAtKappa(f"kappa = {q} lies in the excluded set for {what}")


def _finish(p: Poly, kappa) -> Poly:
    return p if kappa is None else p.specialize(K(kappa).constant_value())


# -- projection -------------------------------------------------------------


def project_Pi(p: Poly, a=None, kappa=None) -> Poly:
    """Pi = prod_i sum_j (-1)^j t_ii^j D_ii^j / (j! (a_i+b_i+kappa-2)_j).

    ``a`` may be given as a Bidegree; otherwise each bihomogeneous component
    of p is projected with its own bidegree.
    """
    kap = KAPPA if kappa is None else K(kappa)
    if a is None:
        out = Poly.zero(p.ambient)
        for (ra, rb), comp in p.bidegree_split().items():
            out = out + _pi_component(comp, Bidegree(ra, rb), kap)
        return out
    return _pi_component(p, _as_bidegree(a), kap)


def _pi_component(p: Poly, bd: Bidegree, kap) -> Poly:
    n = p.ambient.n
    for i in range(1, n + 1):
        s = bd.a[i - 1] + bd.b[i - 1]
        tii = Poly.variable(tv(i, i), p.ambient)
        acc = p
        term = p
        tpow = Poly.const(1, p.ambient)
        for j in range(1, min(bd.a[i - 1], bd.b[i - 1]) + 1):
            term = apply_D(i, i, term, kap)
            if not term:
                break
            tpow = tpow * tii
            denom = desc_poch(kap + (s - 2), j) * _fact(j)
            if not denom:
                raise PoleAtKappa(f"(a_i+b_i+kappa-2)_{j} vanishes")
            acc = acc + (tpow * term).scale(K((-1) ** j) / denom)
        p = acc
    return p


def _fact(j: int) -> int:
    out = 1
    for x in range(2, j + 1):
        out *= x
    return out


# -- seed reconstruction ----------------------------------------------------


def reconstruct_from_seed(seed: dict, a=None, b=None, kappa=None, n: int | None = None) -> Poly:
    """The element of P_{a,b} whose coefficients on N_0(a, b) are ``seed``.

    Solves D_ii P = 0 coefficient by coefficient in increasing diagonal degree.
    """
    if a is None:
        if not seed:
            return Poly.zero(Ambient(n or 1))
        a = mi_bidegree(next(iter(seed)))
    bd = _as_bidegree(a, b)
    n = bd.n
    amb = Ambient(n)
    _check_kappa(kappa, xi_set(bd), "seed reconstruction")
    kap = KAPPA if kappa is None else K(kappa)
    coef: dict = {}
    for nu, c in seed.items():
        if any(nu[i][i] for i in range(n)):
            raise ValueError("seed must be supported on diagonal-free indices")
        if c:
            coef[nu] = K(c)
    if not coef:
        return Poly.zero(amb)
    diag = lambda nu: sum(nu[i][i] for i in range(n))
    todo = sorted((nu for nu in enumerate_N(bd) if diag(nu) > 0), key=lambda nu: (diag(nu), nu))
    for nu in todo:
        i = next(r for r in range(n) if nu[r][r])
        lam = mi_add(nu, i + 1, i + 1, -1)
        acc = ZERO
        for k in range(n):
            if k == i:
                continue
            for l in range(n):
                if l == i or not lam[k][l]:
                    continue
                mu = [list(r) for r in lam]
                mu[i][l] += 1
                mu[k][i] += 1
                mu[k][l] -= 1
                mu = tuple(tuple(r) for r in mu)
                cm = coef.get(mu)
                if cm:
                    acc = acc + cm * (mu[i][l] * mu[k][i])
        if acc:
            denom = kap + (bd.a[i] + bd.b[i] - nu[i][i] - 1)
            denom = denom * nu[i][i]
            if not denom:
                raise PoleAtKappa("kappa lies in the excluded set for seed reconstruction")
            coef[nu] = -acc / denom
    return Poly({t_monomial(nu): c for nu, c in coef.items()}, amb)


def seed_of(p: Poly, bd: Bidegree) -> dict:
    """Coefficients of p on N_0(a, b)."""
    out = {}
    for nu in enumerate_N0(bd):
        c = p.terms.get(t_monomial(nu))
        if c:
            out[nu] = c
    return out


# -- monomial basis ---------------------------------------------------------


@lru_cache(maxsize=None)
def _monomial_trivial(bd: Bidegree) -> tuple:
    return tuple((nu, project_Pi(Poly.t_power(nu), bd)) for nu in enumerate_N0(bd))


def monomial_basis(a, b=None, partition=None, kappa=None) -> dict:
    """{nu: P^M_nu} for nu in N_0(a, b) (trivial partition) or N_0^n(a, b).

    For a non-trivial partition the elements are corrected by the
    C = N_0 minus N_0^n directions so that every D_ij, (i, j) in I(n),
    annihilates them; the correction solves a Gram system.
    """
    bd = _as_bidegree(a, b)
    part = _as_partition(partition, bd.n)
    _check_kappa(kappa, xi_set(bd), "the monomial basis")
    base = {nu: _finish(p, kappa) for nu, p in _monomial_trivial(bd)}
    if part.is_trivial():
        return base
    if kappa is None:
        return dict(_monomial_partition(bd, part))
    return _partition_correct(base, bd, part, kappa)


@lru_cache(maxsize=None)
def _monomial_partition(bd: Bidegree, part: Partition) -> tuple:
    base = {nu: p for nu, p in _monomial_trivial(bd)}
    return tuple(_partition_correct(base, bd, part, None).items())


def _partition_correct(base: dict, bd: Bidegree, part: Partition, kappa) -> dict:
    keep = enumerate_N0(bd, partition=part)
    rest = [nu for nu in base if nu not in set(keep)]
    if not rest:
        return {nu: base[nu] for nu in keep}
    g = [[_pairing(base[xi], mu, kappa) for mu in rest] for xi in rest]
    rhs = [[-_pairing(base[xi], nu, kappa) for nu in keep] for xi in rest]
    try:
        sol = linalg.solve(g, rhs)
    except SingularSystem as exc:
        raise SingularGram(str(exc)) from None
    out = {}
    for col, nu in enumerate(keep):
        p = base[nu]
        for row, mu in enumerate(rest):
            c = sol[row][col]
            if c:
                p = p + base[mu].scale(c)
        out[nu] = p
    return out


def _pairing(p_mu: Poly, nu: MultiIndex, kappa) -> KappaRational:
    """(P^M_mu, P^M_nu) evaluated as the constant D^nu(P^M_mu)."""
    return apply_D_power(nu, p_mu, kappa).constant_term()


# -- descending basis -------------------------------------------------------


@lru_cache(maxsize=None)
def _descending_linear(bd: Bidegree) -> tuple:
    """P^D_nu for all nu in N_0(a, b), solved in monomial-basis coordinates."""
    n = bd.n
    idx = enumerate_N0(bd)
    if bd.degree == 0:
        return ((mi_zero(n), Poly.const(1, Ambient(n))),)
    basis = dict(_monomial_trivial(bd))
    rows: list = []
    rhs: list = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            lower = bd.shift(i, j)
            if lower is None:
                continue
            low_idx = enumerate_N0(lower)
            if not low_idx:
                continue
            low_basis = dict(_descending_linear(lower))
            images = {mu: apply_D(i, j, basis[mu]) for mu in idx}
            for xi in low_idx:
                m = t_monomial(xi)
                rows.append([images[mu].terms.get(m, ZERO) for mu in idx])
                row_rhs = []
                for nu in idx:
                    target = mi_add(nu, i, j, -1)
                    if target is None:
                        row_rhs.append(ZERO)
                    else:
                        row_rhs.append(low_basis[target].terms.get(m, ZERO))
                rhs.append(row_rhs)
    sol = linalg.solve(rows, rhs)
    out = []
    for col, nu in enumerate(idx):
        p = Poly.zero(Ambient(n))
        for row, mu in enumerate(idx):
            c = sol[row][col]
            if c:
                p = p + basis[mu].scale(c)
        out.append((nu, p))
    return tuple(out)


def descending_basis(a, b=None, partition=None, method: str = "linear_solve", kappa=None) -> dict:
    """{nu: P^D_nu} for nu in N_0^n(a, b) with D_ij P^D_nu = P^D_{nu - e_ij} (i != j)."""
    bd = _as_bidegree(a, b)
    part = _as_partition(partition, bd.n)
    n = bd.n
    _check_kappa(kappa, lambda k: k < n, "the descending basis")
    if method == "linear_solve":
        full = dict(_descending_linear(bd))
    elif method == "generating_function":
        from .genfun import descending_from_genfun

        full = descending_from_genfun(bd)
    else:
        raise ValueError(f"unknown method {method!r}")
    keep = enumerate_N0(bd, partition=part)
    return {nu: _finish(full[nu], kappa) for nu in keep}


def descending_element(nu: MultiIndex, kappa=None) -> Poly:
    return descending_basis(mi_bidegree(nu), kappa=kappa)[nu]


# -- Gram matrices ----------------------------------------------------------


def gram_matrix(left: dict, right: dict | None = None, kappa=None) -> list:
    """[(left_mu, right_nu)_kappa] via the inner product."""
    right = left if right is None else right
    return [[inner_product(p, q, kappa) for q in right.values()] for p in left.values()]


def gram_matrix_D(monomial: dict, kappa=None) -> list:
    """[(P^M_mu, P^M_nu)] via the constant D^nu(P^M_mu)."""
    return [[_pairing(p, nu, kappa) for nu in monomial] for p in monomial.values()]
