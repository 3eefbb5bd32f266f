"""Operators on C[T]: mixed Laplacians, E / E' / F, the functional e_kappa,
the inner product, adjoint checks and compatibility with the (X, Y) picture.

Every operator takes an optional ``kappa``; the default is the formal
parameter, a rational value gives the specialized operator.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .errors import NonTVariable
from .field import KAPPA, ONE, ZERO, K, KappaRational
from .poly import T, X, Y, Ambient, Poly, mono_from_dict, tv

HALF = K(Fraction(1, 2))


def _as_kappa(kappa) -> KappaRational:
    return KAPPA if kappa is None else K(kappa)


def _accumulate(out: dict, m, c):
    if m in out:
        out[m] = out[m] + c
    else:
        out[m] = c


def apply_D(i: int, j: int, p: Poly, kappa=None) -> Poly:
    """D_ij = kappa d_ij + sum_{k,l} t_kl d_il d_kj."""
    kappa = _as_kappa(kappa)
    n = p.ambient.n
    out: dict = {}
    for m, c in p.terms.items():
        e = dict(m)
        eij = e.get((T, i, j), 0)
        if eij:
            d = dict(e)
            d[(T, i, j)] -= 1
            _accumulate(out, mono_from_dict(d), c * (kappa * eij))
        for l in range(1, n + 1):
            eil = e.get((T, i, l), 0)
            if not eil:
                continue
            for k in range(1, n + 1):
                ekj = e.get((T, k, j), 0)
                if (k, j) == (i, l):
                    coef = eil * (eil - 1)
                else:
                    coef = eil * ekj
                if not coef:
                    continue
                d = dict(e)
                d[(T, i, l)] -= 1
                d[(T, k, j)] -= 1
                d[(T, k, l)] = d.get((T, k, l), 0) + 1
                _accumulate(out, mono_from_dict(d), c * coef)
    return Poly({m: c for m, c in out.items() if c}, p.ambient)


def apply_E(i: int, j: int, p: Poly, kappa=None) -> Poly:
    """E_ij = sum_s t_is d_js + (kappa/2) delta_ij."""
    n = p.ambient.n
    out = Poly.zero(p.ambient)
    for s in range(1, n + 1):
        d = p.partial(tv(j, s))
        if d:
            out = out + Poly.variable(tv(i, s), p.ambient) * d
    if i == j:
        out = out + p.scale(_as_kappa(kappa) * HALF)
    return out


def apply_Eprime(i: int, j: int, p: Poly, kappa=None) -> Poly:
    """E'_ij = sum_s t_si d_sj + (kappa/2) delta_ij."""
    n = p.ambient.n
    out = Poly.zero(p.ambient)
    for s in range(1, n + 1):
        d = p.partial(tv(s, j))
        if d:
            out = out + Poly.variable(tv(s, i), p.ambient) * d
    if i == j:
        out = out + p.scale(_as_kappa(kappa) * HALF)
    return out


def apply_F(i: int, j: int, p: Poly, kappa=None) -> Poly:
    return Poly.variable(tv(i, j), p.ambient) * p


OPERATORS = {"D": apply_D, "E": apply_E, "Eprime": apply_Eprime, "F": apply_F}


def apply_op(kind: str, i: int, j: int, p: Poly, kappa=None) -> Poly:
    return OPERATORS[kind](i, j, p, kappa)


def apply_D_power(nu, p: Poly, kappa=None) -> Poly:
    """D^nu = prod D_ij^{nu_ij} (the D_ij commute)."""
    for i, row in enumerate(nu):
        for j, e in enumerate(row):
            for _ in range(e):
                p = apply_D(i + 1, j + 1, p, kappa)
                if not p:
                    return p
    return p


# -- the functional e_kappa ---------------------------------------------

Chooser = Callable[[tuple], tuple]


def _least(m):
    return m[0][0]


def _greatest(m):
    return m[-1][0]


_E_CACHE: dict = {}


def e_kappa(p: Poly, kappa=None, order: str | Chooser | random.Random = "least") -> KappaRational:
    """(P, 1)_kappa computed by the rewriting e(t_ij Q) = e((D_ji + kappa delta_ij) Q).

    ``order`` selects which variable is peeled off first: ``"least"``
    (default, memoized), ``"greatest"``, a callable on monomials, or a
    ``random.Random`` for a randomized order.
    """
    kappa = _as_kappa(kappa)
    if order == "least":
        chooser, cache = _least, _E_CACHE.setdefault((p.ambient.n, kappa), {})
    elif order == "greatest":
        chooser, cache = _greatest, {}
    elif isinstance(order, random.Random):
        rng = order
        chooser, cache = (lambda m: rng.choice(m)[0]), {}
    else:
        chooser, cache = order, {}
    total = ZERO
    for m, c in p.terms.items():
        total = total + c * _e_mono(m, p.ambient, kappa, chooser, cache)
    return total


def _e_mono(m, ambient: Ambient, kappa, chooser, cache) -> KappaRational:
    if not m:
        return ONE
    hit = cache.get(m)
    if hit is not None:
        return hit
    v = chooser(m)
    if v[0] != T:
        raise NonTVariable("e_kappa is defined on T-polynomials only")
    _, i, j = v
    d = dict(m)
    d[v] -= 1
    q = Poly({mono_from_dict(d): ONE}, ambient)
    r = apply_D(j, i, q, kappa)
    if i == j:
        r = r + q.scale(kappa)
    val = ZERO
    for m2, c2 in r.terms.items():
        val = val + c2 * _e_mono(m2, ambient, kappa, chooser, cache)
    cache[m] = val
    return val


def theta(p: Poly) -> Poly:
    """Transpose every T-index; complex conjugation is trivial over Q(kappa)."""
    return p.transpose_t()


def inner_product(p: Poly, q: Poly, kappa=None) -> KappaRational:
    """(P, Q)_kappa = e_kappa(P * theta Q)."""
    return e_kappa(p * theta(q), kappa)


# -- adjoints -----------------------------------------------------------


def adjoint(kind: str, i: int, j: int, q: Poly, kappa=None) -> Poly:
    """Apply Op* with D* = D_ji - E_ij - E'_ji + F_ij, E* = -E'_ij + F_ji,
    E'* = -E_ij + F_ij, F* = F_ji."""
    if kind == "D":
        return (
            apply_D(j, i, q, kappa)
            - apply_E(i, j, q, kappa)
            - apply_Eprime(j, i, q, kappa)
            + apply_F(i, j, q)
        )
    if kind == "E":
        return -apply_Eprime(i, j, q, kappa) + apply_F(j, i, q)
    if kind == "Eprime":
        return -apply_E(i, j, q, kappa) + apply_F(i, j, q)
    if kind == "F":
        return apply_F(j, i, q)
    raise ValueError(f"unknown operator kind {kind!r}")


def check_adjoint(kind: str, i: int, j: int, p: Poly, q: Poly, kappa=None) -> bool:
    lhs = inner_product(apply_op(kind, i, j, p, kappa), q, kappa)
    rhs = inner_product(p, adjoint(kind, i, j, q, kappa), kappa)
    return lhs == rhs


# -- the (X, Y) picture ---------------------------------------------------


def tilde(p: Poly, kappa_cols: int) -> Poly:
    """P~(X, Y) = P(X tY) with X, Y of shape n x kappa_cols."""
    n = p.ambient.n
    amb = Ambient(n, kappa_cols)
    assignment = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = Poly.zero(amb)
            for s in range(1, kappa_cols + 1):
                acc = acc + Poly.variable((X, i, s), amb) * Poly.variable((Y, j, s), amb)
            assignment[tv(i, j)] = acc
    return p.substitute(assignment, amb)


def mixed_laplacian_xy(i: int, j: int, f: Poly) -> Poly:
    """Delta_ij = sum_s d^2 / dx_is dy_js."""
    out = Poly.zero(f.ambient)
    for s in range(1, f.ambient.kappa_cols + 1):
        out = out + f.partial((X, i, s)).partial((Y, j, s))
    return out


def tilde_compat_check(p: Poly, n: int | None = None, kappa_int: int = 1) -> bool:
    """True iff Delta_ij (P~) == (D_ij P)~ for all i, j at kappa = kappa_int."""
    if kappa_int < 1:
        raise ValueError("kappa_int must be a positive integer")
    n = p.ambient.n if n is None else n
    ps = p.specialize(kappa_int)
    pt = tilde(ps, kappa_int)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lhs = mixed_laplacian_xy(i, j, pt)
            rhs = tilde(apply_D(i, j, ps, kappa_int), kappa_int)
            if lhs != rhs:
                return False
    return True
