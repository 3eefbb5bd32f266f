"""The map phi_kappa and its inverse, the two-block differential operator
construction and the explicit pullback constants.

Conventions: phi_kappa(P)(T) = (-1)^d P(d_W) det(I - W T)^(-kappa) |_{W=0},
so t_ij pairs with w_ij and phi_kappa(t_ij) = -kappa t_ji.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bases import mi_bidegree, mi_factorial, mi_transpose
from .errors import NonHomogeneous, PoleAtS, ZeroPochhammer
from .field import KAPPA, ONE, K, KappaRational, desc_poch
from .genfun import descending_from_genfun
from .poly import T, U1, U2, V1, V2, W, Ambient, Poly, det, mono_from_dict, tv
from .weyl import apply_D

# -- phi_kappa -------------------------------------------------------------


def _kap(kappa) -> KappaRational:
    return KAPPA if kappa is None else K(kappa)


def _degree(p: Poly, d: int | None) -> int:
    if not p:
        return 0 if d is None else d
    if not p.is_homogeneous():
        raise NonHomogeneous("phi_kappa needs a homogeneous polynomial")
    deg = p.total_degree()
    if d is not None and d != deg:
        raise NonHomogeneous(f"degree {deg} != declared degree {d}")
    return deg


@lru_cache(maxsize=None)
def det_power_part(n: int, d: int, kappa: KappaRational) -> dict:
    """Degree-d part of det(I - W T)^(-kappa), collected by W-monomial.

    Uses det(I - A)^(-kappa) = exp(kappa sum_r tr(A^r)/r), i.e.
    k E_k = kappa sum_{j=1}^k tr(A^j) E_{k-j}.
    """
    amb = Ambient(n)
    A = [[sum((Poly.variable((W, i, s), amb) * Poly.variable(tv(s, j), amb) for s in range(1, n + 1)),
              Poly.zero(amb)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    traces = []
    power = A
    for _ in range(d):
        traces.append(sum((power[i][i] for i in range(n)), Poly.zero(amb)))
        power = [[sum((power[i][s] * A[s][j] for s in range(n)), Poly.zero(amb)) for j in range(n)] for i in range(n)]
    E = [Poly.const(1, amb)]
    for k in range(1, d + 1):
        acc = Poly.zero(amb)
        for j in range(1, k + 1):
            acc = acc + traces[j - 1] * E[k - j]
        E.append(acc.scale(kappa / k))
    return E[d].collect(W)


def phi_kappa(p: Poly, d: int | None = None, kappa=None) -> Poly:
    d = _degree(p, d)
    n = p.ambient.n
    table = det_power_part(n, d, _kap(kappa))
    out = Poly.zero(Ambient(n))
    for m, c in p.terms.items():
        wm = mono_from_dict({(W, v[1], v[2]): e for v, e in m})
        coeff = table.get(wm)
        if coeff is None:
            continue
        fact = math.prod(math.factorial(e) for _, e in m)
        out = out + coeff.scale(c * fact)
    return out if d % 2 == 0 else -out


def check_phi_derivative_identity(p: Poly, i: int, j: int, kappa=None) -> bool:
    """phi(D_ij P) == -d phi(P) / d t_ji."""
    d = _degree(p, None)
    lhs = phi_kappa(apply_D(i, j, p, kappa), max(d - 1, 0), kappa) if d else Poly.zero(p.ambient)
    rhs = -phi_kappa(p, d, kappa).partial(tv(j, i))
    return lhs == rhs


def phi_inverse(q: Poly, d: int | None = None, seed: str = "A", kappa=None) -> Poly:
    """The homogeneous P with phi_kappa(P) = q.

    From phi(P^D_nu) = (-1)^|nu| (tT)^nu / nu!, P = (-1)^d sum q_mu mu! P^D_{t mu};
    P^D comes from the generating function G^(n) for ``seed`` (full X-matrix).
    """
    d = _degree(q, d)
    n = q.ambient.n
    out = Poly.zero(Ambient(n))
    cache: dict = {}
    for m, c in q.terms.items():
        rows = [[0] * n for _ in range(n)]
        for v, e in m:
            if v[0] != T:
                raise NonHomogeneous("phi_inverse expects a T-polynomial")
            rows[v[1] - 1][v[2] - 1] = e
        mu = tuple(tuple(r) for r in rows)
        nu = mi_transpose(mu)
        bd = mi_bidegree(nu)
        if bd not in cache:
            cache[bd] = descending_from_genfun(bd, seed=seed, full=True)
        out = out + cache[bd][nu].scale(c * mi_factorial(mu))
    if kappa is not None:
        out = out.specialize(kappa)
    return out if d % 2 == 0 else -out


# -- weights and symbolic constants -------------------------------------------


@dataclass(frozen=True)
class WeightPair:
    k: tuple = ()
    l: tuple = ()

    def __post_init__(self):
        for name in ("k", "l"):
            w = tuple(int(x) for x in getattr(self, name))
            if any(x < 0 for x in w) or any(w[i] < w[i + 1] for i in range(len(w) - 1)):
                raise ValueError(f"{name} must be non-increasing and non-negative: {w}")
            while w and w[-1] == 0:
                w = w[:-1]
            object.__setattr__(self, name, w)

    @property
    def len_k(self) -> int:
        return len(self.k)

    @property
    def len_l(self) -> int:
        return len(self.l)

    def padded(self, n: int) -> tuple:
        if max(self.len_k, self.len_l) > n:
            raise ValueError(f"weight longer than {n}")
        return self.k + (0,) * (n - self.len_k), self.l + (0,) * (n - self.len_l)

    def swapped(self) -> "WeightPair":
        return WeightPair(self.l, self.k)

    @property
    def size(self) -> int:
        return sum(self.k) + sum(self.l)


@dataclass(frozen=True)
class PiSymbolic:
    """rational * pi^pi_power * 2^two_power (rational in Q, or Q(s) when symbolic)."""

    rational: KappaRational
    pi_power: int = 0
    two_power: int = 0

    def __mul__(self, other: "PiSymbolic") -> "PiSymbolic":
        return PiSymbolic(self.rational * other.rational, self.pi_power + other.pi_power,
                          self.two_power + other.two_power)

    def specialize(self, s) -> "PiSymbolic":
        try:
            return PiSymbolic(self.rational.specialize(s), self.pi_power, self.two_power)
        except ZeroDivisionError as e:
            raise PoleAtS(f"pole at s = {s}") from e

    def to_float(self) -> float:
        if not self.rational.is_constant():
            raise ValueError("symbolic value has no float")
        return float(self.rational.constant_value()) * math.pi**self.pi_power * 2.0**self.two_power

    def to_json(self) -> dict:
        r = self.rational.constant_value() if self.rational.is_constant() else None
        return {"two_exp": self.two_power, "pi_exp": self.pi_power,
                "rational": f"{r.numerator}/{r.denominator}" if r is not None else self.rational.format("s")}

    def __str__(self):
        r = self.rational.format("s")
        return f"({r}) * 2^{self.two_power} * pi^{self.pi_power}"


def c_mn(m: int, n: int, s=None, w: WeightPair = WeightPair()) -> PiSymbolic:
    """pi^(nm) prod_i 1 / (s + k_i + l_i + n + m - i)_(m) (falling factorial).

    ``s = None`` keeps s formal; the result's rational part is then in Q(s).
    """
    if m < 1 or n < 1:
        raise ValueError("m, n >= 1")
    k, l = w.padded(n)
    sv = KAPPA if s is None else K(s)
    den = ONE
    for i in range(1, n + 1):
        den = den * desc_poch(sv + (k[i - 1] + l[i - 1] + n + m - i), m)
    if not den:
        raise PoleAtS(f"c_mn has a pole at s = {s}")
    return PiSymbolic(den.inverse(), n * m)


def highest_weight_norm(w: WeightPair) -> Fraction:
    def half(k):
        ell = len(k)
        num = math.prod(math.factorial(k[i] + ell - (i + 1)) for i in range(ell))
        den = math.prod(k[i] - k[j] + j - i for i in range(ell) for j in range(i + 1, ell))
        return Fraction(num, den)

    return half(w.k) * half(w.l)


def c_pullback(mu: int, m: int, n2: int, weights) -> PiSymbolic:
    """c(mu/2, rho_n2): one WeightPair per place (a single pair is used for all m places)."""
    if isinstance(weights, WeightPair):
        weights = [weights]
    weights = list(weights)
    if len(weights) == 1:
        weights = weights * m
    if len(weights) != m:
        raise ValueError(f"need 1 or {m} weight pairs, got {len(weights)}")
    if mu < n2:
        raise ValueError("need mu >= n2")
    rational = Fraction(1)
    size = 0
    for w in weights:
        if w.len_k + w.len_l > mu:
            raise ValueError("need l(k) + l(l) <= mu")
        k, l = w.padded(n2)
        rational *= highest_weight_norm(w)
        for i in range(1, n2 + 1):
            f = desc_poch(k[i - 1] + l[i - 1] + mu - i, n2).constant_value()
            if f == 0:
                raise ZeroPochhammer(f"(k_{i}+l_{i}+mu-{i})_({n2}) = 0")
            rational /= f
        size += w.size
    two = -2 * m * n2 * n2 - m * (n2 - 2) * mu + size
    return PiSymbolic(K(rational), m * n2 * n2, two)


def disk_integral_oracle(m: int, n: int, s, w: WeightPair = WeightPair(), nodes: int = 64) -> tuple:
    """Numerical integral of (1 - |S|^2)^(s+k+l) over the unit ball of C^m.

    Radial reduction: vol(S^(2m-1)) int_0^1 f(r^2) r^(2m-1) dr, with
    Gauss-Legendre on [0, 1].  Returns (estimate, |estimate - half-node estimate|).
    """
    if n != 1:
        raise NotImplementedError("the oracle covers n = 1 only")
    a = float(s) + w.size
    if a <= -1:
        raise ValueError("need s + k + l > -1")
    sphere = 2 * math.pi**m / math.factorial(m - 1)

    def rule(q):
        x, wt = np.polynomial.legendre.leggauss(q)
        r = (x + 1) / 2
        return sphere * 0.5 * float(np.sum(wt * (1 - r * r) ** a * r ** (2 * m - 1)))

    est = rule(nodes)
    return est, abs(est - rule(max(nodes // 2, 2)))


# -- the two-block construction ------------------------------------------------


def bideterminant(M: list, weight: tuple) -> Poly:
    """xi_k = xi_1^(k1-k2) ... xi_d^(k_d), xi_i the leading i x i minor of M."""
    amb = M[0][0].ambient
    out = Poly.const(1, amb)
    weight = tuple(weight)
    for i, ki in enumerate(weight):
        e = ki - (weight[i + 1] if i + 1 < len(weight) else 0)
        if e:
            out = out * det([row[: i + 1] for row in M[: i + 1]]) ** e
    return out


@dataclass
class Diff2Result:
    P0: Poly  # on the 2m x 2m matrix S
    P: Poly  # P0(U1 T tU2), in t, u1, u2, v1, v2
    m: int
    annihilated: bool


def build_diff2_operator(n1: int, n2: int, w: WeightPair, seed: str = "A", check: bool = True) -> Diff2Result:
    """P(T) = P0(UU1 T tUU2) with phi(P0) = (S12)_k (S21)_l and UU_i = diag(U_i, V_i)."""
    if not n1 >= n2 >= 1:
        raise ValueError("need n1 >= n2 >= 1")
    if max(w.len_k, w.len_l) > n2:
        raise ValueError("need l(k), l(l) <= n2")
    m = max(w.len_k, w.len_l, 1)
    s_amb = Ambient(2 * m)
    S = [[Poly.variable(tv(i, j), s_amb) for j in range(1, 2 * m + 1)] for i in range(1, 2 * m + 1)]
    S12 = [row[m:] for row in S[:m]]
    S21 = [row[:m] for row in S[m:]]
    Q0 = bideterminant(S12, w.k) * bideterminant(S21, w.l)
    P0 = phi_inverse(Q0, seed=seed)
    P = pull_back(P0, n1, n2, m)
    ok = block_annihilated(P, n1, n2) if check else True
    return Diff2Result(P0, P, m, ok)


def pull_back(P0: Poly, n1: int, n2: int, m: int) -> Poly:
    """P0(UU1 T tUU2) with UU_i = diag(U_i, V_i), U_i of size m x n1, V_i of size m x n2."""
    n = n1 + n2
    amb = Ambient(n)
    t = lambda i, j: Poly.variable(tv(i, j), amb)

    def block(fu, fv):
        rows = []
        for a in range(1, 2 * m + 1):
            row = []
            for c in range(1, n + 1):
                if a <= m and c <= n1:
                    row.append(Poly.variable((fu, a, c), amb))
                elif a > m and c > n1:
                    row.append(Poly.variable((fv, a - m, c - n1), amb))
                else:
                    row.append(Poly.zero(amb))
            rows.append(row)
        return rows

    UU1, UU2 = block(U1, V1), block(U2, V2)
    # S_ab = sum_{c,e} UU1_ac t_ce UU2_be
    assignment = {}
    for a in range(2 * m):
        for b in range(2 * m):
            acc = Poly.zero(amb)
            for c in range(n):
                if not UU1[a][c]:
                    continue
                for e in range(n):
                    if UU2[b][e]:
                        acc = acc + UU1[a][c] * t(c + 1, e + 1) * UU2[b][e]
            assignment[tv(a + 1, b + 1)] = acc
    return P0.substitute(assignment, amb)


def block_annihilated(P: Poly, n1: int, n2: int) -> bool:
    """D_ij P = 0 whenever i, j lie in the same diagonal block."""
    blocks = [range(1, n1 + 1), range(n1 + 1, n1 + n2 + 1)]
    return all(not apply_D(i, j, P) for blk in blocks for i in blk for j in blk)
