"""The acceptance suite: one function per criterion, each returning (ok, detail).

Shared by ``plurikit verify-all`` and tests/test_acceptance.py.  Random
inputs come from fixed seeds, so every run checks the same cases.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .appendix import verify_entries, verify_sigma
from .bases import (
    all_bidegrees,
    descending_basis,
    mi_add,
    mi_factorial,
    mi_transpose,
    monomial_basis,
    project_Pi,
    gram_matrix,
)
from .field import KAPPA, K, asc_poch, desc_poch
from .genfun import (
    build_G,
    build_symmetric_G,
    check_commutation,
    g2_closed_form,
    g3_coefficient,
    seed_A,
    seed_B,
)
from .linalg import identity
from .poly import Ambient, Poly, tv
from .pullback import (
    WeightPair,
    c_mn,
    c_pullback,
    check_phi_derivative_identity,
    disk_integral_oracle,
    phi_inverse,
    phi_kappa,
)
from .weyl import OPERATORS, apply_D, check_adjoint, e_kappa, tilde_compat_check


def random_poly(rng: random.Random, n: int, degree: int, terms: int = 3, homogeneous: bool = True) -> Poly:
    amb = Ambient(n)
    out = Poly.zero(amb)
    for _ in range(terms):
        d = degree if homogeneous else rng.randint(0, degree)
        m = Poly.const(rng.choice([-3, -2, -1, 1, 2, 3]), amb)
        for _ in range(d):
            m = m * Poly.variable(tv(rng.randint(1, n), rng.randint(1, n)), amb)
        out = out + m
    return out


def random_kappa(rng: random.Random) -> Fraction:
    # non-integral, so no pole of any basis is hit
    return Fraction(rng.randint(-20, 20) * 2 + 1, 2 * rng.randint(1, 5) + 1) + Fraction(1, 7)


# -- criteria ----------------------------------------------------------------


def c01_table():
    rep = verify_entries(4, "generating_function")
    return rep.ok, rep.summary() + (f"; mismatches {rep.mismatches}" if rep.mismatches else "")


def c02_descending():
    count = 0
    for d in range(5):
        for bd in all_bidegrees(3, d):
            basis = descending_basis(bd, method="generating_function")
            if basis != descending_basis(bd, method="linear_solve"):
                return False, f"methods disagree at {bd}"
            for nu, p in basis.items():
                for i in range(1, 4):
                    for j in range(1, 4):
                        if i == j:
                            continue
                        lower = mi_add(nu, i, j, -1)
                        got = apply_D(i, j, p)
                        if lower is None:
                            if got:
                                return False, f"D_{i}{j} P^D_{nu} != 0"
                            continue
                        want = descending_basis(bd.shift(i, j), method="generating_function")[lower]
                        if got != want:
                            return False, f"D_{i}{j} P^D_{nu} != P^D_{lower}"
                        count += 1
    return True, f"{count} identities, both methods agree"


def c03_sigma():
    rep = verify_sigma()
    return rep.ok, rep.summary()


def c04_g2():
    ok = build_G(2, seed_B(8)) == g2_closed_form(8)
    return ok, "weight <= 8"


def c05_g3():
    A = g3_coefficient
    for a in range(8):
        if A(a, 0, 0) != asc_poch(KAPPA - 1, a):
            return False, f"A_{a},0,0"
    checked = 0
    for a in range(7):
        for b in range(4):
            for c in range(3):
                if a + 2 * b + 3 * c > 6:
                    continue
                if (KAPPA + (b + 2 * c - 1)) * A(a, b + 1, c) != A(a + 2, b, c):
                    return False, f"first recursion at {(a, b, c)}"
                rhs = A(a + 1, b + 1, c) * 2 + (A(a - 1, b + 2, c) * a if a else 0)
                if (KAPPA + (c - 2)) * A(a, b, c + 1) != rhs:
                    return False, f"second recursion at {(a, b, c)}"
                checked += 1
    G = build_G(3, seed_A(6))
    for a in range(7):
        for b in range(4):
            for c in range(3):
                if a + 2 * b + 3 * c > 6:
                    continue
                fact = math.factorial(a) * math.factorial(b) * math.factorial(c)
                if G.coefficient([a, b, c]) * fact != A(a, b, c):
                    return False, f"pipeline coefficient at {(a, b, c)}"
    return True, f"recursions at {checked} triples, pipeline weight <= 6"


def c06_duality():
    blocks = 0
    cases = [bd for d in range(4) for bd in all_bidegrees(2, d) if max(x + y for x, y in zip(bd.a, bd.b)) <= 3]
    cases += [bd for d in range(4) for bd in all_bidegrees(3, d)]
    for bd in cases:
        mono = monomial_basis(bd)
        if not mono:
            continue
        desc = descending_basis(bd)
        if gram_matrix(mono, desc) != identity(len(mono)):
            return False, f"not the identity at {bd}"
        blocks += 1
    return True, f"{blocks} bidegrees"


def c07_adjoints():
    rng = random.Random(7)
    kinds = sorted(OPERATORS)
    checks = 0
    for trial in range(55):
        n = rng.randint(1, 3)
        p = random_poly(rng, n, rng.randint(0, 3), homogeneous=False)
        q = random_poly(rng, n, rng.randint(0, 3), homogeneous=False)
        kappas = [None] if trial >= 50 else [random_kappa(rng) for _ in range(5)]
        for kind in kinds:
            i, j = rng.randint(1, n), rng.randint(1, n)
            for kap in kappas:
                if not check_adjoint(kind, i, j, p, q, kap):
                    return False, f"{kind}_{i}{j} fails (trial {trial}, kappa {kap})"
                checks += 1
    return True, f"{checks} identities"


def c08_confluence():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 3)
        p = random_poly(rng, n, rng.randint(0, 4), terms=1)
        base = e_kappa(p)
        if e_kappa(p, order="greatest") != base or e_kappa(p, order=random.Random(rng.random())) != base:
            return False, f"order dependence on {p}"
    return True, "200 monomials, 3 orders"


def n2_monomial_closed_form(a1: int, a2: int) -> Poly:
    out = Poly.zero(Ambient(2))
    for i in range(a1 + 1):
        c = K((-1) ** i) * desc_poch(a1, i) * desc_poch(a2, i) / (math.factorial(i) * desc_poch(KAPPA + (a1 + a2 - 2), i))
        out = out + Poly.t_power(((i, a1 - i), (a2 - i, i))).scale(c)
    return out


def c09_n2_closed_form():
    cases = 0
    for a1 in range(4):
        for a2 in range(a1, 4):
            if project_Pi(Poly.t_power(((0, a1), (a2, 0)))) != n2_monomial_closed_form(a1, a2):
                return False, f"a1={a1}, a2={a2}"
            cases += 1
    return True, f"{cases} cases"


def c10_phi():
    count = 0
    for d in range(5):
        for bd in all_bidegrees(3, d):
            for nu, p in descending_basis(bd, method="generating_function").items():
                want = Poly.t_power(mi_transpose(nu)).scale(K(Fraction((-1) ** d, mi_factorial(nu))))
                if phi_kappa(p, d) != want:
                    return False, f"phi(P^D_{nu})"
                count += 1
    rng = random.Random(10)
    for _ in range(20):
        p = random_poly(rng, rng.randint(1, 2), rng.randint(0, 3))
        n = p.ambient.n
        if not all(check_phi_derivative_identity(p, i, j) for i in range(1, n + 1) for j in range(1, n + 1)):
            return False, f"derivative identity on {p}"
    for seed in ("A", "B"):
        for _ in range(10):
            p = random_poly(rng, 2, rng.randint(0, 3))
            if phi_inverse(phi_kappa(p), seed=seed) != p or phi_kappa(phi_inverse(p, seed=seed)) != p:
                return False, f"round trip (seed {seed}) on {p}"
    return True, f"{count} basis images, 20 derivative checks, 20 round trips"


def c11_symmetric_generator():
    for n1, n2 in ((1, 1), (2, 1), (2, 2)):
        G = build_symmetric_G(n1, n2, 4)
        blocks = (range(1, n1 + 1), range(n1 + 1, n1 + n2 + 1))
        for blk in blocks:
            for i in blk:
                for j in blk:
                    # D_ij leaves the (u, v)-degree alone, so truncation is exact
                    if apply_D(i, j, G):
                        return False, f"D_{i}{j} at (n1, n2) = {(n1, n2)}"
    return True, "(1,1), (2,1), (2,2) through (u,v)-degree 4"


def c12_tilde():
    rng = random.Random(12)
    for _ in range(30):
        p = random_poly(rng, 2, rng.randint(0, 3), homogeneous=False)
        for kap in (1, 2, 3):
            if not tilde_compat_check(p, kappa_int=kap):
                return False, f"{p} at kappa={kap}"
    return True, "30 polynomials x 3 kappas"


def c13_constants():
    worst = 0.0
    for m in (1, 2):
        for s in (0, 1, 2):
            for k in range(3):
                for l in range(3 - k):
                    w = WeightPair((k,) if k else (), (l,) if l else ())
                    est, _ = disk_integral_oracle(m, 1, s, w)
                    exact = c_mn(m, 1, s, w).to_float()
                    worst = max(worst, abs(est - exact) / exact)
    if worst > 1e-4:
        return False, f"oracle relative error {worst:.2e}"
    for mu in range(2, 9):
        c = c_pullback(mu, 1, 1, WeightPair())
        if (c.two_power, c.pi_power, c.rational) != (mu - 2, 1, K(Fraction(1, mu - 1))):
            return False, f"c_pullback at mu={mu}: {c}"
    return True, f"oracle rel. error {worst:.1e}; mu = 2..8"


def c14_commutation():
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            if not check_commutation(p, q, 6):
                return False, f"(p, q) = {(p, q)}"
    return True, "all (p, q) in {1,2,3}^2, weight <= 6"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    fn: object
    limit: float  # seconds
    quick: bool = True


CRITERIA = [
    Criterion(1, "n=3 table reproduction", c01_table, 60),
    Criterion(2, "descending property", c02_descending, 60),
    Criterion(3, "sigma table", c03_sigma, 5),
    Criterion(4, "G^(2) closed form", c04_g2, 10),
    Criterion(5, "G^(3) coefficients", c05_g3, 30),
    Criterion(6, "duality", c06_duality, 120, quick=False),
    Criterion(7, "adjoints", c07_adjoints, 120, quick=False),
    Criterion(8, "e_kappa confluence", c08_confluence, 30),
    Criterion(9, "n=2 monomial closed form", c09_n2_closed_form, 10),
    Criterion(10, "phi_kappa identities", c10_phi, 120, quick=False),
    Criterion(11, "symmetric generator", c11_symmetric_generator, 120, quick=False),
    Criterion(12, "tilde compatibility", c12_tilde, 60),
    Criterion(13, "constants", c13_constants, 60),
    Criterion(14, "commutation", c14_commutation, 30),
]


@dataclass
class Result:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    detail: str

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds <= self.limit

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        slow = "" if self.seconds <= self.limit else " (over time limit)"
        return f"[{status}] {self.number:2d}. {self.name:<28s} {self.seconds:7.2f}s / {self.limit:.0f}s{slow}  {self.detail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "pass": self.passed, "ok": self.ok,
                "seconds": round(self.seconds, 3), "limit": self.limit, "detail": self.detail}


def run_criterion(c: Criterion) -> Result:
    t0 = time.perf_counter()
    try:
        ok, detail = c.fn()
    except Exception as e:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(e).__name__}: {e}"
    return Result(c.number, c.name, bool(ok), time.perf_counter() - t0, c.limit, detail)


def _by_number(number: int) -> Result:
    return run_criterion(next(c for c in CRITERIA if c.number == number))


def threads() -> int:
    try:
        return max(1, int(os.environ.get("PLURIKIT_THREADS", "1")))
    except ValueError:
        return 1


def run_all(quick: bool = False, only=None, workers: int | None = None) -> list:
    chosen = [c for c in CRITERIA if (not quick or c.quick) and (only is None or c.number in only)]
    workers = threads() if workers is None else workers
    if workers <= 1:
        return [run_criterion(c) for c in chosen]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        # map keeps the report order fixed
        return list(ex.map(_by_number, [c.number for c in chosen]))
