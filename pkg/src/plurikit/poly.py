"""Sparse multivariate polynomials over Q(kappa) in typed matrix variables.

A variable is a triple ``(family, i, j)`` with 1-based indices; vector-like
families (``s``) use ``j = 0``.  A monomial is a sorted tuple of
``(variable, exponent)`` pairs, so term iteration is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import AmbientMismatch, NonTVariable
from .field import ONE, ZERO, K, KappaRational

FAMILIES = ("t", "s", "x", "y", "u1", "u2", "v1", "v2", "w")
T, S, X, Y, U1, U2, V1, V2, W = range(len(FAMILIES))

Var = tuple  # (family, i, j)
Monomial = tuple  # ((Var, exp), ...)


def var(family: int, i: int, j: int = 0) -> Var:
    return (family, i, j)


def tv(i: int, j: int) -> Var:
    return (T, i, j)


def sv(a: int) -> Var:
    return (S, a, 0)


def var_name(v: Var) -> str:
    f, i, j = v
    if f == S:
        return f"s_{i}"
    return f"{FAMILIES[f]}_{i}_{j}"


def parse_var(name: str) -> Var:
    parts = name.split("_")
    f = FAMILIES.index(parts[0])
    if f == S:
        return (S, int(parts[1]), 0)
    return (f, int(parts[1]), int(parts[2]))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_from_dict(d: Mapping[Var, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_degree(m: Monomial, family: int | None = None) -> int:
    if family is None:
        return sum(e for _, e in m)
    return sum(e for v, e in m if v[0] == family)


def mono_split(m: Monomial, family: int) -> tuple[Monomial, Monomial]:
    """Split into (part in family, rest)."""
    return (tuple(p for p in m if p[0][0] == family), tuple(p for p in m if p[0][0] != family))


def t_monomial(nu) -> Monomial:
    """T**nu for an n x n exponent matrix nu (nested sequences)."""
    return tuple(
        ((T, i + 1, j + 1), e) for i, row in enumerate(nu) for j, e in enumerate(row) if e
    )


@dataclass(frozen=True)
class Ambient:
    """Declared sizes: n for the square families, kappa_cols for n x kappa ones."""

    n: int
    kappa_cols: int | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "kappa_cols": self.kappa_cols}


class Poly:
    __slots__ = ("terms", "ambient")

    def __init__(self, terms: Mapping[Monomial, KappaRational] | None, ambient: Ambient):
        if terms is None:
            terms = {}
        self.terms = {m: K(c) for m, c in terms.items() if c}
        self.ambient = ambient

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ambient: Ambient) -> "Poly":
        return cls({}, ambient)

    @classmethod
    def const(cls, c, ambient: Ambient) -> "Poly":
        return cls({(): K(c)}, ambient)

    @classmethod
    def variable(cls, v: Var, ambient: Ambient, coeff=1) -> "Poly":
        _check_var(v, ambient)
        return cls({((v, 1),): K(coeff)}, ambient)

    @classmethod
    def monomial(cls, m: Monomial, ambient: Ambient, coeff=1) -> "Poly":
        for v, _ in m:
            _check_var(v, ambient)
        return cls({m: K(coeff)}, ambient)

    @classmethod
    def t(cls, i: int, j: int, n: int) -> "Poly":
        return cls.variable(tv(i, j), Ambient(n))

    @classmethod
    def t_power(cls, nu, coeff=1) -> "Poly":
        return cls.monomial(t_monomial(nu), Ambient(len(nu)), coeff)

    def _raw(self, terms: dict) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = terms
        p.ambient = self.ambient
        return p

    # predicates / queries ----------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def constant_term(self) -> KappaRational:
        return self.terms.get((), ZERO)

    def total_degree(self, family: int | None = None) -> int:
        return max((mono_degree(m, family) for m in self.terms), default=-1)

    def is_homogeneous(self, family: int | None = None) -> bool:
        return len({mono_degree(m, family) for m in self.terms}) <= 1

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coefficients(self) -> Iterable[KappaRational]:
        return self.terms.values()

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            return self + Poly.const(other, self.ambient)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = K(c)
        if not c:
            return self._raw({})
        if c == ONE:
            return self
        return self._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                if m in out:
                    out[m] = out[m] + c
                else:
                    out[m] = c
        return self._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(K(1) / K(other))

    def __pow__(self, e: int) -> "Poly":
        out = Poly.const(1, self.ambient)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ambient == other.ambient and self.terms == other.terms
        if isinstance(other, (int, Fraction, KappaRational)):
            c = K(other)
            return self.terms == ({(): c} if c else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items())))

    # calculus -----------------------------------------------------------
    def partial(self, v: Var) -> "Poly":
        out: dict = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:k] + ((w, e - 1),) + m[k + 1 :] if e > 1 else m[:k] + m[k + 1 :]
                    out[nm] = out[nm] + c * e if nm in out else c * e
                    break
        return self._raw({m: c for m, c in out.items() if c})

    def map_coeffs(self, f: Callable[[KappaRational], KappaRational]) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()}, self.ambient)

    def specialize(self, q) -> "Poly":
        """Substitute kappa = q in every coefficient."""
        return self.map_coeffs(lambda c: c.specialize(q))

    def substitute(self, assignment: Mapping[Var, "Poly"], ambient: Ambient | None = None) -> "Poly":
        """Ring homomorphism sending each assigned variable to a polynomial.

        Unassigned variables are kept.  The result lives in ``ambient`` (by
        default the ambient of the assigned images, else of ``self``).
        """
        if ambient is None:
            ambient = next(iter(assignment.values())).ambient if assignment else self.ambient
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = assignment[v] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self.terms.items():
            term = Poly({(): c}, ambient)
            kept = []
            for v, e in m:
                if v in assignment:
                    term = term * power(v, e)
                else:
                    kept.append((v, e))
            if kept:
                term = term * Poly({tuple(kept): ONE}, ambient)
            for tm, tc in term.terms.items():
                acc[tm] = acc[tm] + tc if tm in acc else tc
        return Poly(acc, ambient)

    def rename(self, f: Callable[[Var], Var], ambient: Ambient | None = None) -> "Poly":
        """Apply an injective renaming of variables."""
        out: dict = {}
        for m, c in self.terms.items():
            d: dict = {}
            for v, e in m:
                w = f(v)
                d[w] = d.get(w, 0) + e
            nm = mono_from_dict(d)
            out[nm] = out[nm] + c if nm in out else c
        return Poly(out, ambient or self.ambient)

    def transpose_t(self) -> "Poly":
        """theta: t_ij -> t_ji (conjugation is the identity over Q(kappa))."""
        return self.rename(lambda v: (T, v[2], v[1]) if v[0] == T else v)

    # structure ----------------------------------------------------------
    def collect(self, family: int) -> dict:
        """Map monomial in ``family`` -> coefficient polynomial in the rest."""
        out: dict = {}
        for m, c in self.terms.items():
            fm, rest = mono_split(m, family)
            out.setdefault(fm, {})[rest] = c
        return {fm: self._raw(d) for fm, d in out.items()}

    def extract_coefficient(self, family: int, pattern: Monomial) -> "Poly":
        """Coefficient of the ``family``-monomial ``pattern``."""
        pattern = tuple(sorted(pattern))
        out = {}
        for m, c in self.terms.items():
            fm, rest = mono_split(m, family)
            if fm == pattern:
                out[rest] = c
        return self._raw(out)

    def truncate(self, max_degree: int, weight: Callable[[Monomial], int]) -> "Poly":
        return self._raw({m: c for m, c in self.terms.items() if weight(m) <= max_degree})

    def homogeneous_part(self, d: int, family: int | None = None) -> "Poly":
        return self._raw({m: c for m, c in self.terms.items() if mono_degree(m, family) == d})

    def bidegree_split(self) -> dict:
        """Split a T-polynomial by (row sums, column sums) of its exponents."""
        n = self.ambient.n
        out: dict = {}
        for m, c in self.terms.items():
            a = [0] * n
            b = [0] * n
            for v, e in m:
                if v[0] != T:
                    raise NonTVariable(f"{var_name(v)} is not a T-variable")
                a[v[1] - 1] += e
                b[v[2] - 1] += e
            out.setdefault((tuple(a), tuple(b)), {})[m] = c
        return {k: self._raw(d) for k, d in sorted(out.items())}

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "terms": [
                {"coeff": c.to_json(), "exps": {var_name(v): e for v, e in m}}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Poly":
        amb = Ambient(obj["ambient"]["n"], obj["ambient"].get("kappa_cols"))
        terms: dict = {}
        for t in obj["terms"]:
            m = mono_from_dict({parse_var(k): int(e) for k, e in t["exps"].items()})
            c = KappaRational.from_json(t["coeff"])
            terms[m] = terms[m] + c if m in terms else c
        return cls(terms, amb)

    def __repr__(self):
        return f"Poly({self}, n={self.ambient.n})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)
            cs = str(c)
            if not m:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                if not c.is_constant():
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_var(v: Var, ambient: Ambient):
    f, i, j = v
    if f in (T, W) and not (1 <= i <= ambient.n and 1 <= j <= ambient.n):
        raise AmbientMismatch(f"{var_name(v)} outside n={ambient.n}")
    if i < 1:
        raise AmbientMismatch(f"{var_name(v)} has a non-positive index")


def t_matrix(n: int) -> list:
    """n x n nested list of the T-variables as polynomials."""
    amb = Ambient(n)
    return [[Poly.variable(tv(i, j), amb) for j in range(1, n + 1)] for i in range(1, n + 1)]


def family_matrix(family: int, rows: int, cols: int, ambient: Ambient, zero=None) -> list:
    """Matrix of variables of ``family``; entries with zero(i, j) true are 0."""
    out = []
    for i in range(1, rows + 1):
        row = []
        for j in range(1, cols + 1):
            if zero is not None and zero(i, j):
                row.append(Poly.zero(ambient))
            else:
                row.append(Poly.variable((family, i, j), ambient))
        out.append(row)
    return out


def matmul(A: list, B: list) -> list:
    """Product of matrices whose entries are Polys."""
    rows, inner, cols = len(A), len(B), len(B[0])
    amb = A[0][0].ambient
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = Poly.zero(amb)
            for k in range(inner):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(A: list) -> list:
    return [list(r) for r in zip(*A)]


def det(M: list) -> "Poly":
    """Determinant by cofactor expansion along the first row (small sizes)."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = Poly.zero(M[0][0].ambient)
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


@dataclass(frozen=True)
class Bidegree:
    """(a, b): row sums and column sums of T-exponents."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise ValueError("row and column sum vectors differ in length")
        if any(x < 0 for x in self.a + self.b):
            raise ValueError("bidegree entries must be non-negative")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def degree(self) -> int:
        return sum(self.a)

    def shift(self, i: int, j: int, by: int = -1) -> "Bidegree | None":
        """(a + by e_i, b + by e_j) with 1-based i, j; None if negative."""
        a = list(self.a)
        b = list(self.b)
        a[i - 1] += by
        b[j - 1] += by
        if a[i - 1] < 0 or b[j - 1] < 0:
            return None
        return Bidegree(tuple(a), tuple(b))
