"""Fraction-free (Bareiss) elimination over Q(kappa)."""

from __future__ import annotations

from .errors import SingularSystem
from .field import ONE, ZERO, K, KappaRational

Matrix = list  # list of rows of KappaRational


def _copy(a) -> Matrix:
    return [[K(x) for x in row] for row in a]


def echelon(a: Matrix):
    """Bareiss row echelon form. Returns (matrix, pivot columns, sign)."""
    m = _copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    prev = ONE
    sign = 1
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, cols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) / prev
            row_i[c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, sign


def rank(a: Matrix) -> int:
    return len(echelon(a)[1]) if a else 0


def det(a: Matrix) -> KappaRational:
    n = len(a)
    if n == 0:
        return ONE
    m, pivots, sign = echelon(a)
    if len(pivots) < n:
        return ZERO
    return m[n - 1][n - 1] * sign


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve a x = b for x (a may be overdetermined; b has one column per rhs).

    Raises SingularSystem if a has a kernel or the system is inconsistent.
    """
    rows = len(a)
    k = len(a[0]) if rows else 0
    r = len(b[0]) if rows else 0
    if k == 0:
        if any(x for row in b for x in row):
            raise SingularSystem("inconsistent system with no unknowns")
        return []
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    m, pivots, _ = echelon(aug)
    if any(p >= k for p in pivots):
        raise SingularSystem("inconsistent linear system")
    if len(pivots) < k:
        raise SingularSystem(f"rank {len(pivots)} < {k} unknowns")
    x = [[ZERO] * r for _ in range(k)]
    for i in range(k - 1, -1, -1):
        piv = m[i][i]
        for col in range(r):
            acc = m[i][k + col]
            for j in range(i + 1, k):
                if m[i][j]:
                    acc = acc - m[i][j] * x[j][col]
            x[i][col] = acc / piv
    return x


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), ZERO) for j in range(len(b[0]))] for i in range(len(a))]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def specialize(a: Matrix, q) -> Matrix:
    return [[K(x).specialize(q) for x in row] for row in a]
