"""
Exact linear algebra over Q for small dense matrices.

Matrices are tuples of row tuples of Fractions. Used by certificate
construction (null spaces) and by the lattice code (determinants,
inverses, LDL^T factorizations of Gram matrices).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import NotPositiveDefinite, SingularBasis

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows * x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def determinant(m: Matrix) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularBasis("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def ldl(gram: Matrix) -> tuple[Matrix, tuple[Fraction, ...]]:
    """gram = L D L^T with unit lower-triangular L; raises unless D > 0."""
    n = len(gram)
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for j in range(n):
        d[j] = gram[j][j] - sum((lower[j][k] ** 2 * d[k] for k in range(j)), Fraction(0))
        if d[j] <= 0:
            raise NotPositiveDefinite(f"pivot {j} of the LDL factorization is {d[j]}")
        for i in range(j + 1, n):
            s = gram[i][j] - sum((lower[i][k] * lower[j][k] * d[k] for k in range(j)), Fraction(0))
            lower[i][j] = s / d[j]
    return tuple(tuple(r) for r in lower), tuple(d)


def leading_minors(m: Matrix) -> list[Fraction]:
    return [determinant(tuple(row[:k] for row in m[:k])) for k in range(1, len(m) + 1)]
