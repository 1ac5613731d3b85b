"""
Exact LLL reduction of a positive-definite Gram matrix.

Internal aid for enumeration: returns a unimodular U such that U G U^T is
LLL-reduced (delta = 3/4). Rows of U are the reduced basis vectors in the
coordinates of the original basis.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact.matrix import Matrix, ldl, matmul, transpose

LLL_DELTA = Fraction(3, 4)


def _transform(gram: Matrix, u: list[list[int]]) -> Matrix:
    um = tuple(tuple(Fraction(x) for x in row) for row in u)
    return matmul(matmul(um, gram), transpose(um))


def lll_reduce(gram: Matrix) -> tuple[tuple[tuple[int, ...], ...], Matrix]:
    n = len(gram)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    g = gram
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            lower, _ = ldl(g)
            q = round(lower[k][j])
            if q:
                u[k] = [a - q * b for a, b in zip(u[k], u[j])]
                g = _transform(gram, u)
        lower, d = ldl(g)
        if d[k] >= (LLL_DELTA - lower[k][k - 1] ** 2) * d[k - 1]:
            k += 1
        else:
            u[k], u[k - 1] = u[k - 1], u[k]
            g = _transform(gram, u)
            k = max(k - 1, 1)
    return tuple(tuple(row) for row in u), g
