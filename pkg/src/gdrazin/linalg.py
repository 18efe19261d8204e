"""Exact elimination: reduced row echelon form and everything built on it.

All routines run Gauss-Jordan over GaussianRational entries. The pivot in
each column is chosen to minimize a bit-length complexity measure rather than
taking the first nonzero entry; with fractions the classic failure mode is
coefficient blow-up, and preferring simple pivots keeps intermediate
numerators and denominators small on the structured matrices this package
produces.
"""

from __future__ import annotations

from typing import List, Tuple

from .errors import DimensionError, SingularMatrixError
from .matrix import Matrix
from .scalar import ONE, ZERO, GaussianRational


def _complexity(v: GaussianRational) -> int:
    """Bit-length proxy for how expensive arithmetic with v will be."""
    return (
        v.re.numerator.bit_length()
        + v.re.denominator.bit_length()
        + v.im.numerator.bit_length()
        + v.im.denominator.bit_length()
    )


def _rref_in_place(data: List[List[GaussianRational]], ncols_reduce: int):
    """Reduce data (mutated) over its first ncols_reduce columns.

    Returns the list of pivot column indices.
    """
    nrows = len(data)
    pivots = []
    r = 0
    for c in range(ncols_reduce):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = data[i][c]
            if v:
                cost = _complexity(v)
                if best is None or cost < best[0]:
                    best = (cost, i)
        if best is None:
            continue
        i = best[1]
        if i != r:
            data[r], data[i] = data[i], data[r]
        pivot = data[r][c]
        if pivot != ONE:
            inv = ONE / pivot
            data[r] = [inv * v for v in data[r]]
        prow = data[r]
        for i in range(nrows):
            if i == r:
                continue
            factor = data[i][c]
            if factor:
                data[i] = [a - factor * b for a, b in zip(data[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row echelon form of m and its pivot column indices."""
    data = [list(row) for row in m.data]
    pivots = _rref_in_place(data, m.cols)
    return Matrix(data, cols=m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    data = [list(row) for row in m.data]
    return len(_rref_in_place(data, m.cols))


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; SingularMatrixError if none exists."""
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    data = [
        list(m.data[i]) + [ONE if i == j else ZERO for j in range(n)]
        for i in range(n)
    ]
    pivots = _rref_in_place(data, n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix of rank {len(pivots)} < {n} has no inverse")
    return Matrix([row[n:] for row in data])


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of m forming a basis of its column space, as an m.rows x rank matrix."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def null_space_basis(m: Matrix) -> Matrix:
    """Basis of the kernel of m, as an m.cols x nullity matrix.

    Built from the reduced form: each non-pivot column contributes one basis
    vector with a 1 in its own coordinate and the negated reduced-column
    entries in the pivot coordinates.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    if not free:
        return Matrix.zeros(m.cols, 0)
    cols = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for i, p in enumerate(pivots):
            vec[p] = -reduced.data[i][f]
        cols.append(vec)
    return Matrix([[cols[j][i] for j in range(len(cols))] for i in range(m.cols)])
