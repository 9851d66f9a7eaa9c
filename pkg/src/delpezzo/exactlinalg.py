"""Exact integer and rational linear algebra helpers.

Matrices are sequences of row tuples/lists of Python ints (Fractions where
noted).  Everything is exact; no floating point is used anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

IntMatrix = Sequence[Sequence[int]]


def identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: IntMatrix) -> List[List[int]]:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: IntMatrix, b: IntMatrix) -> List[List[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: IntMatrix, x: Sequence[int]) -> List[int]:
    return [sum(c * v for c, v in zip(row, x)) for row in a]


def mat_add_scaled_identity(a: IntMatrix, s: int) -> List[List[int]]:
    return [
        [a[i][j] + (s if i == j else 0) for j in range(len(a))]
        for i in range(len(a))
    ]


def mat_eq(a: IntMatrix, b: IntMatrix) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def det(a: IntMatrix) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: IntMatrix) -> List[List[Fraction]]:
    """Inverse over the rationals.  Raises InputError on singular input."""
    from .errors import InputError

    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise InputError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _col_axpy(m: List[List[int]], dst: int, src: int, factor: int) -> None:
    for row in m:
        row[dst] += factor * row[src]


def _col_swap(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _col_negate(m: List[List[int]], i: int) -> None:
    for row in m:
        row[i] = -row[i]


def hnf_columns(a: IntMatrix) -> Tuple[List[List[int]], List[List[int]], List[Tuple[int, int]]]:
    """Column-style Hermite reduction.

    Returns (h, u, pivots) with a @ u == h, u unimodular, the columns of h
    past the last pivot identically zero, and pivots a list of (row, col)
    positions with positive pivot entries.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    h = [list(row) for row in a]
    u = identity(ncols)
    pivots: List[Tuple[int, int]] = []
    col = 0
    for row in range(nrows):
        if col >= ncols:
            break
        while True:
            live = [j for j in range(col, ncols) if h[row][j] != 0]
            if not live:
                break
            j0 = min(live, key=lambda j: (abs(h[row][j]), j))
            if j0 != col:
                _col_swap(h, col, j0)
                _col_swap(u, col, j0)
            if h[row][col] < 0:
                _col_negate(h, col)
                _col_negate(u, col)
            clean = True
            for j in range(col + 1, ncols):
                if h[row][j] != 0:
                    q = h[row][j] // h[row][col]
                    _col_axpy(h, j, col, -q)
                    _col_axpy(u, j, col, -q)
                    if h[row][j] != 0:
                        clean = False
            if clean:
                pivots.append((row, col))
                col += 1
                break
    return h, u, pivots


def kernel(a: IntMatrix) -> List[List[int]]:
    """Basis of the integer kernel {x : a @ x == 0}, as a list of vectors.

    The returned basis spans a saturated sublattice of Z^ncols.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [row[:] for row in identity(ncols)]
    _, u, pivots = hnf_columns(a)
    rank = len(pivots)
    return [[u[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[List[int]]:
    """One integer solution x of a @ x == b, or None when unsolvable."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    h, u, pivots = hnf_columns(a)
    res = list(b)
    y = [0] * ncols
    for row, col in pivots:
        if res[row] % h[row][col] != 0:
            return None
        t = res[row] // h[row][col]
        y[col] = t
        if t:
            for r in range(nrows):
                res[r] -= t * h[r][col]
    if any(res):
        return None
    return mat_vec(u, y)


def rational_rank(a: IntMatrix) -> int:
    _, _, pivots = hnf_columns(a)
    return len(pivots)


def f2_rank(a: IntMatrix) -> int:
    rows = [int("".join(str(x & 1) for x in row), 2) if any(x & 1 for x in row) else 0
            for row in a]
    rank = 0
    basis: List[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
            rank += 1
    return rank


def f2_solvable(a: IntMatrix, b: Sequence[int]) -> bool:
    """Whether a @ x == b has a solution over GF(2)."""
    nrows = len(a)
    aug = [[x & 1 for x in row] + [b[i] & 1] for i, row in enumerate(a)]
    return f2_rank([row[:-1] for row in aug]) == f2_rank(aug)


def sylvester_signature(gram: IntMatrix) -> Tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Computed by exact symmetric Gaussian congruence with the classical
    off-diagonal completion step when every remaining diagonal entry is 0.
    """
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    i = 0
    while i < n:
        if a[i][i] == 0:
            k = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if k is not None:
                a[i], a[k] = a[k], a[i]
                for row in a:
                    row[i], row[k] = row[k], row[i]
            else:
                pair = next(((r, c) for r in range(i, n) for c in range(r + 1, n)
                             if a[r][c] != 0), None)
                if pair is None:
                    zero += n - i
                    break
                r, c = pair
                # make a nonzero diagonal entry: row/col r += row/col c
                for j in range(n):
                    a[r][j] += a[c][j]
                for j in range(n):
                    a[j][r] += a[j][c]
                if r != i:
                    a[i], a[r] = a[r], a[i]
                    for row in a:
                        row[i], row[r] = row[r], row[i]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(i + 1, n):
            if a[r][i] != 0:
                f = a[r][i] / d
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
        for c in range(i + 1, n):
            a[i][c] = Fraction(0)
            a[c][i] = Fraction(0)
        i += 1
    return pos, neg, zero
