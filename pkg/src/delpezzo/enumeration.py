"""Exact vector enumeration in integral quadratic forms.

All routines work over Z / Fraction only; no floating point is used, so
results never suffer rounding drop-outs.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt
from typing import List, Sequence, Tuple

from .errors import InputError, UnsupportedError

Coords = Tuple[int, ...]

_BOX_LIMIT = 30_000_000


def _floor_sqrt_plus(t: Fraction, s: Fraction) -> int:
    """floor(sqrt(t) + s) for t >= 0, computed exactly."""
    approx = Fraction(isqrt(t.numerator * t.denominator), t.denominator) + s
    x = approx.numerator // approx.denominator

    def le_sqrt(v: Fraction) -> bool:
        return v <= 0 or v * v <= t

    while le_sqrt((x + 1) - s):
        x += 1
    while not le_sqrt(x - s):
        x -= 1
    return x


def _cholesky(gram: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Rational Cholesky data for a positive definite symmetric matrix."""
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise InputError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def definite_vectors_by_norm(gram: Sequence[Sequence[int]],
                             max_norm: int) -> dict:
    """Nonzero integer vectors with 0 < x^T gram x <= max_norm, keyed by norm.

    Requires gram positive definite; the enumeration is complete.
    """
    n = len(gram)
    out: dict = {}
    if max_norm <= 0:
        return out
    q = _cholesky(gram)
    bound = Fraction(max_norm)
    x = [0] * n

    def descend(i: int, rem: Fraction) -> None:
        if i < 0:
            norm = max_norm - rem
            if norm > 0:
                out.setdefault(int(norm), []).append(tuple(x))
            return
        s = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = rem / q[i][i]
        hi = _floor_sqrt_plus(t, -s)
        lo = -_floor_sqrt_plus(t, s)
        for xi in range(lo, hi + 1):
            x[i] = xi
            descend(i - 1, rem - q[i][i] * (xi + s) ** 2)
        x[i] = 0

    descend(n - 1, bound)
    return out


def definite_vectors(gram: Sequence[Sequence[int]], target: int) -> List[Coords]:
    """All nonzero integer vectors x with x^T gram x == target.

    Requires gram positive definite; the enumeration is complete.
    """
    if target <= 0:
        return []
    return definite_vectors_by_norm(gram, target).get(target, [])


def box_vectors(gram: Sequence[Sequence[int]], target: int, bound: int) -> List[Coords]:
    """Nonzero vectors of the exact norm inside the coordinate box |x_i| <= bound.

    Exhaustive over the box; exponential in the rank, so only suitable for
    small rank or small bound.
    """
    n = len(gram)
    if (2 * bound + 1) ** n > _BOX_LIMIT:
        raise UnsupportedError("coordinate box too large for exhaustive search")
    out = []
    for c in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(c):
            continue
        val = sum(c[i] * gram[i][j] * c[j] for i in range(n) for j in range(n) if c[i] and gram[i][j])
        if val == target:
            out.append(tuple(c))
    return out


def _anchor_complement(gram: Sequence[Sequence[int]], p: Sequence[int]):
    from . import exactlinalg as xl

    n = len(gram)
    row = xl.mat_vec(gram, list(p))
    comp = xl.kernel([row])  # basis of p-orthogonal vectors, saturated
    b = [[comp[j][i] for j in range(len(comp))] for i in range(n)]
    g = xl.mat_mul(xl.mat_mul(xl.transpose(b), gram), b)
    return comp, g


def anchored_norm_slices(gram: Sequence[Sequence[int]], p: Sequence[int],
                         target: int, t_bound: int):
    """Yield (|t|, vectors) with c^T gram c == target, grouped by |<p, c>|.

    Requires gram of signature (1, k) and <p, p> > 0.  Every slice
    <p, c> = t reduces to a complete search in the negative definite
    complement of p, so each yielded batch is complete for its slab and
    the batches come in order of increasing |t|.
    """
    n = len(gram)
    m = sum(p[i] * gram[i][j] * p[j] for i in range(n) for j in range(n))
    if m <= 0:
        raise InputError("anchor vector must have positive self-intersection")
    comp, g_comp = _anchor_complement(gram, p)
    neg = [[-x for x in row] for row in g_comp]
    for t in range(t_bound + 1):
        # c' = m*c - t*p lies in the complement and has norm m*(m*target - t*t)
        cnorm = m * (t * t - m * target)
        batch = []
        if cnorm >= 0:
            slice_coords: List[Coords] = []
            if cnorm == 0:
                slice_coords.append((0,) * len(comp))
            slice_coords.extend(definite_vectors(neg, cnorm))
            for d in slice_coords:
                good = True
                c = []
                for i in range(n):
                    num = sum(comp[j][i] * d[j] for j in range(len(comp))) + t * p[i]
                    if num % m:
                        good = False
                        break
                    c.append(num // m)
                if good and any(c):
                    batch.append(tuple(c))
                    if t:
                        batch.append(tuple(-x for x in c))
        yield t, sorted(set(batch))


def anchored_norm_vectors(gram: Sequence[Sequence[int]], p: Sequence[int],
                          target: int, t_bound: int) -> List[Coords]:
    """Vectors c with c^T gram c == target and |<p, c>| <= t_bound."""
    found = []
    for _, batch in anchored_norm_slices(gram, p, target, t_bound):
        found.extend(batch)
    return sorted(set(found))
