"""Unimodular lattices of blowup type and exact sublattice operations.

The main ambient lattice has Gram matrix diag(1, -1, ..., -1) in the basis
(H, E_1, ..., E_n).  Two derived bases are supported: the rank-2 even
hyperbolic lattice with basis (S_1, S_2), and its blowup extension with
basis (S_1, S_2, e_1, ..., e_{n-1}).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InputError
from . import exactlinalg as xl

Coords = Tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """A finitely generated free Z-module with an integral symmetric form."""

    gram: Tuple[Tuple[int, ...], ...]
    basis_labels: Tuple[str, ...]

    def __post_init__(self):
        n = len(self.gram)
        if len(self.basis_labels) != n:
            raise InputError("label count does not match rank")
        for i in range(n):
            if len(self.gram[i]) != n:
                raise InputError("Gram matrix is not square")
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InputError("Gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise InputError("coordinate length does not match rank")
        return LatticeVector(self, coords)

    def basis_vector(self, i: int) -> "LatticeVector":
        return self.vector(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero(self) -> "LatticeVector":
        return self.vector((0,) * self.rank)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "gram": [list(row) for row in self.gram],
            "basis": list(self.basis_labels),
        }


@dataclass(frozen=True, order=True)
class LatticeVector:
    lattice: Lattice = field(compare=False)
    coords: Coords = field(compare=True)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _same_lattice(self, other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        _same_lattice(self, other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    def dot(self, other: "LatticeVector") -> int:
        _same_lattice(self, other)
        return inner(self.lattice, self, other)

    def norm(self) -> int:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_primitive(self) -> bool:
        from math import gcd
        g = 0
        for c in self.coords:
            g = gcd(g, c)
        return g == 1


def _same_lattice(u: LatticeVector, v: LatticeVector) -> None:
    if u.lattice != v.lattice:
        raise InputError("vectors live in different lattices")


@lru_cache(maxsize=None)
def _diagonal(gram: Tuple[Tuple[int, ...], ...]) -> Optional[Tuple[int, ...]]:
    n = len(gram)
    if all(gram[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        return tuple(gram[i][i] for i in range(n))
    return None


def inner(lattice: Lattice, u: LatticeVector, v: LatticeVector) -> int:
    """The bilinear form Q(u, v) of the given lattice."""
    if u.lattice != lattice or v.lattice != lattice:
        raise InputError("vector does not belong to the given lattice")
    diag = _diagonal(lattice.gram)
    if diag is not None:
        return sum(d * a * b for d, a, b in zip(diag, u.coords, v.coords))
    total = 0
    for i, a in enumerate(u.coords):
        if a:
            row = lattice.gram[i]
            total += a * sum(row[j] * b for j, b in enumerate(v.coords) if b)
    return total


@lru_cache(maxsize=None)
def del_pezzo_lattice(n: int) -> Lattice:
    """Rank n+1 odd unimodular lattice with basis (H, E_1, ..., E_n)."""
    if not 0 <= n <= 9:
        raise InputError("del Pezzo index n must satisfy 0 <= n <= 9")
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n + 1))
        for i in range(n + 1)
    )
    labels = ("H",) + tuple(f"E{i}" for i in range(1, n + 1))
    return Lattice(gram, labels)


@lru_cache(maxsize=None)
def quadric_lattice() -> Lattice:
    """Rank 2 even hyperbolic lattice with basis (S_1, S_2)."""
    return Lattice(((0, 1), (1, 0)), ("S1", "S2"))


@lru_cache(maxsize=None)
def blowup_quadric_lattice(n: int) -> Lattice:
    """Rank n+1 lattice with basis (S_1, S_2, e_1, ..., e_{n-1})."""
    if not 1 <= n <= 9:
        raise InputError("blown-up quadric index n must satisfy 1 <= n <= 9")
    rank = n + 1
    gram = [[0] * rank for _ in range(rank)]
    gram[0][1] = gram[1][0] = 1
    for i in range(2, rank):
        gram[i][i] = -1
    labels = ("S1", "S2") + tuple(f"e{i}" for i in range(1, n))
    return Lattice(tuple(tuple(row) for row in gram), labels)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice given by an explicit basis of ambient vectors."""

    ambient: Lattice
    basis: Tuple[LatticeVector, ...]
    saturated: bool = False

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> List[List[int]]:
        """Ambient coordinates of the basis, as matrix columns."""
        return [[v.coords[i] for v in self.basis] for i in range(self.ambient.rank)]

    def gram(self) -> Tuple[Tuple[int, ...], ...]:
        b = self.basis_matrix()
        g = xl.mat_mul(xl.mat_mul(xl.transpose(b), self.ambient.gram), b)
        return tuple(tuple(row) for row in g)

    def from_coords(self, coords: Sequence[int]) -> LatticeVector:
        """Ambient vector with the given coordinates in the sublattice basis."""
        acc = [0] * self.ambient.rank
        for c, v in zip(coords, self.basis):
            for i, x in enumerate(v.coords):
                acc[i] += c * x
        return self.ambient.vector(acc)

    def coords_of(self, v: LatticeVector) -> Optional[Tuple[int, ...]]:
        """Integer coordinates of an ambient vector in this basis, or None."""
        sol = xl.solve_integer(self.basis_matrix(), list(v.coords))
        return tuple(sol) if sol is not None else None

    def determinant(self) -> int:
        return xl.det(self.gram())


def span(ambient: Lattice, vectors: Iterable[LatticeVector], *,
         saturated: bool = False) -> Sublattice:
    vecs = tuple(vectors)
    for v in vecs:
        if v.lattice != ambient:
            raise InputError("spanning vector does not belong to the ambient lattice")
    cols = [[v.coords[i] for v in vecs] for i in range(ambient.rank)]
    if vecs and xl.rational_rank(cols) != len(vecs):
        raise InputError("spanning vectors are linearly dependent")
    return Sublattice(ambient, vecs, saturated)


def full_sublattice(lattice: Lattice) -> Sublattice:
    return Sublattice(lattice, tuple(lattice.basis_vector(i) for i in range(lattice.rank)),
                      saturated=True)


def saturate(sub: Sublattice) -> Sublattice:
    """The saturation: all ambient vectors lying in the rational span."""
    if sub.saturated:
        return sub
    rows = [list(v.coords) for v in sub.basis]
    annihilator = xl.kernel(rows)  # vectors y with y . v == 0 (standard dot)
    if not annihilator:
        return full_sublattice(sub.ambient)
    sat_cols = xl.kernel([list(y) for y in annihilator])
    basis = tuple(sub.ambient.vector(col) for col in sat_cols)
    return Sublattice(sub.ambient, basis, saturated=True)


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    """Saturated sublattice of all ambient vectors orthogonal to sub."""
    rows = [xl.mat_vec(sub.ambient.gram, list(v.coords)) for v in sub.basis]
    if not rows:
        return full_sublattice(sub.ambient)
    basis = tuple(sub.ambient.vector(col) for col in xl.kernel(rows))
    return Sublattice(sub.ambient, basis, saturated=True)


def signature(sub: Sublattice) -> Tuple[int, int, int]:
    """(positive, negative, zero) inertia of the restricted form."""
    return xl.sylvester_signature(sub.gram())


def is_even(sub: Sublattice) -> bool:
    """Whether every vector of the sublattice has even self-intersection."""
    return all(v.norm() % 2 == 0 for v in sub.basis)


def has_even_products(sub: Sublattice) -> bool:
    """Whether the whole restricted bilinear form takes even values."""
    return all(x % 2 == 0 for row in sub.gram() for x in row)


@dataclass(frozen=True)
class Isometry:
    """An integral isometry, stored column-wise (column j = image of basis j)."""

    lattice: Lattice
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = self.lattice.rank
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise InputError("matrix size does not match lattice rank")
        g = [list(r) for r in self.lattice.gram]
        m = [list(r) for r in self.matrix]
        if not xl.mat_eq(xl.mat_mul(xl.mat_mul(xl.transpose(m), g), m), g):
            raise InputError("matrix does not preserve the intersection form")
        if abs(xl.det(m)) != 1:
            raise InputError("matrix is not unimodular")

    def apply(self, v: LatticeVector) -> LatticeVector:
        if v.lattice != self.lattice:
            raise InputError("vector does not belong to the isometry's lattice")
        return self.lattice.vector(xl.mat_vec(self.matrix, list(v.coords)))

    def compose(self, other: "Isometry") -> "Isometry":
        if other.lattice != self.lattice:
            raise InputError("isometries act on different lattices")
        prod = xl.mat_mul(self.matrix, other.matrix)
        return Isometry(self.lattice, tuple(tuple(r) for r in prod))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        inv = xl.inverse(self.matrix)
        m = tuple(tuple(int(x) for x in row) for row in inv)
        return Isometry(self.lattice, m)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(self.lattice.rank) for j in range(self.lattice.rank))

    def is_involution(self) -> bool:
        sq = xl.mat_mul(self.matrix, self.matrix)
        return xl.mat_eq(sq, xl.identity(self.lattice.rank))

    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(self.lattice.rank))

    def negated(self) -> "Isometry":
        return Isometry(self.lattice, tuple(tuple(-x for x in row) for row in self.matrix))


def identity_isometry(lattice: Lattice) -> Isometry:
    return Isometry(lattice, tuple(tuple(row) for row in xl.identity(lattice.rank)))


def fixed_and_antifixed(g: Isometry) -> Tuple[Sublattice, Sublattice]:
    """Saturated (+1)- and (-1)-eigenlattices of an involution."""
    if not g.is_involution():
        raise InputError("fixed_and_antifixed expects an involution")
    plus = xl.kernel(xl.mat_add_scaled_identity(g.matrix, -1))
    minus = xl.kernel(xl.mat_add_scaled_identity(g.matrix, 1))
    lat = g.lattice
    return (
        Sublattice(lat, tuple(lat.vector(c) for c in plus), saturated=True),
        Sublattice(lat, tuple(lat.vector(c) for c in minus), saturated=True),
    )


@dataclass(frozen=True)
class ShortVectorResult:
    """Outcome of a short-vector search; complete=False means truncated."""

    vectors: Tuple[LatticeVector, ...]
    complete: bool

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def short_vectors(sub: Sublattice, target_norm: int, height_bound: int = 10) -> ShortVectorResult:
    """Nonzero sublattice vectors of the exact given self-intersection.

    For a definite restricted form the enumeration is complete.  Otherwise
    all solutions with basis coordinates bounded by height_bound are
    returned and the result is marked truncated.
    """
    from . import enumeration as en

    if sub.rank == 0:
        return ShortVectorResult((), True)
    gram = sub.gram()
    pos, neg, zero = xl.sylvester_signature(gram)
    if zero == 0 and (neg == 0 or pos == 0):
        if pos == 0:
            coords = en.definite_vectors([[-x for x in row] for row in gram], -target_norm)
        else:
            coords = en.definite_vectors([list(row) for row in gram], target_norm)
        vecs = sorted(sub.from_coords(c) for c in coords)
        return ShortVectorResult(tuple(vecs), True)
    coords = en.box_vectors(gram, target_norm, height_bound)
    vecs = sorted(sub.from_coords(c) for c in coords)
    return ShortVectorResult(tuple(vecs), False)
