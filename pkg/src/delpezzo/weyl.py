"""Reflection groups stabilizing the canonical class of a blowup lattice.

For the rank n+1 lattice with basis (H, E_1, ..., E_n) the distinguished
class is K = -3H + E_1 + ... + E_n.  The group of interest is the full
integral isometry group fixing K; for 2 <= n <= 8 it is finite and
generated by reflections in roots (norm -2 vectors orthogonal to K).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import InputError, UnsupportedError
from . import enumeration as en
from . import exactlinalg as xl
from .lattice import (
    Isometry,
    Lattice,
    LatticeVector,
    Sublattice,
    del_pezzo_lattice,
    identity_isometry,
    inner,
    orthogonal_complement,
    span,
)

def canonical_class(n: int) -> LatticeVector:
    """K = -3H + E_1 + ... + E_n in the rank n+1 blowup lattice."""
    lat = del_pezzo_lattice(n)
    return lat.vector((-3,) + (1,) * n)


def reflection(v: LatticeVector) -> Isometry:
    """The reflection w -> w - (2 Q(v,w) / Q(v,v)) v.

    Integral exactly when Q(v,v) divides 2 Q(v, b) for every basis vector b,
    which holds whenever Q(v,v) is +-1 or +-2.
    """
    lat = v.lattice
    nv = v.norm()
    if nv not in (1, -1, 2, -2):
        raise InputError("reflection requires self-intersection in {+-1, +-2}")
    n = lat.rank
    cols = []
    for j in range(n):
        b = lat.basis_vector(j)
        t = 2 * v.dot(b)
        if t % nv:
            raise InputError("reflection in this vector is not integral")
        k = t // nv
        cols.append(tuple(b.coords[i] - k * v.coords[i] for i in range(n)))
    matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return Isometry(lat, matrix)


@dataclass(frozen=True)
class GeneratorSet:
    """A labelled family of reflection generators of a lattice group."""

    lattice: Lattice
    vectors: Tuple[LatticeVector, ...]
    labels: Tuple[str, ...]

    def isometries(self) -> Tuple[Isometry, ...]:
        return tuple(reflection(v) for v in self.vectors)

    def __len__(self):
        return len(self.vectors)


def _vec(n: int, h: int, es: Dict[int, int]) -> LatticeVector:
    coords = [h] + [0] * n
    for i, c in es.items():
        coords[i] = c
    return del_pezzo_lattice(n).vector(coords)


@lru_cache(maxsize=None)
def wall_generators(n: int) -> GeneratorSet:
    """Reflections generating the full isometry group of the blowup lattice.

    These include odd reflections (norm +-1 mirrors), so the group they
    generate is the whole orthogonal group, not just the K-stabilizer.
    """
    lat = del_pezzo_lattice(n)
    if n == 2:
        vecs = (_vec(2, 1, {1: 1, 2: 1}), _vec(2, 0, {1: 1, 2: -1}), _vec(2, 0, {2: 1}))
        labels = ("H+E1+E2", "E1-E2", "E2")
    elif 3 <= n <= 9:
        vecs = [_vec(n, 1, {1: 1, 2: 1, 3: 1})]
        labels = ["H+E1+E2+E3"]
        for i in range(1, n):
            vecs.append(_vec(n, 0, {i: 1, i + 1: -1}))
            labels.append(f"E{i}-E{i + 1}")
        vecs.append(_vec(n, 0, {n: 1}))
        labels.append(f"E{n}")
        vecs = tuple(vecs)
        labels = tuple(labels)
    else:
        raise InputError("wall generators are defined for 2 <= n <= 9")
    return GeneratorSet(lat, vecs, labels)


@lru_cache(maxsize=None)
def weyl_generators(n: int) -> GeneratorSet:
    """Simple-root reflections generating the stabilizer of K."""
    lat = del_pezzo_lattice(n)
    if n == 2:
        vecs = (_vec(2, 1, {1: -1, 2: -1}), _vec(2, 0, {1: 1, 2: -1}))
        labels = ("H-E1-E2", "E1-E2")
    elif 3 <= n <= 9:
        vecs = [_vec(n, 1, {1: -1, 2: -1, 3: -1})]
        labels = ["H-E1-E2-E3"]
        for i in range(1, n):
            vecs.append(_vec(n, 0, {i: 1, i + 1: -1}))
            labels.append(f"E{i}-E{i + 1}")
        vecs = tuple(vecs)
        labels = tuple(labels)
    else:
        raise InputError("simple roots are defined for 2 <= n <= 9")
    return GeneratorSet(lat, vecs, labels)


@dataclass(frozen=True)
class RootSystem:
    """All roots (norm -2 vectors orthogonal to K) of a blowup lattice."""

    n: int
    roots: Tuple[LatticeVector, ...]
    simple_roots: Tuple[LatticeVector, ...]

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def positive(self) -> Tuple[LatticeVector, ...]:
        """One representative per +-pair, canonical sign."""
        return tuple(r for r in self.roots if _sign_canonical(r.coords))


def _sign_canonical(coords: Sequence[int]) -> bool:
    for c in coords:
        if c:
            return c > 0
    return False


def sign_canonical(v: LatticeVector) -> LatticeVector:
    return v if _sign_canonical(v.coords) else -v


@lru_cache(maxsize=None)
def enumerate_roots(n: int) -> RootSystem:
    """Complete list of roots, found by a definite search in K-perp."""
    if not 2 <= n <= 8:
        raise InputError("root enumeration requires 2 <= n <= 8")
    lat = del_pezzo_lattice(n)
    k = canonical_class(n)
    kperp = orthogonal_complement(span(lat, [k]))
    gram = kperp.gram()
    neg = [[-x for x in row] for row in gram]
    coords = en.definite_vectors(neg, 2)
    roots = sorted(kperp.from_coords(c) for c in coords)
    return RootSystem(n, tuple(roots), weyl_generators(n).vectors)


def is_root(v: LatticeVector, n: int) -> bool:
    return v.norm() == -2 and v.dot(canonical_class(n)) == 0


@lru_cache(maxsize=None)
def weyl_order(n: int) -> int:
    """Order of the generated group, via a stabilizer chain on the root action.

    For n=2 the root action is not faithful (the odd generator acts
    trivially), so the closure is taken on matrices directly.
    """
    if not 2 <= n <= 8:
        raise InputError("group order is available for 2 <= n <= 8")
    if n == 2:
        gens = weyl_generators(2).isometries()
        seen = {g.matrix for g in gens}
        frontier = list(gens)
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    p = g @ h
                    if p.matrix not in seen:
                        seen.add(p.matrix)
                        nxt.append(p)
            frontier = nxt
        return len(seen)
    from . import permgroup as pg

    _, _, gens = pg.root_action_context(n)
    return pg.group_order(gens, len(enumerate_roots(n)))


def stabilizes_canonical_class(g: Isometry, n: int) -> bool:
    k = canonical_class(n)
    return g.lattice == del_pezzo_lattice(n) and g.apply(k) == k


def product_of_reflections(vectors: Sequence[LatticeVector]) -> Isometry:
    if not vectors:
        raise InputError("empty reflection product")
    g = reflection(vectors[0])
    for v in vectors[1:]:
        g = g @ reflection(v)
    return g


def orbit(seed, gens, limit: int = 10 ** 6) -> List[LatticeVector]:
    """Orbit of a seed vector (or vectors) under a generated group."""
    vectors = [seed] if isinstance(seed, LatticeVector) else list(seed)
    generators = gens.isometries() if isinstance(gens, GeneratorSet) else list(gens)
    seen = {v.coords: v for v in vectors}
    frontier = list(vectors)
    while frontier:
        nxt = []
        for g in generators:
            for v in frontier:
                w = g.apply(v)
                if w.coords not in seen:
                    if len(seen) >= limit:
                        raise UnsupportedError("orbit exceeded the safety limit")
                    seen[w.coords] = w
                    nxt.append(w)
        frontier = nxt
    return sorted(seen.values())


def _pair_order(u: LatticeVector, v: LatticeVector) -> int:
    # order of Ref_u Ref_v for norm -2 roots, from Q(u, v)
    p = u.dot(v)
    return {0: 2, 1: 3, -1: 3, 2: 4, -2: 4}.get(p, 0)


def coxeter_diagram(gens: GeneratorSet) -> Dict[Tuple[str, str], int]:
    """Edge orders m(i, j) >= 3 between generator labels; 0 marks infinite."""
    edges: Dict[Tuple[str, str], int] = {}
    gi = gens.isometries()
    n = len(gens)
    for i in range(n):
        for j in range(i + 1, n):
            prod = gi[i] @ gi[j]
            m = _element_order(prod, cap=12)
            if m >= 3 or m == 0:
                edges[(gens.labels[i], gens.labels[j])] = m
    return edges


def _element_order(g: Isometry, cap: int = 10 ** 6) -> int:
    acc = g
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc @ g
    return 0
