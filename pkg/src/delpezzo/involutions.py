"""Classification of order-2 classes in the K-stabilizer of a blowup lattice.

Every involution in the group is a product of reflections in mutually
orthogonal roots.  Its (-1)-eigenlattice is the saturated span of those
roots, and the involution is recovered from the full root list of that
eigenlattice; two involutions are conjugate exactly when those root lists
lie in one orbit of the group.  Classification therefore proceeds by
clique search in the root orthogonality graph, orbit deduplication, and
invariant computation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import InputError, UnsupportedError
from . import criteria
from . import enumeration as en
from . import exactlinalg as xl
from . import permgroup as pg
from .lattice import (
    Isometry,
    LatticeVector,
    Sublattice,
    del_pezzo_lattice,
    fixed_and_antifixed,
    has_even_products,
    is_even,
    orthogonal_complement,
    span,
)
from .weyl import (
    canonical_class,
    enumerate_roots,
    product_of_reflections,
    sign_canonical,
    stabilizes_canonical_class,
    weyl_generators,
)

RootSetKey = Tuple[int, ...]  # sorted canonical pair ids


@dataclass(frozen=True)
class OrthogonalRootSet:
    """Mutually orthogonal roots, stored sign-canonically and sorted."""

    n: int
    roots: Tuple[LatticeVector, ...]

    def __post_init__(self):
        for i, r in enumerate(self.roots):
            if r.norm() != -2 or r.dot(canonical_class(self.n)) != 0:
                raise InputError("set contains a non-root vector")
            for s in self.roots[i + 1:]:
                if r.dot(s) != 0:
                    raise InputError("roots are not mutually orthogonal")

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def involution(self) -> Isometry:
        return product_of_reflections(self.roots)


def orthogonal_root_set(n: int, roots: Sequence[LatticeVector]) -> OrthogonalRootSet:
    canon = sorted(sign_canonical(r) for r in roots)
    if len(set(canon)) != len(canon):
        raise InputError("duplicate roots in the set")
    return OrthogonalRootSet(n, tuple(canon))


def involution_from_roots(n: int, roots: Sequence[LatticeVector]) -> Isometry:
    return orthogonal_root_set(n, roots).involution()


@dataclass(frozen=True)
class ZGInvariant:
    """Mod-2 splitting ranks (t, c, r) of an involution.

    r is the F2-rank of g + 1; t and c are the ranks of the fixed and
    antifixed lattices minus r.
    """

    t: int
    c: int
    r: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.t, self.c, self.r)


def zg_invariant(g: Isometry) -> ZGInvariant:
    if not g.is_involution():
        raise InputError("not an involution")
    plus, minus = fixed_and_antifixed(g)
    m = xl.mat_add_scaled_identity(g.matrix, 1)
    r = xl.f2_rank([[x % 2 for x in row] for row in m])
    return ZGInvariant(plus.rank - r, minus.rank - r, r)


@dataclass(frozen=True)
class InvolutionInvariant:
    """Conjugation invariants of an involution fixing K."""

    n: int
    carter_exponent: int          # rank of the antifixed lattice
    trace: int
    zg: Tuple[int, int, int]
    plus_even: bool
    plus_products_even: bool
    plus_det: int                 # |det| of the fixed lattice form
    minus_det: int
    minus_root_count: int
    kperp_fixed_det: int          # |det| of (fixed lattice) intersect K-perp
    kperp_fixed_roots: int
    # (fixes norm +1, fixes norm -1, fixes hyperbolic pair, swaps (-1)-pair)
    flags: Tuple[Optional[bool], ...] = field(default=(None,) * 4)

    def merge_key(self):
        # everything except the bounded-search flags
        return (self.n, self.carter_exponent, self.trace, self.zg,
                self.plus_even, self.plus_products_even, self.plus_det,
                self.minus_det, self.minus_root_count,
                self.kperp_fixed_det, self.kperp_fixed_roots)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "carter_exponent": self.carter_exponent,
            "trace": self.trace,
            "zg": list(self.zg),
            "plus_even": self.plus_even,
            "plus_products_even": self.plus_products_even,
            "plus_det": self.plus_det,
            "minus_det": self.minus_det,
            "minus_root_count": self.minus_root_count,
            "kperp_fixed_det": self.kperp_fixed_det,
            "kperp_fixed_roots": self.kperp_fixed_roots,
            "flags": list(self.flags),
        }


def _kperp_fixed(g: Isometry, n: int) -> Sublattice:
    """Saturated intersection of the fixed lattice with K-perp."""
    plus, _ = fixed_and_antifixed(g)
    k = canonical_class(n)
    rows = [[k.dot(v)] for v in plus.basis]
    ker = xl.kernel(xl.transpose(rows))
    basis = tuple(plus.from_coords(c) for c in ker)
    return Sublattice(g.lattice, basis, saturated=True)


def _definite_root_count(sub: Sublattice) -> int:
    if sub.rank == 0:
        return 0
    gram = sub.gram()
    pos, neg, zero = xl.sylvester_signature(gram)
    if pos or zero:
        raise InputError("root count requires a negative definite lattice")
    return len(en.definite_vectors([[-x for x in row] for row in gram], 2))


def invariant_of(g: Isometry, n: int, with_flags: bool = False) -> InvolutionInvariant:
    if not stabilizes_canonical_class(g, n):
        raise InputError("isometry does not fix the canonical class")
    if not g.is_involution():
        raise InputError("not an involution")
    plus, minus = fixed_and_antifixed(g)
    kf = _kperp_fixed(g, n)
    flags: Tuple[Optional[bool], ...] = (None,) * 4
    if with_flags:
        data = criteria.eigen_data(g, canonical_class(n))
        a, b, c, d = criteria.route_flags(data, n)
        flags = (a, c, b, d)
    return InvolutionInvariant(
        n=n,
        carter_exponent=minus.rank,
        trace=g.trace(),
        zg=zg_invariant(g).as_tuple(),
        plus_even=is_even(plus),
        plus_products_even=has_even_products(plus),
        plus_det=abs(plus.determinant()) if plus.rank else 1,
        minus_det=abs(minus.determinant()) if minus.rank else 1,
        minus_root_count=_definite_root_count(minus),
        kperp_fixed_det=abs(kf.determinant()) if kf.rank else 1,
        kperp_fixed_roots=_definite_root_count(kf),
        flags=flags,
    )


@dataclass(frozen=True)
class InvolutionClass:
    """One conjugacy class of involutions fixing K."""

    n: int
    label: str
    roots: OrthogonalRootSet       # defining orthogonal set of the representative
    representative: Isometry
    invariant: InvolutionInvariant
    minus_root_key: RootSetKey     # canonical id of the class
    class_size: Optional[int] = None
    verdict: Optional[str] = None  # filled by the irreducibility layer

    @property
    def carter_exponent(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "carter_exponent": self.carter_exponent,
            "roots": [list(r.coords) for r in self.roots.roots],
            "matrix": [list(row) for row in self.representative.matrix],
            "invariant": self.invariant.to_json(),
            "class_size": self.class_size,
            "verdict": self.verdict,
        }


@lru_cache(maxsize=None)
def _canon_table(n: int) -> bytes:
    """Maps each root index to the index of its sign-canonical mate."""
    roots, index = pg._roots_and_index(n)
    out = bytearray(len(roots))
    for i, r in enumerate(roots):
        out[i] = index[sign_canonical(r).coords]
    return bytes(out)


def minus_root_key(g: Isometry, n: int) -> RootSetKey:
    """Sorted pair ids of the roots of the antifixed lattice.

    This determines the involution completely and is permuted equivariantly
    under conjugation, so orbits of these keys classify involutions.
    """
    _, minus = fixed_and_antifixed(g)
    roots, index = pg._roots_and_index(n)
    canon = _canon_table(n)
    vecs = _definite_root_vectors(minus)
    ids = set()
    for v in vecs:
        j = index.get(v.coords)
        if j is None:
            raise InputError("antifixed lattice contains a vector outside the root list")
        ids.add(canon[j])
    return tuple(sorted(ids))


def _definite_root_vectors(sub: Sublattice) -> List[LatticeVector]:
    if sub.rank == 0:
        return []
    gram = sub.gram()
    coords = en.definite_vectors([[-x for x in row] for row in gram], 2)
    return [sub.from_coords(c) for c in coords]


def _key_orbit(key: RootSetKey, n: int, limit: int = 3 * 10 ** 6) -> Set[RootSetKey]:
    _, _, gens = pg.root_action_context(n)
    canon = _canon_table(n)
    seen = {key}
    frontier = [key]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                img = tuple(sorted({canon[g[i]] for i in s}))
                if img not in seen:
                    if len(seen) >= limit:
                        raise UnsupportedError("class orbit exceeded the safety limit")
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def are_conjugate(g: Isometry, h: Isometry, n: int) -> bool:
    """Whether two K-fixing involutions are conjugate in the K-stabilizer."""
    if n > 7:
        raise UnsupportedError("conjugacy search is limited to n <= 7; "
                               "compare invariants instead")
    for x in (g, h):
        if not stabilizes_canonical_class(x, n):
            raise InputError("isometry does not fix the canonical class")
        if not x.is_involution():
            raise InputError("not an involution")
    kg = minus_root_key(g, n)
    kh = minus_root_key(h, n)
    if len(kg) != len(kh):
        return False
    if kg == kh:
        return True
    return kh in _key_orbit(kg, n)


def orthogonal_root_sets(n: int) -> List[OrthogonalRootSet]:
    """Maximal orthogonal root sets, one per orbit of the group, up to sign."""
    if not 2 <= n <= 8:
        raise InputError("orthogonal root sets require 2 <= n <= 8")
    roots, _ = pg._roots_and_index(n)
    return [orthogonal_root_set(n, [roots[i] for i in rep])
            for rep in _maximal_orthogonal_reps(n)]


def _maximal_orthogonal_reps(n: int) -> List[FrozenSet[int]]:
    """One maximal orthogonal root set per orbit, as sets of pair ids."""
    import networkx as nx

    roots, index = pg._roots_and_index(n)
    canon = _canon_table(n)
    pos_ids = sorted({canon[i] for i in range(len(roots))})
    graph = nx.Graph()
    graph.add_nodes_from(pos_ids)
    for a, b in itertools.combinations(pos_ids, 2):
        if roots[a].dot(roots[b]) == 0:
            graph.add_edge(a, b)
    reps: List[FrozenSet[int]] = []
    seen: Set[RootSetKey] = set()
    for clique in nx.find_cliques(graph):
        key = tuple(sorted(clique))
        if key in seen:
            continue
        seen |= _key_orbit(key, n)
        reps.append(frozenset(key))
    return reps


@lru_cache(maxsize=None)
def classify_involutions(n: int) -> Tuple[InvolutionClass, ...]:
    """All conjugacy classes of involutions fixing K, for 1 <= n <= 8."""
    if not 1 <= n <= 8:
        raise InputError("classification supports 1 <= n <= 8")
    if n == 1:
        return ()
    roots, _ = pg._roots_and_index(n)

    # candidate involutions: nonempty subsets of one maximal set per orbit
    candidates: Dict[RootSetKey, OrthogonalRootSet] = {}
    for rep in _maximal_orthogonal_reps(n):
        members = sorted(rep)
        for size in range(1, len(members) + 1):
            for sub in itertools.combinations(members, size):
                rset = orthogonal_root_set(n, [roots[i] for i in sub])
                g = rset.involution()
                key = minus_root_key(g, n)
                candidates.setdefault(key, rset)

    # group by cheap invariants, then split groups by orbit equality
    groups: Dict[tuple, List[Tuple[RootSetKey, OrthogonalRootSet]]] = {}
    inv_cache: Dict[RootSetKey, InvolutionInvariant] = {}
    for key, rset in sorted(candidates.items()):
        inv = invariant_of(rset.involution(), n)
        inv_cache[key] = inv
        groups.setdefault(inv.merge_key(), []).append((key, rset))

    classes: List[Tuple[RootSetKey, OrthogonalRootSet, Optional[int]]] = []
    for mk in sorted(groups):
        pending = list(groups[mk])
        if n <= 7:
            while pending:
                key, rset = pending.pop(0)
                orb = _key_orbit(key, n)
                pending = [(k, r) for k, r in pending if k not in orb]
                classes.append((key, rset, len(orb)))
        else:
            # classes here are told apart by the invariants alone
            key, rset = pending[0]
            classes.append((key, rset, None))

    out = []
    by_m: Dict[int, int] = {}
    order = sorted(classes, key=lambda item: (len(item[1]), inv_cache[item[0]].merge_key()))
    counts: Dict[int, int] = {}
    for key, rset, _size in order:
        counts[len(rset)] = counts.get(len(rset), 0) + 1
    for key, rset, size in order:
        m = len(rset)
        by_m[m] = by_m.get(m, 0) + 1
        suffix = chr(ord("a") + by_m[m] - 1) if counts[m] > 1 else ""
        g = rset.involution()
        inv = invariant_of(g, n, with_flags=True)
        out.append(InvolutionClass(
            n=n,
            label=f"m{m}{suffix}",
            roots=rset,
            representative=g,
            invariant=inv,
            minus_root_key=key,
            class_size=size,
        ))
    return tuple(out)


def find_class(g: Isometry, n: int) -> InvolutionClass:
    """The classification entry conjugate to the given involution."""
    if not stabilizes_canonical_class(g, n):
        raise InputError("isometry does not fix the canonical class")
    if not g.is_involution() or g.is_identity():
        raise InputError("expected a nontrivial involution")
    key = minus_root_key(g, n)
    cand = [c for c in classify_involutions(n) if len(c.minus_root_key) == len(key)]
    for c in cand:
        if c.minus_root_key == key:
            return c
    if n <= 7:
        for c in cand:
            if key in _key_orbit(c.minus_root_key, n):
                return c
    else:
        # class separation at n=8 rests on the invariant tuple
        inv = invariant_of(g, n).merge_key()
        for c in cand:
            if c.invariant.merge_key() == inv:
                return c
    raise InputError("involution does not match any class")


def all_involutions(n: int) -> List[pg.Perm]:
    """Every involution in the group, by full closure; small n only."""
    if n > 6:
        raise UnsupportedError("full enumeration is limited to n <= 6")
    _, _, gens = pg.root_action_context(n)
    degree = len(enumerate_roots(n))
    elems = pg.bfs_closure(gens, degree)
    ident = pg.perm_identity(degree)
    return [p for p in elems if p != ident and pg.perm_compose(p, p) == ident]
