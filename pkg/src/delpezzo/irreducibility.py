"""Reducibility verdicts, machine-checkable certificates, and splittings.

A K-fixing involution is reducible when it admits one of five kinds of
witness (see criteria).  The verdict is Irreducible only when every route
is closed by an exact argument; a bounded search that merely found
nothing leaves the verdict Unknown.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import InputError, UnsupportedError
from . import criteria
from . import enumeration as en
from . import exactlinalg as xl
from .lattice import (
    Isometry,
    Lattice,
    LatticeVector,
    Sublattice,
    del_pezzo_lattice,
    fixed_and_antifixed,
    full_sublattice,
    is_even,
    orthogonal_complement,
    span,
)
from .weyl import canonical_class

REDUCIBLE = "Reducible"
IRREDUCIBLE = "Irreducible"
UNKNOWN = "Unknown"

_WITNESS_KINDS = {
    "a": "FixedNormPlus1",
    "b": "FixedHyperbolicPair",
    "c": "FixedNormMinus1",
    "d": "SwappedOrFixedMinus1Pair",
    "e": "AntiFixedNormMinus1",
}

# obstruction kinds by priority
_EVEN_REASONS = {"plus_even_norms", "plus_even_products"}
_MOD2_REASONS = {"mod2_unsolvable"}
_ANTIFIXED_REASONS = {"minus_even_norms"}


@dataclass(frozen=True)
class ReducibilityCertificate:
    """Witness or obstruction backing a reducibility verdict."""

    kind: str
    witnesses: Tuple[Tuple[int, ...], ...]
    narrative: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witnesses": [list(w) for w in self.witnesses],
            "narrative": self.narrative,
        }

    @staticmethod
    def from_json(data: dict) -> "ReducibilityCertificate":
        return ReducibilityCertificate(
            kind=str(data["kind"]),
            witnesses=tuple(tuple(int(x) for x in w) for w in data.get("witnesses", [])),
            narrative=str(data.get("narrative", "")),
        )

    def verify(self, g: Isometry) -> bool:
        """Re-check the certified statement against the involution."""
        lat = g.lattice
        try:
            vs = [lat.vector(w) for w in self.witnesses]
        except InputError:
            return False
        k = self.kind
        if k == "FixedNormPlus1":
            return (len(vs) == 1 and vs[0].norm() == 1 and g.apply(vs[0]) == vs[0])
        if k == "FixedHyperbolicPair":
            return (len(vs) == 2
                    and all(v.norm() == 0 and g.apply(v) == v for v in vs)
                    and vs[0].dot(vs[1]) == 1)
        if k == "FixedNormMinus1":
            return (len(vs) == 1 and vs[0].norm() == -1 and g.apply(vs[0]) == vs[0])
        if k == "SwappedOrFixedMinus1Pair":
            return (len(vs) == 2
                    and all(v.norm() == -1 for v in vs)
                    and vs[0].dot(vs[1]) == 0
                    and g.apply(vs[0]) == vs[1] and g.apply(vs[1]) == vs[0])
        if k == "AntiFixedNormMinus1":
            return (len(vs) == 1 and vs[0].norm() == -1 and g.apply(vs[0]) == -vs[0])
        if k in ("EvenFixedLatticeObstruction", "Mod2Obstruction",
                 "AntiFixedObstruction", "ExhaustedSearchObstruction"):
            verdict = check_reducible(g)
            return (verdict.status == IRREDUCIBLE
                    and verdict.certificate is not None
                    and verdict.certificate.kind == k
                    and verdict.certificate.narrative == self.narrative)
        return False


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: Optional[ReducibilityCertificate]
    height_bound: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "height_bound": self.height_bound,
        }


def _narrative(results) -> str:
    return ";".join(f"{name}:{res.reason}" for name, res in results)


def _obstruction_kind(results) -> str:
    reasons = {res.reason for _, res in results}
    if reasons & _EVEN_REASONS:
        return "EvenFixedLatticeObstruction"
    if reasons & _MOD2_REASONS:
        return "Mod2Obstruction"
    if reasons & _ANTIFIXED_REASONS:
        return "AntiFixedObstruction"
    return "ExhaustedSearchObstruction"


def check_reducible(g: Isometry, n: Optional[int] = None,
                    height_bound: Optional[int] = None) -> Verdict:
    """Decide reducibility of a K-fixing involution of the blowup lattice."""
    if n is None:
        n = g.lattice.rank - 1
    if g.lattice != del_pezzo_lattice(n):
        raise InputError("isometry is not on the rank n+1 blowup lattice")
    if not 2 <= n <= 8:
        raise InputError("reducibility check supports 2 <= n <= 8")
    if not g.is_involution():
        raise InputError("not an involution")
    bound = height_bound if height_bound is not None else criteria.height_bound_default()
    data = criteria.eigen_data(g, canonical_class(n))
    results = []
    for name, res in criteria.iter_routes(data, n, bound):
        results.append((name, res))
        if res.status == criteria.WITNESS:
            cert = ReducibilityCertificate(
                kind=_WITNESS_KINDS[name],
                witnesses=tuple(w.coords for w in res.witnesses),
                narrative=_narrative(results),
            )
            return Verdict(REDUCIBLE, cert, bound)
    narrative = _narrative(results)
    if all(res.status == criteria.CLOSED for _, res in results):
        cert = ReducibilityCertificate(
            kind=_obstruction_kind(results),
            witnesses=(),
            narrative=narrative,
        )
        return Verdict(IRREDUCIBLE, cert, bound)
    return Verdict(UNKNOWN, None, bound)


def classify_with_verdicts(n: int):
    """Classification entries with the reducibility verdict filled in."""
    import dataclasses
    from .involutions import classify_involutions

    out = []
    for cls in classify_involutions(n):
        verdict = check_reducible(cls.representative, n)
        if verdict.status == UNKNOWN:
            raise InputError("catalog involution left undecided; "
                             "internal consistency failure")
        out.append(dataclasses.replace(cls, verdict=verdict.status))
    return tuple(out)


def irreducible_involution_classes(n: int) -> List:
    """Classification entries whose representatives are irreducible."""
    if n == 1:
        return []
    return [c for c in classify_with_verdicts(n) if c.verdict == IRREDUCIBLE]


def negation_twist(g: Isometry) -> Isometry:
    """The involution -g; it shares the reducibility verdict with g."""
    return g.negated()


# ---------------------------------------------------------------------------
# orthogonal splitting into standard pieces


@dataclass(frozen=True)
class SplitStep:
    """One split-off summand: a rank 1 or 2 negative definite block."""

    action: str                       # fix / swap / negate
    basis: Tuple[Tuple[int, ...], ...]  # ambient coordinates

    def to_json(self) -> dict:
        return {"action": self.action, "basis": [list(b) for b in self.basis]}


@dataclass(frozen=True)
class DecompositionLeaf:
    lattice_type: str                 # point / quadric / blowup
    basis: Tuple[Tuple[int, ...], ...]
    matrix: Tuple[Tuple[int, ...], ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "lattice_type": self.lattice_type,
            "basis": [list(b) for b in self.basis],
            "matrix": [list(r) for r in self.matrix],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class Decomposition:
    steps: Tuple[SplitStep, ...]
    leaf: DecompositionLeaf

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "leaf": self.leaf.to_json()}


def _sub_isometry(sub: Sublattice, g: Isometry) -> List[List[int]]:
    """Matrix of g restricted to an invariant sublattice, in its basis."""
    cols = []
    for v in sub.basis:
        c = sub.coords_of(g.apply(v))
        if c is None:
            raise InputError("sublattice is not invariant under the involution")
        cols.append(c)
    r = len(sub.basis)
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def _positive_anchor(gram) -> Optional[List[int]]:
    n = len(gram)
    for radius in (1, 2, 3, 4):
        if (2 * radius + 1) ** n > 5 * 10 ** 6:
            break
        for c in _box_norm_positive(gram, radius):
            return list(c)
    return None


def _box_norm_positive(gram, radius):
    import itertools
    n = len(gram)
    for c in itertools.product(range(-radius, radius + 1), repeat=n):
        if not any(c):
            continue
        val = sum(c[i] * gram[i][j] * c[j] for i in range(n) for j in range(n))
        if val > 0:
            yield c


def _canon_coords(c):
    """Sign-normalize so the first nonzero coordinate is positive."""
    for x in c:
        if x:
            return tuple(c) if x > 0 else tuple(-y for y in c)
    return tuple(c)


def _search_norm(sub: Sublattice, g_sub, target: int, fixed_sign: int,
                 bound: int) -> Optional[LatticeVector]:
    """A vector v in sub with the given norm and g(v) = fixed_sign * v."""
    r = sub.rank
    if r == 0:
        return None
    eig = xl.kernel(xl.mat_add_scaled_identity(g_sub, -fixed_sign))
    if not eig:
        return None
    b = [[eig[j][i] for j in range(len(eig))] for i in range(r)]
    gram_e = xl.mat_mul(xl.mat_mul(xl.transpose(b), sub.gram()), b)
    pos, neg, zero = xl.sylvester_signature(gram_e)
    best = None
    if zero == 0 and pos == 0:
        coords = en.definite_vectors([[-x for x in row] for row in gram_e], -target)
        best = min((_canon_coords(c) for c in coords), default=None)
    elif zero == 0 and neg == 0:
        coords = en.definite_vectors([list(r_) for r_ in gram_e], target)
        best = min((_canon_coords(c) for c in coords), default=None)
    else:
        anchor = _positive_anchor(gram_e)
        if anchor is None:
            return None
        for _, batch in en.anchored_norm_slices(gram_e, anchor, target, bound):
            if batch:
                best = min(_canon_coords(c) for c in batch)
                break
    if best is None:
        return None
    in_sub = [sum(eig[j][i] * best[j] for j in range(len(eig))) for i in range(r)]
    return sub.from_coords(in_sub)


def _search_swapped_pair(sub: Sublattice, g_sub, bound: int):
    """Orthogonal classes c1, c2 of square -1 in sub with g(c1) = c2."""
    r = sub.rank
    minus = xl.kernel(xl.mat_add_scaled_identity(g_sub, 1))
    plus = xl.kernel(xl.mat_add_scaled_identity(g_sub, -1))
    if not minus or not plus:
        return None

    def _restricted(eig):
        b = [[eig[j][i] for j in range(len(eig))] for i in range(r)]
        return b, xl.mat_mul(xl.mat_mul(xl.transpose(b), sub.gram()), b)

    bm, gm = _restricted(minus)
    bp, gp = _restricted(plus)
    pos, neg, zero = xl.sylvester_signature(gm)
    if pos or zero:
        return None
    a_list = [
        [sum(minus[j][i] * c[j] for j in range(len(minus))) for i in range(r)]
        for c in en.definite_vectors([[-x for x in row] for row in gm], 2)
    ]
    ppos, pneg, pzero = xl.sylvester_signature(gp)
    if pzero == 0 and ppos == 0:
        batches = [en.definite_vectors([[-x for x in row] for row in gp], 2)]
    else:
        anchor = _positive_anchor(gp)
        if anchor is None:
            return None
        batches = (b for _, b in en.anchored_norm_slices(gp, anchor, -2, bound))
    for b_coords in batches:
        b_list = [
            [sum(plus[j][i] * c[j] for j in range(len(plus))) for i in range(r)]
            for c in sorted(_canon_coords(c) for c in b_coords)
        ]
        for a in a_list:
            for b in b_list:
                if all((x - y) % 2 == 0 for x, y in zip(a, b)):
                    c1 = sub.from_coords([(x + y) // 2 for x, y in zip(a, b)])
                    c2 = sub.from_coords([(y - x) // 2 for x, y in zip(a, b)])
                    return c1, c2
    return None


def _leaf_type(sub: Sublattice) -> str:
    gram = sub.gram()
    pos, neg, zero = xl.sylvester_signature(gram)
    if sub.rank == 1 and pos == 1:
        return "point"
    if all(gram[i][i] % 2 == 0 for i in range(sub.rank)) and (pos, neg) == (1, 1):
        return "quadric"
    return "blowup"


def _leaf_verdict(sub: Sublattice, g_sub, bound: int) -> str:
    """Irreducible when both eigenparts provably carry no further witness."""
    r = sub.rank

    def _eig_gram(sign):
        eig = xl.kernel(xl.mat_add_scaled_identity(g_sub, -sign))
        b = [[eig[j][i] for j in range(len(eig))] for i in range(r)]
        return xl.mat_mul(xl.mat_mul(xl.transpose(b), sub.gram()), b)

    decided = True
    for sign in (1, -1):
        gram = _eig_gram(sign)
        if not gram:
            continue
        if all(gram[i][i] % 2 == 0 for i in range(len(gram))):
            continue  # even eigenlattice: no square -1 class
        pos, neg, zero = xl.sylvester_signature(gram)
        if zero == 0 and (pos == 0 or neg == 0):
            continue  # definite searches above were complete
        decided = False
    return IRREDUCIBLE if decided else UNKNOWN


def decompose(g: Isometry, n: Optional[int] = None,
              height_bound: Optional[int] = None) -> Decomposition:
    """Split off fixed, swapped, and antifixed (-1)-classes until none remain.

    Each split peels a unimodular negative definite block, so the ambient
    lattice is an orthogonal sum of the peeled blocks and the leaf.
    """
    if not g.is_involution():
        raise InputError("not an involution")
    if n is not None and g.lattice.rank != n + 1:
        raise InputError("index does not match the lattice rank")
    bound = height_bound if height_bound is not None else criteria.height_bound_default()
    lat = g.lattice
    current = full_sublattice(lat)
    steps: List[SplitStep] = []
    while True:
        g_sub = _sub_isometry(current, g)
        c = _search_norm(current, g_sub, -1, 1, bound)
        if c is not None:
            split_basis: Tuple[LatticeVector, ...] = (c,)
            action = "fix"
        else:
            pair = _search_swapped_pair(current, g_sub, bound)
            if pair is not None:
                split_basis = pair
                action = "swap"
            else:
                c = _search_norm(current, g_sub, -1, -1, bound)
                if c is not None:
                    split_basis = (c,)
                    action = "negate"
                else:
                    break
        steps.append(SplitStep(action, tuple(v.coords for v in split_basis)))
        # complement inside the current piece, re-expressed in the ambient
        comp = orthogonal_complement(span(lat, split_basis))
        inter = _intersect(current, comp)
        current = inter
        if current.rank == 0:
            break
    g_sub = _sub_isometry(current, g) if current.rank else []
    leaf = DecompositionLeaf(
        lattice_type=_leaf_type(current) if current.rank else "point",
        basis=tuple(v.coords for v in current.basis),
        matrix=tuple(tuple(r) for r in g_sub),
        verdict=_leaf_verdict(current, g_sub, bound) if current.rank else IRREDUCIBLE,
    )
    return Decomposition(tuple(steps), leaf)


def _intersect(a: Sublattice, b: Sublattice) -> Sublattice:
    """Intersection of two saturated sublattices of one ambient lattice."""
    lat = a.ambient
    ma = a.basis_matrix()
    mb = [[-v.coords[i] for v in b.basis] for i in range(lat.rank)]
    joint = [ra + rb for ra, rb in zip(ma, mb)]
    ker = xl.kernel(joint)
    basis = []
    for col in ker:
        xa = col[:a.rank]
        basis.append(a.from_coords(xa))
    cols = [[v.coords[i] for v in basis] for i in range(lat.rank)]
    if basis and xl.rational_rank(cols) != len(basis):
        raise InputError("intersection basis degenerate")
    return Sublattice(lat, tuple(basis), saturated=True)
