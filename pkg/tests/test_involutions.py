"""Conjugacy classification of involutions in the canonical-class stabilizer."""
import pytest

import delpezzo.permgroup as pg
from delpezzo import (
    InputError,
    all_involutions,
    are_conjugate,
    classify_involutions,
    find_class,
    invariant_of,
    involution_from_roots,
    minus_root_key,
    orthogonal_root_set,
    zg_invariant,
)
from delpezzo.involutions import ZGInvariant
from delpezzo.lattice import del_pezzo_lattice, fixed_and_antifixed
from delpezzo.weyl import canonical_class

from conftest import random_group_element

CLASS_COUNTS = {1: 0, 2: 1, 3: 3, 4: 2, 5: 5, 6: 4, 7: 9, 8: 9}


def test_class_counts():
    for n, count in CLASS_COUNTS.items():
        assert len(classify_involutions(n)) == count


def test_representatives_are_nontrivial_k_fixing_involutions():
    for n in range(2, 9):
        k = canonical_class(n)
        for cls in classify_involutions(n):
            g = cls.representative
            assert g.is_involution() and not g.is_identity()
            assert g.apply(k) == k


def test_carter_exponent_equals_antifixed_rank():
    for n in range(2, 9):
        for cls in classify_involutions(n):
            _, minus = fixed_and_antifixed(cls.representative)
            assert minus.rank == cls.invariant.carter_exponent
            assert len(cls.roots) == cls.invariant.carter_exponent


def test_representative_is_product_of_its_roots():
    for n in (3, 5, 7):
        for cls in classify_involutions(n):
            g = involution_from_roots(n, cls.roots)
            assert g.matrix == cls.representative.matrix


def test_class_sizes_sum_to_involution_count_small_n():
    for n in (4, 5, 6):
        total = sum(c.class_size for c in classify_involutions(n))
        assert total == len(all_involutions(n))


def test_distinct_classes_are_not_conjugate():
    for n in (3, 5, 7):
        classes = classify_involutions(n)
        for i, a in enumerate(classes):
            for b in classes[i + 1:]:
                assert not are_conjugate(a.representative, b.representative, n)


def test_conjugates_land_in_same_class(rng):
    for n in (3, 5, 7):
        for cls in classify_involutions(n):
            h = random_group_element(n, rng)
            g = h @ cls.representative @ h.inverse()
            assert find_class(g, n).label == cls.label


def test_find_class_round_trip():
    for n in range(2, 9):
        for cls in classify_involutions(n):
            assert find_class(cls.representative, n).label == cls.label


def test_minus_root_key_is_conjugation_equivariant(rng):
    n = 5
    cls = classify_involutions(n)[2]
    g = cls.representative
    h = random_group_element(n, rng)
    conj = h @ g @ h.inverse()
    assert len(minus_root_key(conj, n)) == len(minus_root_key(g, n))


def test_w7_carter_multiplicities():
    labels = [c.label for c in classify_involutions(7)]
    assert labels == ["m1", "m2", "m3a", "m3b", "m4a", "m4b", "m5", "m6", "m7"]


def test_w8_carter_multiplicities():
    labels = [c.label for c in classify_involutions(8)]
    assert labels == ["m1", "m2", "m3", "m4a", "m4b", "m5", "m6", "m7", "m8"]


def test_w5_m2_classes_separated_by_fixed_kperp_determinant():
    classes = [c for c in classify_involutions(5)
               if c.invariant.carter_exponent == 2]
    dets = sorted(abs(c.invariant.kperp_fixed_det) for c in classes)
    assert len(classes) == 2 and dets[0] != dets[1]


def test_w7_m4_classes_separated_by_zg_invariant():
    classes = [c for c in classify_invariants_helper(7, 4)]
    zgs = {tuple(c.invariant.zg) for c in classes}
    assert zgs == {(0, 0, 4), (2, 2, 2)}


def classify_invariants_helper(n, m):
    return [c for c in classify_involutions(n)
            if c.invariant.carter_exponent == m]


def test_w8_m4_classes_separated_by_minus_root_count():
    classes = classify_invariants_helper(8, 4)
    counts = sorted(c.invariant.minus_root_count for c in classes)
    assert counts == [8, 24]


def test_zg_invariant_ranks_add_up():
    for n in (4, 6, 8):
        for cls in classify_involutions(n):
            zg = zg_invariant(cls.representative)
            assert zg.t + zg.c + 2 * zg.r == n + 1


def test_orthogonal_root_set_validates_input():
    lat = del_pezzo_lattice(4)
    with pytest.raises(InputError):
        # not mutually orthogonal
        orthogonal_root_set(4, (lat.vector((0, 1, -1, 0, 0)),
                                lat.vector((0, 0, 1, -1, 0))))


def test_invariant_of_rejects_non_k_fixing(rng):
    from delpezzo.weyl import reflection
    lat = del_pezzo_lattice(2)
    g = reflection(lat.vector((1, -1, -1)))  # moves K
    with pytest.raises(InputError):
        invariant_of(g, 2)


def test_invariant_json_is_serializable():
    import json
    for cls in classify_involutions(5):
        blob = json.dumps(cls.to_json())
        assert json.loads(blob)["label"] == cls.label
