"""Lattices, sublattices, isometries, and exact linear algebra."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import delpezzo.exactlinalg as xl
from delpezzo import (
    InputError,
    Isometry,
    blowup_quadric_lattice,
    del_pezzo_lattice,
    fixed_and_antifixed,
    identity_isometry,
    inner,
    is_even,
    full_sublattice,
    orthogonal_complement,
    quadric_lattice,
    saturate,
    short_vectors,
    signature,
    span,
)
from delpezzo.weyl import canonical_class, reflection


def test_del_pezzo_gram_is_diagonal_one_minus_ones():
    for n in range(0, 10):
        lat = del_pezzo_lattice(n)
        assert lat.rank == n + 1
        for i in range(n + 1):
            for j in range(n + 1):
                expect = (1 if i == 0 else -1) if i == j else 0
                assert lat.gram[i][j] == expect
        assert signature(full_sublattice(lat)) == (1, n, 0)


def test_canonical_class_square_is_nine_minus_n():
    for n in range(0, 9):
        k = canonical_class(n)
        assert k.norm() == 9 - n
        assert k.coords == (-3,) + (1,) * n


def test_quadric_lattice_is_even_hyperbolic():
    lat = quadric_lattice()
    assert lat.gram == ((0, 1), (1, 0))
    assert signature(full_sublattice(lat)) == (1, 1, 0)
    assert is_even(span(lat, (lat.basis_vector(0), lat.basis_vector(1))))


def test_blowup_quadric_lattice_gram():
    lat = blowup_quadric_lattice(4)
    assert lat.rank == 5
    assert lat.gram[0][1] == 1 and lat.gram[0][0] == 0 and lat.gram[1][1] == 0
    for i in range(2, 5):
        assert lat.gram[i][i] == -1


def test_inner_symmetry_and_bilinearity():
    lat = del_pezzo_lattice(4)
    u = lat.vector((1, 2, -1, 0, 3))
    v = lat.vector((0, 1, 1, -2, 1))
    w = lat.vector((2, 0, 0, 1, -1))
    assert u.dot(v) == v.dot(u)
    assert (u + w).dot(v) == u.dot(v) + w.dot(v)
    assert (3 * u).dot(v) == 3 * u.dot(v)


def test_inner_rejects_foreign_vectors():
    u = del_pezzo_lattice(2).vector((1, 0, 0))
    v = del_pezzo_lattice(3).vector((1, 0, 0, 0))
    with pytest.raises(InputError):
        u.dot(v)


def test_isometry_constructor_validates_form_preservation():
    lat = del_pezzo_lattice(2)
    with pytest.raises(InputError):
        Isometry(lat, ((1, 0, 0), (0, 1, 1), (0, 0, 1)))


def test_reflection_preserves_form_and_squares_to_identity():
    lat = del_pezzo_lattice(3)
    r = reflection(lat.vector((0, 1, -1, 0)))
    assert r.is_involution()
    assert (r @ r).is_identity()
    k = canonical_class(3)
    assert r.apply(k) == k


def test_saturate_recovers_primitive_sublattice():
    lat = del_pezzo_lattice(3)
    doubled = span(lat, (lat.vector((0, 2, 0, 0)), lat.vector((0, 0, 2, 2))))
    sat = saturate(doubled)
    assert sat.rank == 2
    assert sat.coords_of(lat.vector((0, 1, 0, 0))) is not None
    assert sat.coords_of(lat.vector((0, 0, 1, 1))) is not None


def test_orthogonal_complement_of_canonical_class():
    for n in range(2, 7):
        lat = del_pezzo_lattice(n)
        kperp = orthogonal_complement(span(lat, (canonical_class(n),)))
        assert kperp.rank == n
        k = canonical_class(n)
        for b in kperp.basis:
            assert b.dot(k) == 0


def test_fixed_and_antifixed_split_ranks():
    lat = del_pezzo_lattice(4)
    r = reflection(lat.vector((0, 1, -1, 0, 0)))
    plus, minus = fixed_and_antifixed(r)
    assert plus.rank == 4 and minus.rank == 1
    assert minus.gram() == ((-2,),)


def test_short_vectors_negative_definite_complete():
    lat = del_pezzo_lattice(3)
    kperp = orthogonal_complement(span(lat, (canonical_class(3),)))
    res = short_vectors(kperp, -2)
    assert res.complete
    assert len(res.vectors) == 8  # the roots of the rank-3 system


def test_sublattice_determinant_and_from_coords():
    lat = del_pezzo_lattice(2)
    sub = span(lat, (lat.vector((0, 1, -1)), lat.vector((0, 1, 1))))
    assert abs(sub.determinant()) == 4
    v = sub.from_coords((1, 1))
    assert v.coords == (0, 2, 0)
    assert sub.coords_of(v) == (1, 1)


def test_identity_isometry_fixes_everything():
    lat = del_pezzo_lattice(5)
    g = identity_isometry(lat)
    assert g.is_identity() and g.is_involution()
    plus, minus = fixed_and_antifixed(g)
    assert plus.rank == 6 and minus.rank == 0


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
                min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_bareiss_determinant_matches_cofactor_expansion(m):
    def cof_det(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] *
                   cof_det([row[:j] + row[j + 1:] for row in a[1:]])
                   for j in range(len(a)))
    assert xl.det(m) == cof_det(m)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
                min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(m):
    for col in xl.kernel(m):
        assert all(sum(m[i][j] * col[j] for j in range(2)) == 0
                   for i in range(2))


def test_sylvester_signature_on_known_forms():
    assert xl.sylvester_signature([[1, 0], [0, -1]]) == (1, 1, 0)
    assert xl.sylvester_signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert xl.sylvester_signature([[2, 0, 0], [0, -2, 0], [0, 0, 0]]) == (1, 1, 1)


def test_inverse_roundtrip():
    m = [[2, 1, 0], [1, 1, 0], [0, 3, 1]]
    inv = xl.inverse(m)
    prod = xl.mat_mul(m, inv)
    assert all(prod[i][j] == (1 if i == j else 0)
               for i in range(3) for j in range(3))
