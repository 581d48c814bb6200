from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra_strategies import algebras
from volterra.errors import CapacityError, DimensionError, IndexRangeError, ShapeError
from volterra.services.algebra import from_upper, symmetric_algebra
from volterra.services.corpus import grid_algebras, random_algebras
from volterra.services.derivations import (
    case_a_map,
    case_b_map,
    check_support_lemma,
    classify_derivations_3d,
    combine,
    derivation_space,
    exists_nontrivial_derivation_3d,
    half_set,
    has_zero_row_sums,
    leibniz_defect,
    linear_map,
    nontrivial_derivation_triple,
    span_contains,
    verify_derivation,
    zero_row_sum_basis,
)
from volterra.services.rational import nullspace, rank
from volterra.services.structure import canonical_associative, extremal_algebras


def test_symmetric_derivations_are_zero_row_sum_maps(symmetric3):
    space = derivation_space(symmetric3)
    assert space.dim_space == 6
    assert space.basis == zero_row_sum_basis(3)


def test_symmetric_dim4():
    assert derivation_space(symmetric_algebra(4)).dim_space == 12


def test_case_a_basis(case_a):
    space = derivation_space(case_a)
    assert space.dim_space == 2
    assert space.basis == [case_a_map(1, 0), case_a_map(0, 1)]


@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (F(2, 3), F(-5, 7)), (3, 3)])
def test_case_a_maps_are_derivations(case_a, a, b):
    assert verify_derivation(case_a, case_a_map(a, b))


def test_case_a_with_other_pair():
    # p_13,1 = 1/2 and p_12,1 = p_32,3 = 1/4
    A = from_upper(3, {(1, 2): F(1, 4), (1, 3): F(1, 2), (2, 3): F(3, 4)})
    assert nontrivial_derivation_triple(A) == (1, 3, 2)
    assert classify_derivations_3d(A) == ("A", (1, 3, 2))
    assert verify_derivation(A, case_a_map(F(1, 3), 2, pair=(1, 3)))
    assert not verify_derivation(A, case_a_map(1, 0, pair=(1, 2)))
    assert derivation_space(A).dim_space == 2


def test_case_b_family(symmetric3):
    space = derivation_space(symmetric3)
    params = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    family = [case_b_map(*values) for values in params]
    assert rank([D.flat() for D in family], 9) == 4
    for D in family:
        assert verify_derivation(symmetric3, D)
        assert span_contains(space, D)
    assert verify_derivation(symmetric3, case_b_map(F(1, 2), -3, F(7, 5), 1))


def test_classify(case_a, symmetric3, canonical3):
    assert classify_derivations_3d(case_a) == ("A", (1, 2, 3))
    assert classify_derivations_3d(symmetric3)[0] == "B"
    assert classify_derivations_3d(canonical3) == ("trivial", None)


def test_half_set(case_a):
    assert half_set(case_a, 1) == {2}
    assert half_set(case_a, 2) == {1}
    assert half_set(case_a, 3) == set()
    with pytest.raises(IndexRangeError):
        half_set(case_a, 4)


def test_support_lemma(case_a, symmetric3):
    for A in (case_a, symmetric3):
        assert check_support_lemma(A, derivation_space(A))


@pytest.mark.parametrize("value", [F(1, 4), F(3, 4), F(1, 3)])
def test_no_half_coefficient_means_no_derivation(value):
    A = from_upper(3, {(1, 2): value, (1, 3): value, (2, 3): value})
    assert not exists_nontrivial_derivation_3d(A)
    assert derivation_space(A).dim_space == 0


def test_condition_needs_dim3():
    with pytest.raises(DimensionError):
        exists_nontrivial_derivation_3d(symmetric_algebra(4))


def test_condition_over_grid():
    for A in grid_algebras([F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]):
        space = derivation_space(A)
        assert exists_nontrivial_derivation_3d(A) == (space.dim_space > 0)
        assert all(has_zero_row_sums(D) for D in space.basis)
        assert check_support_lemma(A, space)


def test_canonical_has_only_zero_derivation():
    for m in range(1, 6):
        assert derivation_space(canonical_associative(m)).dim_space == 0


def test_extremal_dim4_has_only_zero_derivation():
    for A in extremal_algebras(4):
        assert derivation_space(A).dim_space == 0


def test_random_combinations_are_derivations(case_a, symmetric3):
    rng = np.random.default_rng(11)
    for A in (case_a, symmetric3):
        basis = derivation_space(A).basis
        for _ in range(20):
            coeffs = [F(int(n), int(d)) for n, d in zip(rng.integers(-9, 10, len(basis)), rng.integers(1, 7, len(basis)))]
            assert verify_derivation(A, combine(basis, coeffs))


@settings(max_examples=40, deadline=None)
@given(algebras(min_dim=2, max_dim=4), st.data())
def test_verify_matches_span_membership(A, data):
    m = A.dim
    small = st.integers(min_value=-2, max_value=2)
    D = linear_map([[data.draw(small) for _ in range(m)] for _ in range(m)])
    space = derivation_space(A)
    assert verify_derivation(A, D) == span_contains(space, D)
    for B in space.basis:
        assert verify_derivation(A, B)


def test_leibniz_defect_of_identity(case_a):
    identity = linear_map([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    # D(e_1 o e_1) - 2 e_1 o e_1 = -e_1
    assert leibniz_defect(case_a, identity, 1, 1) == (-1, 0, 0)
    assert not verify_derivation(case_a, identity)


def test_shape_errors(case_a):
    with pytest.raises(ShapeError):
        verify_derivation(case_a, linear_map([[0, 0], [0, 0]]))
    with pytest.raises(ShapeError):
        linear_map([[0, 0], [0]])
    with pytest.raises(ShapeError):
        combine([], [])


def test_solver_cap():
    with pytest.raises(CapacityError):
        derivation_space(symmetric_algebra(4), cap=3)


@pytest.mark.slow
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_no_half_corpus_has_trivial_derivations(m):
    for A in random_algebras(m, seed=500 + m, count=500, exclude_half=True):
        assert derivation_space(A).dim_space == 0


def test_basis_maps_are_nonzero(case_a):
    assert case_a_map(0, 0).is_zero()
    assert not any(D.is_zero() for D in derivation_space(case_a).basis)


def test_maps_outside_the_span_are_not_derivations(case_a, symmetric3):
    rng = np.random.default_rng(19)
    half_but_first = from_upper(4, {(1, 2): 0, (1, 3): F(1, 2), (1, 4): F(1, 2), (2, 3): F(1, 2), (2, 4): F(1, 2), (3, 4): F(1, 2)})
    corpus = [case_a, symmetric3, half_but_first, symmetric_algebra(4), canonical_associative(3)]
    checked = 0
    while checked < 100:
        A = corpus[checked % len(corpus)]
        m = A.dim
        space = derivation_space(A)
        flats = [D.flat() for D in space.basis]
        # orthogonal complement of Der(A) in the m*m map coordinates
        complement = nullspace(flats, m * m)
        assert complement
        offset = [F(int(c)) for c in rng.integers(-3, 4, size=len(complement))]
        if not any(offset):
            continue
        outside = [sum((c * v[t] for c, v in zip(offset, complement)), F(0)) for t in range(m * m)]
        if space.basis:
            coeffs = [F(int(c)) for c in rng.integers(-3, 4, size=len(space.basis))]
            inside = combine(space.basis, coeffs).flat()
        else:
            inside = [F(0)] * (m * m)
        D = linear_map([[inside[i * m + j] + outside[i * m + j] for j in range(m)] for i in range(m)])
        assert not span_contains(space, D)
        assert not verify_derivation(A, D)
        checked += 1
