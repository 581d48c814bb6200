from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra_strategies import algebra_with_points, algebra_with_vectors, algebras, simplex_points
from volterra.errors import (
    ComplementError,
    IndexRangeError,
    RangeError,
    ShapeError,
    SimplexError,
    VolterraError,
)
from volterra.models.algebra import SkewMatrix
from volterra.services.algebra import (
    apply_qso,
    basis_vector,
    build_from_coeffs,
    build_skew,
    from_skew,
    heredity_tensor,
    l1_norm,
    make_simplex_point,
    multiply,
    skew_step,
    symmetric_algebra,
    to_skew,
)
from volterra.services.structure import canonical_associative


def test_build_symmetric_dim2():
    A = build_from_coeffs(2, [[1, F(1, 2)], [F(1, 2), 1]])
    assert A.dim == 2
    assert A.coefficient(1, 2) == F(1, 2)


def test_build_rejects_broken_complement():
    with pytest.raises(ComplementError):
        build_from_coeffs(2, [[1, F(3, 4)], [F(1, 2), 1]])


def test_build_canonical_pattern():
    p = [[1 if i >= j else 0 for j in range(3)] for i in range(3)]
    A = build_from_coeffs(3, p)
    assert A == canonical_associative(3)


def test_build_errors():
    with pytest.raises(RangeError):
        build_from_coeffs(2, [[1, F(3, 2)], [F(-1, 2), 1]])
    with pytest.raises(ComplementError):
        build_from_coeffs(2, [[F(1, 2), F(1, 2)], [F(1, 2), 1]])
    with pytest.raises(ShapeError):
        build_from_coeffs(2, [[1, 0, 0], [1, 1, 0]])
    with pytest.raises(ShapeError):
        build_from_coeffs(2, [[1, 0.5], [0.5, 1]])


def test_build_accepts_rational_strings():
    A = build_from_coeffs(2, [["1", "2/4"], ["1/2", "1"]])
    assert A.p[0][1] == F(1, 2)


def test_errors_share_base_class():
    with pytest.raises(VolterraError):
        build_from_coeffs(2, [[1, F(3, 4)], [F(1, 2), 1]])


def test_basis_squares_are_idempotent(case_a):
    for i in range(1, 4):
        e = basis_vector(3, i)
        assert multiply(case_a, e, e) == e


def test_basis_product_uses_heredity_pair(case_a):
    product = multiply(case_a, basis_vector(3, 1), basis_vector(3, 3))
    assert product.coords == (F(1, 4), 0, F(3, 4))


def test_canonical_product_picks_larger_index(canonical3):
    assert multiply(canonical3, basis_vector(3, 2), basis_vector(3, 1)) == basis_vector(3, 2)


def test_multiply_shape_mismatch(case_a):
    with pytest.raises(ShapeError):
        multiply(case_a, [1, 0], [0, 1])


def test_basis_vector_label_range():
    with pytest.raises(IndexRangeError):
        basis_vector(3, 0)
    with pytest.raises(IndexError):
        basis_vector(3, 4)


def test_qso_fixes_vertices(case_a):
    for i in range(1, 4):
        e = make_simplex_point(basis_vector(3, i).coords)
        assert apply_qso(case_a, e) == e


def test_qso_symmetric_barycenter():
    A = symmetric_algebra(2)
    x = make_simplex_point([F(1, 2), F(1, 2)])
    assert apply_qso(A, x).coords == (F(1, 2), F(1, 2))


def test_qso_rejects_off_simplex(case_a):
    with pytest.raises(SimplexError):
        apply_qso(case_a, [F(1, 2), F(1, 3), 0])
    with pytest.raises(SimplexError):
        apply_qso(case_a, [F(3, 2), F(-1, 2), 0])


def test_to_skew_symmetric_is_zero():
    S = to_skew(symmetric_algebra(4))
    assert all(v == 0 for row in S.a for v in row)


def test_to_skew_canonical_signs():
    S = to_skew(canonical_associative(4))
    for i in range(4):
        for k in range(4):
            if i < k:
                assert S.a[i][k] == 1
            elif i > k:
                assert S.a[i][k] == -1


def test_from_skew_zero_matrix():
    A = from_skew(build_skew(3, [[0] * 3 for _ in range(3)]))
    assert A == symmetric_algebra(3)


def test_from_skew_dominant_second_type():
    A = from_skew(build_skew(2, [[0, 1], [-1, 0]]))
    # p_12,2 stored at p[1][0]
    assert A.p[1][0] == 1
    assert A.p[0][1] == 0


def test_from_skew_range_error():
    S = SkewMatrix(dim=2, a=((F(0), F(2)), (F(-2), F(0))))
    with pytest.raises(RangeError):
        from_skew(S)
    with pytest.raises(RangeError):
        build_skew(2, [[0, 2], [-2, 0]])


def test_build_skew_rejects_asymmetry():
    with pytest.raises(ShapeError):
        build_skew(2, [[0, F(1, 2)], [F(1, 2), 0]])


def test_heredity_tensor_volterra_condition(case_a):
    t = heredity_tensor(case_a)
    for i in range(3):
        for j in range(3):
            assert sum(t[i][j]) == 1
            for k in range(3):
                if k not in (i, j):
                    assert t[i][j][k] == 0
                assert t[i][j][k] == t[j][i][k]


@settings(max_examples=100, deadline=None)
@given(algebras(min_dim=2, max_dim=6))
def test_skew_round_trip(A):
    assert from_skew(to_skew(A)) == A
    S = to_skew(A)
    assert to_skew(from_skew(S)) == S


@settings(max_examples=100, deadline=None)
@given(algebra_with_points())
def test_skew_form_matches_qso(case):
    A, x = case
    assert apply_qso(A, x).coords == skew_step(to_skew(A), x)


@settings(max_examples=100, deadline=None)
@given(algebra_with_points())
def test_qso_stays_on_simplex(case):
    A, x = case
    y = apply_qso(A, x)
    assert sum(y.coords) == 1
    assert all(v >= 0 for v in y.coords)


@settings(max_examples=100, deadline=None)
@given(algebra_with_vectors())
def test_product_commutative(case):
    A, x, y = case
    assert multiply(A, x, y) == multiply(A, y, x)


@settings(max_examples=100, deadline=None)
@given(algebra_with_vectors())
def test_l1_submultiplicative(case):
    A, x, y = case
    assert l1_norm(multiply(A, x, y)) <= l1_norm(x) * l1_norm(y)


@settings(max_examples=50, deadline=None)
@given(algebra_with_points(), st.data())
def test_product_of_simplex_points_sums_to_one(case, data):
    A, x = case
    y = data.draw(simplex_points(A.dim))
    assert sum(multiply(A, x, y).coords) == 1
