"""Hypothesis strategies shared by the algebra tests"""

from fractions import Fraction

from hypothesis import strategies as st

from volterra.services.algebra import from_upper, make_simplex_point

coefficients = st.fractions(min_value=0, max_value=1, max_denominator=16)
scalars = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@st.composite
def algebras(draw, min_dim=2, max_dim=5, values=coefficients):
    m = draw(st.integers(min_value=min_dim, max_value=max_dim))
    upper = {
        (i, j): draw(values)
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
    }
    return from_upper(m, upper)


@st.composite
def vectors(draw, m):
    return tuple(draw(st.lists(scalars, min_size=m, max_size=m)))


@st.composite
def simplex_points(draw, m):
    weights = draw(st.lists(st.integers(min_value=0, max_value=12), min_size=m, max_size=m))
    if sum(weights) == 0:
        weights[draw(st.integers(min_value=0, max_value=m - 1))] = 1
    total = sum(weights)
    return make_simplex_point([Fraction(w, total) for w in weights])


@st.composite
def algebra_with_points(draw, min_dim=2, max_dim=5):
    A = draw(algebras(min_dim, max_dim))
    return A, draw(simplex_points(A.dim))


@st.composite
def algebra_with_vectors(draw, min_dim=2, max_dim=5):
    A = draw(algebras(min_dim, max_dim))
    return A, draw(vectors(A.dim)), draw(vectors(A.dim))
