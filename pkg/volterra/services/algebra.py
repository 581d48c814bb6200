#!/usr/bin/env python3
"""
Core genetic Volterra algebra service: validated construction, the algebra
product, the quadratic stochastic operator and the skew-matrix conversion.

Everything here is exact rational arithmetic on fractions.Fraction.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from volterra.errors import (
    ComplementError,
    IndexRangeError,
    RangeError,
    ShapeError,
    SimplexError,
)
from volterra.models.algebra import AlgebraElement, AlgebraSpec, SimplexPoint, SkewMatrix
from volterra.services.rational import as_rational

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def _coerce_matrix(dim: int, matrix, label: str) -> List[List[Fraction]]:
    if dim < 1:
        raise ShapeError(f"dimension must be positive, got {dim}")
    rows = list(matrix)
    if len(rows) != dim:
        raise ShapeError(f"{label} has {len(rows)} rows, expected {dim}")
    result = []
    for r, row in enumerate(rows):
        row = list(row)
        if len(row) != dim:
            raise ShapeError(f"{label} row {r + 1} has {len(row)} entries, expected {dim}")
        try:
            result.append([as_rational(value) for value in row])
        except TypeError as e:
            raise ShapeError(f"{label} row {r + 1}: {e}")
    return result


def _coerce_vector(coords, label: str = "vector") -> Tuple[Fraction, ...]:
    try:
        return tuple(as_rational(value) for value in coords)
    except TypeError as e:
        raise ShapeError(f"{label}: {e}")


def build_from_coeffs(dim: int, p) -> AlgebraSpec:
    """Validate a reduced heredity matrix p[i][j] = p_{ij,i} and build the algebra.

    Raises RangeError for entries outside [0, 1], ComplementError when
    p[i][j] + p[j][i] != 1 or a diagonal entry differs from 1, ShapeError for
    a non dim x dim input.
    """
    rows = _coerce_matrix(dim, p, "coefficient matrix")
    for i in range(dim):
        for j in range(dim):
            value = rows[i][j]
            if value < 0 or value > 1:
                raise RangeError(f"p[{i + 1}][{j + 1}] = {value} outside [0, 1]")
    for i in range(dim):
        if rows[i][i] != ONE:
            raise ComplementError(f"diagonal p[{i + 1}][{i + 1}] = {rows[i][i]} must be 1")
        for j in range(i + 1, dim):
            if rows[i][j] + rows[j][i] != ONE:
                raise ComplementError(
                    f"p[{i + 1}][{j + 1}] + p[{j + 1}][{i + 1}] = {rows[i][j] + rows[j][i]} != 1"
                )
    return AlgebraSpec(dim=dim, p=tuple(tuple(row) for row in rows))


def from_upper(dim: int, upper) -> AlgebraSpec:
    """Build from a mapping {(i, j): p_{ij,i}} over 1-based pairs i < j; complements are filled in"""
    rows = [[ONE if i == j else None for j in range(dim)] for i in range(dim)]
    for (i, j), value in upper.items():
        if not (1 <= i < j <= dim):
            raise IndexRangeError(f"pair ({i},{j}) is not an ordered pair in 1..{dim}")
        value = as_rational(value)
        rows[i - 1][j - 1] = value
        rows[j - 1][i - 1] = ONE - value
    missing = [(i + 1, j + 1) for i in range(dim) for j in range(dim) if rows[i][j] is None]
    if missing:
        raise ShapeError(f"coefficients missing for pairs {missing}")
    return build_from_coeffs(dim, rows)


def symmetric_algebra(dim: int) -> AlgebraSpec:
    """All off-diagonal p equal to 1/2"""
    return build_from_coeffs(dim, [[ONE if i == j else HALF for j in range(dim)] for i in range(dim)])


def basis_vector(dim: int, i: int) -> AlgebraElement:
    """e_i for a 1-based label"""
    _check_label(dim, i)
    return AlgebraElement(coords=tuple(ONE if k == i - 1 else ZERO for k in range(dim)))


def is_simplex_point(coords) -> bool:
    values = _coerce_vector(coords)
    return bool(values) and all(v >= 0 for v in values) and sum(values, ZERO) == ONE


def make_simplex_point(coords) -> SimplexPoint:
    values = _coerce_vector(coords, "simplex point")
    if not values:
        raise SimplexError("simplex point must have at least one coordinate")
    negative = [k + 1 for k, v in enumerate(values) if v < 0]
    if negative:
        raise SimplexError(f"negative coordinates at {negative}")
    total = sum(values, ZERO)
    if total != ONE:
        raise SimplexError(f"coordinates sum to {total}, expected 1")
    return SimplexPoint(coords=values)


def _check_label(dim: int, i: int) -> None:
    if not isinstance(i, int) or isinstance(i, bool) or not (1 <= i <= dim):
        raise IndexRangeError(f"index {i!r} outside 1..{dim}")


def _vector_of(A: AlgebraSpec, x, label: str) -> Tuple[Fraction, ...]:
    coords = x.coords if isinstance(x, (AlgebraElement, SimplexPoint)) else _coerce_vector(x, label)
    if len(coords) != A.dim:
        raise ShapeError(f"{label} has length {len(coords)}, algebra dimension is {A.dim}")
    return coords


def product_coordinates(p, x: Sequence[Fraction], y: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """(x o y)_k = x_k y_k + sum_{i != k} p_{ik,k} (x_i y_k + x_k y_i), with p_{ik,k} = p[k][i]"""
    m = len(x)
    result = []
    for k in range(m):
        xk, yk = x[k], y[k]
        total = xk * yk
        row = p[k]
        for i in range(m):
            if i == k:
                continue
            coeff = row[i]
            if coeff:
                total += coeff * (x[i] * yk + xk * y[i])
        result.append(total)
    return tuple(result)


def multiply(A: AlgebraSpec, x, y) -> AlgebraElement:
    """Exact product x o y in the genetic Volterra algebra A"""
    xs = _vector_of(A, x, "left factor")
    ys = _vector_of(A, y, "right factor")
    return AlgebraElement(coords=product_coordinates(A.p, xs, ys))


@lru_cache(maxsize=256)
def basis_products(A: AlgebraSpec) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ...]:
    """table[i][j] = coordinates of e_i o e_j (0-based), computed once per algebra"""
    m = A.dim
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            coords = [ZERO] * m
            if i == j:
                coords[i] = ONE
            else:
                coords[i] = A.p[i][j]
                coords[j] = A.p[j][i]
            row.append(tuple(coords))
        table.append(tuple(row))
    return tuple(table)


def heredity_tensor(A: AlgebraSpec) -> List[List[List[Fraction]]]:
    """Full tensor t[i][j][k] = p_{ij,k} (0-based), zero whenever k is not i or j"""
    table = basis_products(A)
    return [[list(table[i][j]) for j in range(A.dim)] for i in range(A.dim)]


def apply_qso(A: AlgebraSpec, x) -> SimplexPoint:
    """One step of the quadratic stochastic operator: x' = x o x"""
    point = x if isinstance(x, SimplexPoint) else make_simplex_point(x)
    if point.dim != A.dim:
        raise ShapeError(f"point has length {point.dim}, algebra dimension is {A.dim}")
    if not is_simplex_point(point.coords):
        raise SimplexError("input is not on the simplex")
    return SimplexPoint(coords=product_coordinates(A.p, point.coords, point.coords))


def l1_norm(x) -> Fraction:
    coords = x.coords if isinstance(x, (AlgebraElement, SimplexPoint)) else _coerce_vector(x)
    return sum((abs(v) for v in coords), ZERO)


def build_skew(dim: int, a) -> SkewMatrix:
    """Validate a skew-symmetric matrix with entries in [-1, 1]"""
    rows = _coerce_matrix(dim, a, "skew matrix")
    for i in range(dim):
        if rows[i][i] != 0:
            raise ShapeError(f"skew matrix diagonal a[{i + 1}][{i + 1}] = {rows[i][i]} must be 0")
        for k in range(dim):
            if abs(rows[i][k]) > 1:
                raise RangeError(f"|a[{i + 1}][{k + 1}]| = {abs(rows[i][k])} exceeds 1")
            if rows[i][k] != -rows[k][i]:
                raise ShapeError(f"a[{i + 1}][{k + 1}] != -a[{k + 1}][{i + 1}]")
    return SkewMatrix(dim=dim, a=tuple(tuple(row) for row in rows))


def to_skew(A: AlgebraSpec) -> SkewMatrix:
    """a[i][k] = 2 p_{ik,k} - 1 = 2 p[k][i] - 1 off the diagonal"""
    m = A.dim
    a = tuple(
        tuple(ZERO if i == k else 2 * A.p[k][i] - 1 for k in range(m))
        for i in range(m)
    )
    return SkewMatrix(dim=m, a=a)


def from_skew(S: SkewMatrix) -> AlgebraSpec:
    """Inverse of to_skew: p_{ik,k} = (1 + a[i][k]) / 2"""
    m = S.dim
    for i in range(m):
        for k in range(m):
            if abs(S.a[i][k]) > 1:
                raise RangeError(f"|a[{i + 1}][{k + 1}]| = {abs(S.a[i][k])} exceeds 1")
    p = [[ONE if k == i else (1 + S.a[i][k]) / 2 for i in range(m)] for k in range(m)]
    return build_from_coeffs(m, p)


def skew_step(S: SkewMatrix, x) -> Tuple[Fraction, ...]:
    """Exact V(x)_k = x_k (1 + sum_i a_ik x_i)"""
    coords = x.coords if isinstance(x, SimplexPoint) else _coerce_vector(x, "point")
    if len(coords) != S.dim:
        raise ShapeError(f"point has length {len(coords)}, matrix order is {S.dim}")
    m = S.dim
    return tuple(
        coords[k] * (1 + sum((S.a[i][k] * coords[i] for i in range(m)), ZERO))
        for k in range(m)
    )


def relabel_algebra(A: AlgebraSpec, perm: Sequence[int]) -> AlgebraSpec:
    """Algebra B with e_perm(i) o e_perm(j) in B mirroring e_i o e_j in A.

    ``perm`` is a 1-based permutation of 1..m; B.p[perm(i)][perm(j)] = A.p[i][j].
    """
    m = A.dim
    if sorted(perm) != list(range(1, m + 1)):
        raise IndexRangeError(f"{list(perm)} is not a permutation of 1..{m}")
    p = [[ZERO] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            p[perm[i] - 1][perm[j] - 1] = A.p[i][j]
    return AlgebraSpec(dim=m, p=tuple(tuple(row) for row in p))
