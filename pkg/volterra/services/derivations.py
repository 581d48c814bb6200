#!/usr/bin/env python3
"""
Derivation service.

Der(A) is the nullspace of the homogeneous Leibniz system in the m^2 unknowns
d_11, d_12, ..., d_mm (row i of D is D(e_i)). One equation per unordered
basis pair i <= j and output coordinate k.
"""

import logging
from fractions import Fraction
from itertools import permutations
from typing import List, Optional, Sequence, Set, Tuple

from volterra.config import get_settings
from volterra.errors import CapacityError, DimensionError, IndexRangeError, ShapeError
from volterra.models.algebra import AlgebraSpec, LinearMap
from volterra.models.reports import DerivationSpace
from volterra.services.algebra import HALF, ZERO, basis_products, product_coordinates
from volterra.services.rational import as_rational, in_span, nullspace

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


def linear_map(entries) -> LinearMap:
    """Build a LinearMap from any square matrix of exact scalars"""
    rows = [list(row) for row in entries]
    m = len(rows)
    if m == 0 or any(len(row) != m for row in rows):
        raise ShapeError("linear map must be a non-empty square matrix")
    try:
        return LinearMap(entries=tuple(tuple(as_rational(v) for v in row) for row in rows))
    except TypeError as e:
        raise ShapeError(f"linear map: {e}")


def _map_from_flat(flat: Sequence[Fraction], m: int) -> LinearMap:
    return LinearMap(entries=tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(m)))


def leibniz_constraints(A: AlgebraSpec) -> List[List[Fraction]]:
    """Coefficient rows of D(e_i o e_j) - D(e_i) o e_j - e_i o D(e_j) over i <= j and k"""
    m = A.dim
    table = basis_products(A)
    rows = []
    for i in range(m):
        for j in range(i, m):
            c = table[i][j]
            for k in range(m):
                row = [ZERO] * (m * m)
                # D(e_i o e_j)_k = sum_l c_l d_lk
                for l in range(m):
                    if c[l]:
                        row[l * m + k] += c[l]
                # (D(e_i) o e_j)_k = sum_l d_il (e_l o e_j)_k
                for l in range(m):
                    coeff = table[l][j][k]
                    if coeff:
                        row[i * m + l] -= coeff
                # (e_i o D(e_j))_k = sum_l d_jl (e_i o e_l)_k
                for l in range(m):
                    coeff = table[i][l][k]
                    if coeff:
                        row[j * m + l] -= coeff
                if any(row):
                    rows.append(row)
    return rows


def derivation_space(A: AlgebraSpec, cap: Optional[int] = None) -> DerivationSpace:
    """Exact canonical basis of Der(A) (RREF in variable order d_11..d_mm)"""
    cap = cap if cap is not None else get_settings().derivation_solver_cap
    if A.dim > cap:
        raise CapacityError(f"derivation solver limited to dim <= {cap}, got {A.dim}")
    m = A.dim
    constraints = leibniz_constraints(A)
    basis = nullspace(constraints, m * m)
    logger.debug(f"dim {m}: {len(constraints)} Leibniz equations, derivation space of dim {len(basis)}")
    return DerivationSpace(dim_space=len(basis), basis=[_map_from_flat(v, m) for v in basis])


def leibniz_defect(A: AlgebraSpec, D: LinearMap, i: int, j: int) -> Tuple[Fraction, ...]:
    """D(e_i o e_j) - D(e_i) o e_j - e_i o D(e_j) for 1-based labels"""
    m = A.dim
    if D.dim != m:
        raise ShapeError(f"linear map has dim {D.dim}, algebra has dim {m}")
    for label in (i, j):
        if not (1 <= label <= m):
            raise IndexRangeError(f"index {label} outside 1..{m}")
    table = basis_products(A)
    ei = table[i - 1][i - 1]
    ej = table[j - 1][j - 1]
    lhs = D.apply(table[i - 1][j - 1])
    first = product_coordinates(A.p, D.image_of_basis(i), ej)
    second = product_coordinates(A.p, ei, D.image_of_basis(j))
    return tuple(lhs[k] - first[k] - second[k] for k in range(m))


def verify_derivation(A: AlgebraSpec, D: LinearMap) -> bool:
    """Leibniz identity on every ordered basis pair, evaluated with the algebra product"""
    if D.dim != A.dim:
        raise ShapeError(f"linear map has dim {D.dim}, algebra has dim {A.dim}")
    m = A.dim
    return all(
        not any(leibniz_defect(A, D, i, j))
        for i in range(1, m + 1)
        for j in range(1, m + 1)
    )


def half_set(A: AlgebraSpec, i: int) -> Set[int]:
    """I_i = {j != i : p_{ij,i} = 1/2}, 1-based"""
    if isinstance(i, bool) or not isinstance(i, int) or not (1 <= i <= A.dim):
        raise IndexRangeError(f"index {i!r} outside 1..{A.dim}")
    return {j + 1 for j in range(A.dim) if j != i - 1 and A.p[i - 1][j] == HALF}


def check_support_lemma(A: AlgebraSpec, space: DerivationSpace) -> bool:
    """Every basis derivation has d_ij = 0 whenever j != i and j is outside I_i"""
    m = A.dim
    for D in space.basis:
        for i in range(m):
            allowed = half_set(A, i + 1)
            for j in range(m):
                if j != i and (j + 1) not in allowed and D.entries[i][j] != 0:
                    return False
    return True


def has_zero_row_sums(D: LinearMap) -> bool:
    return all(sum(row, ZERO) == 0 for row in D.entries)


def _require_dim3(A: AlgebraSpec) -> None:
    if A.dim != 3:
        raise DimensionError(f"defined for 3-dimensional algebras, got dim {A.dim}")


def nontrivial_derivation_triple(A: AlgebraSpec) -> Optional[Triple]:
    """First permutation (i, j, k) of 1,2,3 with p_{ij,i} = 1/2 and p_{ik,i} = p_{jk,j}"""
    _require_dim3(A)
    p = A.p
    for i, j, k in permutations(range(3)):
        if p[i][j] == HALF and p[i][k] == p[j][k]:
            return (i + 1, j + 1, k + 1)
    return None


def exists_nontrivial_derivation_3d(A: AlgebraSpec) -> bool:
    return nontrivial_derivation_triple(A) is not None


def classify_derivations_3d(A: AlgebraSpec) -> Tuple[str, Optional[Triple]]:
    """"A" (two-parameter family), "B" (all coefficients 1/2) or "trivial", with the distinguished triple"""
    triple = nontrivial_derivation_triple(A)
    if triple is None:
        return "trivial", None
    i, _, k = triple
    if A.p[i - 1][k - 1] == HALF:
        return "B", triple
    return "A", triple


def case_a_map(a, b, pair: Tuple[int, int] = (1, 2), dim: int = 3) -> LinearMap:
    """D(e_i) = a(e_i - e_j), D(e_j) = b(e_i - e_j), zero elsewhere"""
    i, j = pair
    if i == j or not (1 <= i <= dim and 1 <= j <= dim):
        raise IndexRangeError(f"pair {pair} is not two distinct labels in 1..{dim}")
    a, b = as_rational(a), as_rational(b)
    entries = [[ZERO] * dim for _ in range(dim)]
    entries[i - 1][i - 1], entries[i - 1][j - 1] = a, -a
    entries[j - 1][i - 1], entries[j - 1][j - 1] = b, -b
    return LinearMap(entries=tuple(tuple(row) for row in entries))


def case_b_map(a, b, c, d) -> LinearMap:
    """D(e_1) = c e_1 + d e_2 - (c + d) e_3, D(e_2) = b(e_1 - e_2), D(e_3) = a(e_1 - e_3)"""
    a, b, c, d = (as_rational(v) for v in (a, b, c, d))
    return LinearMap(entries=(
        (c, d, -(c + d)),
        (b, -b, ZERO),
        (a, ZERO, -a),
    ))


def zero_row_sum_basis(m: int) -> List[LinearMap]:
    """Canonical basis of all m x m maps with zero row sums"""
    constraints = []
    for i in range(m):
        row = [ZERO] * (m * m)
        for j in range(m):
            row[i * m + j] = Fraction(1)
        constraints.append(row)
    return [_map_from_flat(v, m) for v in nullspace(constraints, m * m)]


def span_contains(space: DerivationSpace, D: LinearMap) -> bool:
    """Exact test that D lies in the span of the space's basis"""
    ncols = D.dim * D.dim
    return in_span(D.flat(), [b.flat() for b in space.basis], ncols)


def combine(basis: Sequence[LinearMap], coefficients: Sequence[Fraction]) -> LinearMap:
    """Linear combination sum_t c_t B_t"""
    if not basis:
        raise ShapeError("cannot combine an empty basis")
    m = basis[0].dim
    entries = [[ZERO] * m for _ in range(m)]
    for coeff, B in zip(coefficients, basis):
        coeff = as_rational(coeff)
        for i in range(m):
            for j in range(m):
                entries[i][j] += coeff * B.entries[i][j]
    return LinearMap(entries=tuple(tuple(row) for row in entries))
