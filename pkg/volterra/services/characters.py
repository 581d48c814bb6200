#!/usr/bin/env python3
"""
Characters h_E(x) = sum_{i in E} x_i of genetic Volterra algebras.

is_character decides via the coefficient condition (p_{ij,j} = 0 for every
i outside E and j inside E); verify_character_bruteforce checks
multiplicativity on all basis pairs and serves as the oracle.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Tuple

from volterra.config import get_settings
from volterra.errors import CapacityError, IndexRangeError
from volterra.models.algebra import AlgebraSpec
from volterra.models.reports import CharacterSet
from volterra.services.algebra import basis_products

logger = logging.getLogger(__name__)


def _normalize_subset(A: AlgebraSpec, E: Iterable[int]) -> Tuple[int, ...]:
    labels = set()
    for i in E:
        if isinstance(i, bool) or not isinstance(i, int) or not (1 <= i <= A.dim):
            raise IndexRangeError(f"index {i!r} outside 1..{A.dim}")
        labels.add(i)
    return tuple(sorted(labels))


def character_value(E: Iterable[int], x) -> Fraction:
    """h_E(x) for 1-based labels"""
    coords = getattr(x, "coords", x)
    return sum((coords[i - 1] for i in set(E)), Fraction(0))


def is_character(A: AlgebraSpec, E: Iterable[int]) -> bool:
    """True iff p_{ij,j} = 0 for every i not in E and j in E"""
    subset = set(_normalize_subset(A, E))
    for j in subset:
        for i in range(1, A.dim + 1):
            if i in subset:
                continue
            # p_{ij,j} = p_{ji,j} = p[j][i]
            if A.p[j - 1][i - 1] != 0:
                return False
    return True


def verify_character_bruteforce(A: AlgebraSpec, E: Iterable[int]) -> bool:
    """True iff h_E(e_i o e_j) = h_E(e_i) h_E(e_j) on all basis pairs"""
    subset = _normalize_subset(A, E)
    members = set(subset)
    table = basis_products(A)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = character_value(subset, table[i][j])
            rhs = (1 if i + 1 in members else 0) * (1 if j + 1 in members else 0)
            if lhs != rhs:
                return False
    return True


def enumerate_characters(
    A: AlgebraSpec,
    include_trivial: bool = False,
    cap: Optional[int] = None,
) -> List[CharacterSet]:
    """All character sets sorted by (|E|, lexicographic)"""
    cap = cap if cap is not None else get_settings().character_enumeration_cap
    if A.dim > cap:
        raise CapacityError(f"character enumeration over 2^{A.dim} subsets exceeds cap dim <= {cap}")
    m = A.dim
    found = []
    # combinations() yields lexicographic order within each size
    for size in range(m + 1):
        trivial = size == 0 or size == m
        if trivial and not include_trivial:
            continue
        for subset in combinations(range(1, m + 1), size):
            if is_character(A, subset):
                found.append(CharacterSet(subset=subset, is_trivial=trivial))
    logger.debug(f"Found {len(found)} character sets for dim {m} algebra")
    return found
