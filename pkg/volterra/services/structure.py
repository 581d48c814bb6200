#!/usr/bin/env python3
"""
Structure service: associativity (direct, by coefficient conditions, by
tournament), tournaments of skew matrices, extremality, the canonical
associative algebra and tournament isomorphism.
"""

import logging
from itertools import combinations, permutations, product
from math import factorial
from typing import List, Optional, Sequence, Tuple

from volterra.config import get_settings
from volterra.errors import CapacityError, ComplementError, ZeroEntryError
from volterra.models.algebra import AlgebraSpec, SkewMatrix, Tournament
from volterra.models.reports import (
    AssociativityReport,
    ExtremalSweepSummary,
    TournamentReport,
    TripleWitness,
)
from volterra.services.algebra import (
    ONE,
    ZERO,
    basis_products,
    build_from_coeffs,
    product_coordinates,
    to_skew,
)
from volterra.services.rational import as_rational, format_vector

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


# ----------------------------------------------------------------------------
# Associativity
# ----------------------------------------------------------------------------

def _associativity_failures(A: AlgebraSpec, limit: Optional[int]) -> Tuple[bool, List[TripleWitness]]:
    table = basis_products(A)
    m = A.dim
    witnesses = []
    associative = True
    for i, j, k in product(range(m), repeat=3):
        # table[i][i] is e_i
        left = product_coordinates(A.p, table[i][i], table[j][k])
        right = product_coordinates(A.p, table[i][j], table[k][k])
        if left != right:
            associative = False
            if limit is None or len(witnesses) < limit:
                witnesses.append(
                    TripleWitness(
                        triple=(i + 1, j + 1, k + 1),
                        left=format_vector(left),
                        right=format_vector(right),
                    )
                )
            elif limit is not None:
                break
    return associative, witnesses


def is_associative_direct(A: AlgebraSpec, witness_cap: Optional[int] = None) -> Tuple[bool, List[TripleWitness]]:
    """Check e_i o (e_j o e_k) = (e_i o e_j) o e_k on all m^3 basis triples.

    Returns the verdict and up to ``witness_cap`` failing triples.
    """
    cap = witness_cap if witness_cap is not None else get_settings().witness_cap
    return _associativity_failures(A, cap)


def is_associative_theorem(A: AlgebraSpec) -> bool:
    """All p in {0, 1} and, on ordered distinct triples,
    p_{jk,j} p_{ij,i} + p_{jk,k} p_{ik,i} = p_{ij,i} p_{ik,i}"""
    p = A.p
    m = A.dim
    for i in range(m):
        for j in range(m):
            if p[i][j] not in (ZERO, ONE):
                return False
    for i, j, k in permutations(range(m), 3):
        if p[j][k] * p[i][j] + p[k][j] * p[i][k] != p[i][j] * p[i][k]:
            return False
    return True


def check_lemma_pp0(p_jkj, p_iji, p_jkk, p_iki, p_ijj, p_ikk) -> bool:
    """Evaluate both forms of the triple identity and return whether they agree.

    First form:  p_jk,j p_ij,i + p_jk,k p_ik,i = p_ij,i p_ik,i
    Second form: p_ij,i p_ik,k + p_ij,j p_jk,k = p_jk,k p_ik,k
    """
    values = [as_rational(v) for v in (p_jkj, p_iji, p_jkk, p_iki, p_ijj, p_ikk)]
    p_jkj, p_iji, p_jkk, p_iki, p_ijj, p_ikk = values
    for label, first, second in (
        ("jk", p_jkj, p_jkk),
        ("ij", p_iji, p_ijj),
        ("ik", p_iki, p_ikk),
    ):
        if first + second != ONE:
            raise ComplementError(f"p_{label} coefficients sum to {first + second}, expected 1")
        if not (0 <= first <= 1):
            raise ComplementError(f"p_{label} coefficient {first} outside [0, 1]")
    first_form = p_jkj * p_iji + p_jkk * p_iki == p_iji * p_iki
    second_form = p_iji * p_ikk + p_ijj * p_jkk == p_jkk * p_ikk
    return first_form == second_form


# ----------------------------------------------------------------------------
# Tournaments
# ----------------------------------------------------------------------------

def is_extremal(S: SkewMatrix) -> bool:
    m = S.dim
    return all(abs(S.a[i][k]) == 1 for i in range(m) for k in range(m) if i != k)


def build_tournament(S: SkewMatrix) -> Tournament:
    """Arrow k -> i iff a[k][i] < 0"""
    m = S.dim
    zeros = [(i + 1, k + 1) for i in range(m) for k in range(i + 1, m) if S.a[i][k] == 0]
    if zeros:
        raise ZeroEntryError(zeros)
    beats = tuple(tuple(k != i and S.a[k][i] < 0 for i in range(m)) for k in range(m))
    return Tournament(dim=m, beats=beats)


def has_cyclic_triple(T: Tournament) -> Optional[Triple]:
    """First cyclic triple (i, j, k) with i -> j -> k -> i, in lexicographic order of vertex sets"""
    b = T.beats
    for i, j, k in combinations(range(T.dim), 3):
        if b[i][j] and b[j][k] and b[k][i]:
            return (i + 1, j + 1, k + 1)
        if b[i][k] and b[k][j] and b[j][i]:
            return (i + 1, k + 1, j + 1)
    return None


def is_associative_tournament(A: AlgebraSpec) -> bool:
    """Associative iff extremal and the tournament has no cyclic triple"""
    S = to_skew(A)
    if not is_extremal(S):
        return False
    return has_cyclic_triple(build_tournament(S)) is None


def from_tournament(T: Tournament) -> AlgebraSpec:
    """Extremal algebra whose tournament is T (k -> i gives p[k][i] = 1)"""
    m = T.dim
    p = [[ONE if k == i or T.beats[k][i] else ZERO for i in range(m)] for k in range(m)]
    return build_from_coeffs(m, p)


def canonical_associative(m: int) -> AlgebraSpec:
    """p_{ij,i} = 1 if i >= j else 0, so e_i o e_j = e_max(i,j)"""
    return build_from_coeffs(m, [[ONE if i >= j else ZERO for j in range(m)] for i in range(m)])


def tournaments_isomorphic(
    T1: Tournament, T2: Tournament, cap: Optional[int] = None
) -> Optional[Tuple[int, ...]]:
    """Vertex permutation sigma (1-based, sigma[v-1] = image of v) carrying T1 onto T2.

    Backtracking over vertices with out-degree pruning. None when the
    tournaments are not isomorphic or have different orders.
    """
    cap = cap if cap is not None else get_settings().isomorphism_cap
    if T1.dim != T2.dim:
        return None
    m = T1.dim
    if m > cap:
        raise CapacityError(f"tournament isomorphism limited to order <= {cap}, got {m}")
    if T1.beats == T2.beats:
        return tuple(range(1, m + 1))
    if T1.score_sequence() != T2.score_sequence():
        return None

    deg1 = [sum(row) for row in T1.beats]
    deg2 = [sum(row) for row in T2.beats]
    b1, b2 = T1.beats, T2.beats
    # most constrained vertices first
    order = sorted(range(m), key=lambda v: (deg1.count(deg1[v]), v))
    image = [-1] * m
    used = [False] * m

    def extend(depth: int) -> bool:
        if depth == m:
            return True
        v = order[depth]
        for w in range(m):
            if used[w] or deg2[w] != deg1[v]:
                continue
            consistent = True
            for u in order[:depth]:
                if b1[v][u] != b2[w][image[u]]:
                    consistent = False
                    break
            if not consistent:
                continue
            image[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
        image[v] = -1
        return False

    if not extend(0):
        return None
    return tuple(w + 1 for w in image)


def is_algebra_isomorphism(A: AlgebraSpec, B: AlgebraSpec, perm: Sequence[int]) -> bool:
    """True iff the basis permutation e_i -> e_perm(i) maps e_i o e_j in A to e_perm(i) o e_perm(j) in B"""
    if A.dim != B.dim or sorted(perm) != list(range(1, A.dim + 1)):
        return False
    m = A.dim
    for i in range(m):
        for j in range(m):
            if A.p[i][j] != B.p[perm[i] - 1][perm[j] - 1]:
                return False
    return True


def extremal_isomorphism(A: AlgebraSpec, B: AlgebraSpec) -> Optional[Tuple[int, ...]]:
    """Verified basis permutation between two extremal algebras, via their tournaments"""
    SA, SB = to_skew(A), to_skew(B)
    if not (is_extremal(SA) and is_extremal(SB)):
        return None
    perm = tournaments_isomorphic(build_tournament(SA), build_tournament(SB))
    if perm is None:
        return None
    if not is_algebra_isomorphism(A, B, perm):
        # the tournament criterion failed to transfer; caller treats None as a witness
        logger.warning(f"tournament permutation {perm} is not an algebra isomorphism")
        return None
    return perm


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------

def associativity_report(A: AlgebraSpec, witness_cap: Optional[int] = None) -> AssociativityReport:
    direct, witnesses = is_associative_direct(A, witness_cap)
    by_theorem = is_associative_theorem(A)
    S = to_skew(A)
    extremal = is_extremal(S)
    by_tournament = None
    cyclic = None
    if extremal:
        cyclic = has_cyclic_triple(build_tournament(S))
        by_tournament = cyclic is None
    report = AssociativityReport(
        direct=direct,
        by_theorem=by_theorem,
        by_tournament=by_tournament,
        extremal=extremal,
        cyclic_triple=cyclic,
        witnesses=witnesses,
    )
    if not report.consistent:
        logger.warning(
            f"Associativity methods disagree: direct={direct} theorem={by_theorem} tournament={by_tournament}"
        )
    return report


def tournament_report(A: AlgebraSpec) -> TournamentReport:
    S = to_skew(A)
    T = build_tournament(S)
    cyclic = has_cyclic_triple(T)
    return TournamentReport(
        dim=T.dim,
        adjacency=[[int(flag) for flag in row] for row in T.beats],
        edges=T.edges(),
        score_sequence=list(T.score_sequence()),
        extremal=is_extremal(S),
        transitive=cyclic is None,
        cyclic_triple=cyclic,
    )


def extremal_algebras(dim: int, cap: Optional[int] = None) -> List[AlgebraSpec]:
    """All 2^C(m,2) extremal algebras; bit b of the pattern sets p[i][j] = 1 for the b-th pair i < j"""
    cap = cap if cap is not None else get_settings().extremal_exhaustive_cap
    if dim > cap:
        raise CapacityError(f"extremal enumeration limited to dim <= {cap}, got {dim}")
    pairs = list(combinations(range(dim), 2))
    algebras = []
    for mask in range(1 << len(pairs)):
        p = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                p[i][j] = ONE
            else:
                p[j][i] = ONE
        algebras.append(AlgebraSpec(dim=dim, p=tuple(tuple(row) for row in p)))
    return algebras


def sweep_extremal(dim: int, cap: Optional[int] = None) -> ExtremalSweepSummary:
    """Exhaustive associativity/tournament census over the extremal algebras of one dimension"""
    # imported here: derivations imports structure for the Kadison check
    from volterra.services.derivations import derivation_space

    canonical_tournament = build_tournament(to_skew(canonical_associative(dim)))
    algebras = extremal_algebras(dim, cap)
    logger.info(f"Sweeping {len(algebras)} extremal algebras of dim {dim}")
    associative = cyclic_count = canonical_count = 0
    witnesses = []
    for index, A in enumerate(algebras):
        report = associativity_report(A, witness_cap=0)
        if not report.consistent:
            witnesses.append(f"#{index}: direct={report.direct} theorem={report.by_theorem} tournament={report.by_tournament}")
        if report.cyclic_triple is not None:
            cyclic_count += 1
        if report.direct:
            associative += 1
            T = build_tournament(to_skew(A))
            if tournaments_isomorphic(T, canonical_tournament) is not None:
                canonical_count += 1
            else:
                witnesses.append(f"#{index}: associative but tournament not transitive")
            if derivation_space(A).dim_space != 0:
                witnesses.append(f"#{index}: associative algebra with nontrivial derivations")
    expected = factorial(dim)
    if associative != expected:
        witnesses.append(f"{associative} associative patterns, expected {expected}")
    for line in witnesses:
        logger.warning(f"Extremal sweep witness: {line}")
    return ExtremalSweepSummary(
        dim=dim,
        total=len(algebras),
        associative=associative,
        with_cyclic_triple=cyclic_count,
        isomorphic_to_canonical=canonical_count,
        expected_associative=expected,
        witnesses=witnesses,
    )

