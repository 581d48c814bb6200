#!/usr/bin/env python3
"""
Local derivations.

A local derivation agrees at every point with some derivation. Constraining
only the basis vectors gives the candidate space: maps whose row i lies in
V_i = {D(e_i) : D in Der(A)}. In dimension 3 the candidates are exactly the
derivations; in higher dimensions probe_conjecture samples interior points
and narrows the candidates with the exact pointwise constraints.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from volterra.config import get_settings
from volterra.errors import DimensionError
from volterra.models.algebra import AlgebraSpec, LinearMap
from volterra.models.reports import (
    ConjectureReport,
    DerivationSpace,
    LocalCandidateSpace,
    LocalCheckResult,
)
from volterra.services.algebra import ZERO
from volterra.services.derivations import (
    combine,
    derivation_space,
    span_contains,
    verify_derivation,
)
from volterra.services.rational import canonical_basis, format_vector, in_span, nullspace

logger = logging.getLogger(__name__)


def _candidate_space(A: AlgebraSpec, space: DerivationSpace) -> LocalCandidateSpace:
    m = A.dim
    ranges = []
    flats = []
    for i in range(m):
        V_i = canonical_basis([D.entries[i] for D in space.basis], m)
        ranges.append(V_i)
        for v in V_i:
            entries = [[ZERO] * m for _ in range(m)]
            entries[i] = list(v)
            flats.append([value for row in entries for value in row])
    basis = canonical_basis(flats, m * m)
    maps = [LinearMap(entries=tuple(tuple(v[r * m:(r + 1) * m]) for r in range(m))) for v in basis]
    return LocalCandidateSpace(dim_space=len(maps), basis=maps, per_basis_ranges=ranges)


def _require_dim3(A: AlgebraSpec) -> None:
    if A.dim != 3:
        raise DimensionError(
            f"local derivation theorem covers dimension 3, got {A.dim}; use probe_conjecture"
        )


def local_candidate_space(A: AlgebraSpec, space: Optional[DerivationSpace] = None) -> LocalCandidateSpace:
    """Maps Delta with Delta(e_i) in V_i for each i, as a canonical basis"""
    _require_dim3(A)
    return _candidate_space(A, space if space is not None else derivation_space(A))


def local_equals_derivation(A: AlgebraSpec) -> bool:
    """Candidate space equals Der(A): same dimension and every candidate is a derivation"""
    return local_check(A).equal


def local_check(A: AlgebraSpec) -> LocalCheckResult:
    _require_dim3(A)
    space = derivation_space(A)
    candidates = _candidate_space(A, space)
    equal = candidates.dim_space == space.dim_space and all(
        verify_derivation(A, C) for C in candidates.basis
    )
    return LocalCheckResult(
        candidate_dim=candidates.dim_space,
        derivation_dim=space.dim_space,
        equal=equal,
    )


def in_pointwise_span(delta: LinearMap, x: Sequence[Fraction], space: DerivationSpace) -> bool:
    """Delta(x) in span{D(x) : D in Der(A)}, exact rank test"""
    m = delta.dim
    return in_span(delta.apply(x), [D.apply(x) for D in space.basis], m)


def sample_interior_points(
    m: int, count: int, seed: int, denominator_bound: int
) -> List[Tuple[Fraction, ...]]:
    """Interior simplex points with a common denominator q in [m, bound]"""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        q = int(rng.integers(m, denominator_bound + 1))
        # m - 1 distinct cuts in 1..q-1 split q into m positive parts
        cuts = np.sort(rng.choice(np.arange(1, q), size=m - 1, replace=False)) if m > 1 else np.array([], dtype=int)
        bounds = [0] + [int(c) for c in cuts] + [q]
        points.append(tuple(Fraction(bounds[t + 1] - bounds[t], q) for t in range(m)))
    return points


def probe_conjecture(
    A: AlgebraSpec,
    seed: int,
    samples: Optional[int] = None,
    denominator_bound: Optional[int] = None,
) -> ConjectureReport:
    """Experimental check that local derivations coincide with derivations in any dimension.

    PASS: candidates equal Der(A), or the candidates constrained by the
    sampled pointwise conditions collapse to Der(A).
    INCONCLUSIVE: a non-derivation survives every sampled constraint.
    FAIL: a derivation fails the pointwise rank test (a soundness error).
    """
    settings = get_settings()
    samples = samples if samples is not None else settings.probe_samples
    bound = denominator_bound if denominator_bound is not None else settings.probe_denominator_bound
    m = A.dim
    if m < 3:
        raise DimensionError(f"probe expects dimension >= 3, got {m}")
    bound = max(bound, m)

    space = derivation_space(A)
    candidates = _candidate_space(A, space)
    non_derivations = sum(1 for C in candidates.basis if not verify_derivation(A, C))
    points = sample_interior_points(m, samples, seed, bound)
    logger.info(
        f"Probing dim {m}: Der {space.dim_space}, candidates {candidates.dim_space}, {len(points)} points"
    )

    rng = np.random.default_rng(seed + 1)
    failing_points = []
    constraint_rows = []
    for x in points:
        images = [D.apply(x) for D in space.basis]
        if space.basis:
            coeffs = [Fraction(int(c)) for c in rng.integers(-3, 4, size=len(space.basis))]
            combination = combine(space.basis, coeffs)
            if not in_pointwise_span(combination, x, space):
                failing_points.append(format_vector(x))
        if candidates.dim_space > space.dim_space:
            # w . Delta(x) = 0 for every w annihilating span{D(x)}
            for w in nullspace(images, m) if images else _identity(m):
                constraint_rows.append([
                    sum((w[k] * value for k, value in enumerate(C.apply(x))), ZERO)
                    for C in candidates.basis
                ])

    witness_map = None
    if candidates.dim_space == space.dim_space:
        refined_dim = space.dim_space
    else:
        refined = nullspace(constraint_rows, candidates.dim_space) if constraint_rows else _identity(candidates.dim_space)
        refined_dim = len(refined)
        for coeffs in refined:
            survivor = combine(candidates.basis, coeffs)
            if not span_contains(space, survivor):
                witness_map = survivor
                break

    if failing_points:
        status = "FAIL"
        logger.warning(f"Rank test rejected a derivation at {len(failing_points)} points")
    elif refined_dim == space.dim_space:
        status = "PASS"
    else:
        status = "INCONCLUSIVE"

    return ConjectureReport(
        status=status,
        dim=m,
        seed=seed,
        samples=len(points),
        derivation_dim=space.dim_space,
        candidate_dim=candidates.dim_space,
        refined_dim=refined_dim,
        non_derivation_candidates=non_derivations,
        witness_map=witness_map if status == "INCONCLUSIVE" else None,
        failing_points=failing_points,
    )


def _identity(n: int) -> List[Tuple[Fraction, ...]]:
    return [tuple(Fraction(1) if r == c else ZERO for c in range(n)) for r in range(n)]
