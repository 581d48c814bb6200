#!/usr/bin/env python3
"""
Pydantic models for computed results: character sets, associativity and
tournament reports, derivation spaces, local-derivation probes, trajectories
and sweep reports.

Rational values that leave the exact core as report fields are canonical
"num/den" strings.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from volterra.models.algebra import LinearMap, RationalVector, SkewMatrix

Triple = Tuple[int, int, int]


class _Report(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class CharacterSet(_Report):
    """Index set E whose coordinate-sum functional h_E is multiplicative"""
    subset: Tuple[int, ...] = Field(..., description="Sorted 1-based indices of E")
    is_trivial: bool = Field(..., description="E is empty or the whole index set")


class TripleWitness(_Report):
    """Basis triple violating e_i o (e_j o e_k) = (e_i o e_j) o e_k"""
    triple: Triple = Field(..., description="1-based (i, j, k)")
    left: List[str] = Field(..., description="Coordinates of e_i o (e_j o e_k)")
    right: List[str] = Field(..., description="Coordinates of (e_i o e_j) o e_k")


class AssociativityReport(_Report):
    """Associativity decided three ways"""
    direct: bool = Field(..., description="All m^3 basis triples associate")
    by_theorem: bool = Field(..., description="Coefficient conditions (0/1 entries and the triple identity)")
    by_tournament: Optional[bool] = Field(None, description="Extremal and no cyclic triple; present iff extremal")
    extremal: bool = Field(..., description="|a_ik| = 1 off the diagonal")
    cyclic_triple: Optional[Triple] = Field(None, description="Cyclic triple of the tournament, when extremal")
    witnesses: List[TripleWitness] = Field(default_factory=list, description="Failing triples, capped")

    @property
    def consistent(self) -> bool:
        if self.direct != self.by_theorem:
            return False
        return self.by_tournament is None or self.by_tournament == self.direct


class TournamentReport(_Report):
    """Tournament of an algebra's skew matrix and its classification"""
    dim: int = Field(..., description="Number of vertices")
    adjacency: List[List[int]] = Field(..., description="beats[k][i] as 0/1, 0-based storage")
    edges: List[Tuple[int, int]] = Field(..., description="Arrows k -> i, 1-based")
    score_sequence: List[int] = Field(..., description="Sorted out-degrees")
    extremal: bool = Field(..., description="|a_ik| = 1 off the diagonal")
    transitive: bool = Field(..., description="No cyclic triple")
    cyclic_triple: Optional[Triple] = Field(None, description="Witness i -> j -> k -> i")


class ExtremalSweepSummary(_Report):
    """Counts over all 2^C(m,2) extremal algebras of one dimension"""
    dim: int = Field(..., description="Algebra dimension")
    total: int = Field(..., description="Sign patterns enumerated")
    associative: int = Field(..., description="Patterns passing the direct check")
    with_cyclic_triple: int = Field(..., description="Patterns whose tournament has a cyclic triple")
    isomorphic_to_canonical: int = Field(..., description="Associative patterns with a canonical-isomorphic tournament")
    expected_associative: int = Field(..., description="m! (one per labeling of the transitive tournament)")
    witnesses: List[str] = Field(default_factory=list, description="Theorem-violation descriptions")


class DerivationSpace(_Report):
    """Canonical basis of Der(A)"""
    dim_space: int = Field(..., ge=0, description="Dimension of the derivation space")
    basis: List[LinearMap] = Field(default_factory=list, description="RREF basis in variable order d_11..d_mm")


class LocalCandidateSpace(_Report):
    """Linear maps whose value at each basis vector is attained by some derivation"""
    dim_space: int = Field(..., ge=0, description="Dimension of the candidate space")
    basis: List[LinearMap] = Field(default_factory=list, description="Canonical basis")
    per_basis_ranges: List[List[RationalVector]] = Field(
        default_factory=list, description="For each i, a basis of V_i = {D(e_i) : D in Der(A)}"
    )


class LocalCheckResult(_Report):
    candidate_dim: int = Field(..., description="Dimension of the local candidate space")
    derivation_dim: int = Field(..., description="Dimension of the derivation space")
    equal: bool = Field(..., description="Candidates are exactly the derivations")


class ConjectureReport(_Report):
    """Outcome of the experimental local-derivation probe in any dimension"""
    status: Literal["PASS", "FAIL", "INCONCLUSIVE"] = Field(..., description="Probe verdict")
    dim: int = Field(..., description="Algebra dimension")
    seed: int = Field(..., description="Sampling seed")
    samples: int = Field(..., description="Sampled interior points")
    derivation_dim: int = Field(..., description="dim Der(A)")
    candidate_dim: int = Field(..., description="Dimension of the basis-constrained candidate space")
    refined_dim: int = Field(..., description="Candidate dimension after the sampled pointwise constraints")
    non_derivation_candidates: int = Field(..., description="Candidate basis maps failing the Leibniz rule")
    witness_map: Optional[LinearMap] = Field(None, description="Surviving non-derivation, when inconclusive")
    failing_points: List[List[str]] = Field(default_factory=list, description="Points where a derivation failed the rank test")


class Trajectory(_Report):
    """Float QSO trajectory with drift diagnostics"""
    skew: SkewMatrix = Field(..., description="Generating skew matrix")
    steps: int = Field(..., ge=0, description="Number of applied steps")
    points: List[Tuple[float, ...]] = Field(..., description="x_0 .. x_steps after renormalization")
    drift: List[float] = Field(default_factory=list, description="|sum - 1| before renormalization, per step")

    @property
    def max_drift(self) -> float:
        return max(self.drift, default=0.0)

    @property
    def dim(self) -> int:
        return self.skew.dim


class AlgebraResult(_Report):
    """Per-algebra outcome inside a sweep"""
    index: int = Field(..., description="Position in the corpus")
    matrix: List[List[str]] = Field(..., description="Reduced coefficient matrix")
    checks: Dict[str, Any] = Field(default_factory=dict, description="Suite-specific values")
    witnesses: List[str] = Field(default_factory=list, description="Theorem violations found")


class CorpusDescriptor(_Report):
    mode: Literal["random", "extremal-exhaustive", "grid-3d"] = Field(..., description="Generation mode")
    dim: int = Field(..., description="Algebra dimension")
    seed: Optional[int] = Field(None, description="Seed for random mode")
    count: Optional[int] = Field(None, description="Corpus size for random mode")
    grid: Optional[List[str]] = Field(None, description="Grid values for grid-3d mode")
    exclude_half: bool = Field(False, description="Random mode avoids p = 1/2")


class SweepReport(_Report):
    """Aggregated suite outcome over a corpus"""
    suite: Literal["characters", "associativity", "derivations", "local"] = Field(..., description="Suite run")
    corpus: CorpusDescriptor = Field(..., description="How the corpus was generated")
    results: List[AlgebraResult] = Field(default_factory=list, description="Per-algebra results sorted by index")
    counts: Dict[str, int] = Field(default_factory=dict, description="Aggregate counters")
    witnesses: List[str] = Field(default_factory=list, description="All theorem violations")

    @property
    def exit_code(self) -> int:
        return 1 if self.witnesses else 0
