from volterra.models.algebra import (
    AlgebraElement,
    AlgebraFile,
    AlgebraSpec,
    LinearMap,
    SimplexPoint,
    SkewMatrix,
    Tournament,
)
from volterra.models.reports import (
    AlgebraResult,
    AssociativityReport,
    CharacterSet,
    ConjectureReport,
    CorpusDescriptor,
    DerivationSpace,
    ExtremalSweepSummary,
    LocalCandidateSpace,
    LocalCheckResult,
    SweepReport,
    TournamentReport,
    Trajectory,
    TripleWitness,
)
