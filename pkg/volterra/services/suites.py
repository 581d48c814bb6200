#!/usr/bin/env python3
"""
Sweep orchestration: run one oracle-equivalence suite over a corpus on a
thread pool and aggregate the results into a SweepReport.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.progress import track

from volterra.config import get_settings
from volterra.errors import UsageError
from volterra.models.algebra import AlgebraSpec
from volterra.models.reports import AlgebraResult, CorpusDescriptor, SweepReport
from volterra.services.algebra import HALF
from volterra.services.characters import is_character, verify_character_bruteforce
from volterra.services.derivations import (
    check_support_lemma,
    derivation_space,
    exists_nontrivial_derivation_3d,
    has_zero_row_sums,
    verify_derivation,
)
from volterra.services.local import local_check
from volterra.services.rational import format_matrix
from volterra.services.structure import (
    associativity_report,
    canonical_associative,
    extremal_isomorphism,
)

logger = logging.getLogger(__name__)
progress_console = Console(stderr=True)

SUITES = ("characters", "associativity", "derivations", "local")

# Each check returns (values for the result row, counters to aggregate, witnesses)
CheckOutcome = Tuple[Dict[str, object], Dict[str, int], List[str]]


def _check_characters(A: AlgebraSpec) -> CheckOutcome:
    m = A.dim
    witnesses = []
    found = 0
    for size in range(m + 1):
        for subset in combinations(range(1, m + 1), size):
            by_theorem = is_character(A, subset)
            by_definition = verify_character_bruteforce(A, subset)
            if by_theorem != by_definition:
                witnesses.append(f"E={list(subset)}: condition={by_theorem} multiplicative={by_definition}")
            if by_theorem and 0 < size < m:
                found += 1
    if not verify_character_bruteforce(A, range(1, m + 1)):
        witnesses.append("h_I is not multiplicative")
    return {"nontrivial_characters": found}, {"with_nontrivial_characters": int(found > 0)}, witnesses


def _check_associativity(A: AlgebraSpec) -> CheckOutcome:
    report = associativity_report(A, witness_cap=0)
    witnesses = []
    if not report.consistent:
        witnesses.append(
            f"direct={report.direct} theorem={report.by_theorem} tournament={report.by_tournament}"
        )
    if report.direct:
        if A.dim <= get_settings().derivation_solver_cap and derivation_space(A).dim_space != 0:
            witnesses.append("associative algebra with nontrivial derivations")
        if report.extremal and extremal_isomorphism(A, canonical_associative(A.dim)) is None:
            witnesses.append("associative extremal algebra not isomorphic to the canonical one")
    values = {
        "direct": report.direct,
        "by_theorem": report.by_theorem,
        "by_tournament": report.by_tournament,
        "extremal": report.extremal,
        "cyclic_triple": list(report.cyclic_triple) if report.cyclic_triple else None,
    }
    counters = {
        "associative": int(report.direct),
        "extremal": int(report.extremal),
        "with_cyclic_triple": int(report.cyclic_triple is not None),
    }
    return values, counters, witnesses


def _check_derivations(A: AlgebraSpec) -> CheckOutcome:
    space = derivation_space(A)
    witnesses = []
    for index, D in enumerate(space.basis):
        if not verify_derivation(A, D):
            witnesses.append(f"basis map {index} fails the Leibniz rule")
        if not has_zero_row_sums(D):
            witnesses.append(f"basis map {index} has a nonzero row sum")
    if not check_support_lemma(A, space):
        witnesses.append("support pattern violated")
    m = A.dim
    has_half = any(A.p[i][j] == HALF for i in range(m) for j in range(m) if i != j)
    if not has_half and space.dim_space != 0:
        witnesses.append(f"no coefficient equals 1/2 yet dim Der = {space.dim_space}")
    values: Dict[str, object] = {"dim_space": space.dim_space}
    if m == 3:
        condition = exists_nontrivial_derivation_3d(A)
        values["condition"] = condition
        if condition != (space.dim_space >= 1):
            witnesses.append(f"3d condition={condition} but dim Der = {space.dim_space}")
    return values, {"nontrivial": int(space.dim_space > 0)}, witnesses


def _check_local(A: AlgebraSpec) -> CheckOutcome:
    result = local_check(A)
    witnesses = []
    if not result.equal:
        witnesses.append(
            f"candidate dim {result.candidate_dim} vs derivation dim {result.derivation_dim}"
        )
    values = {
        "candidate_dim": result.candidate_dim,
        "derivation_dim": result.derivation_dim,
        "equal": result.equal,
    }
    return values, {"equal": int(result.equal)}, witnesses


CHECKS: Dict[str, Callable[[AlgebraSpec], CheckOutcome]] = {
    "characters": _check_characters,
    "associativity": _check_associativity,
    "derivations": _check_derivations,
    "local": _check_local,
}


def _run_one(suite: str, index: int, A: AlgebraSpec) -> Tuple[AlgebraResult, Dict[str, int]]:
    values, counters, witnesses = CHECKS[suite](A)
    result = AlgebraResult(
        index=index,
        matrix=format_matrix(A.p),
        checks=values,
        witnesses=witnesses,
    )
    return result, counters


def run_suite(
    suite: str,
    corpus: Sequence[AlgebraSpec],
    descriptor: CorpusDescriptor,
    threads: Optional[int] = None,
    progress: bool = False,
) -> SweepReport:
    """Run the suite's oracle checks on every algebra; results are sorted by corpus index.

    With progress=True a transient rich progress bar is drawn on stderr.
    """
    if suite not in CHECKS:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if not corpus:
        raise UsageError("corpus is empty")
    workers = threads if threads is not None else get_settings().threads
    logger.info(f"Running {suite} suite on {len(corpus)} algebras with {workers} workers")

    results: Dict[int, AlgebraResult] = {}
    totals: Counter = Counter()
    with ThreadPoolExecutor(max_workers=max(1, min(workers, len(corpus)))) as ex:
        future_map = {ex.submit(_run_one, suite, index, A): index for index, A in enumerate(corpus)}
        completed = track(
            as_completed(future_map.keys()),
            description=f"{suite} suite...",
            total=len(future_map),
            console=progress_console,
            transient=True,
            disable=not progress,
        )
        for future in completed:
            result, counters = future.result()
            results[future_map[future]] = result
            totals.update(counters)

    ordered = [results[index] for index in sorted(results)]
    witnesses = [f"#{r.index}: {line}" for r in ordered for line in r.witnesses]
    counts = {"algebras": len(ordered), "with_witnesses": sum(1 for r in ordered if r.witnesses)}
    counts.update(sorted(totals.items()))
    for line in witnesses:
        logger.warning(f"Theorem violation: {line}")
    logger.info(f"{suite} suite finished: {counts}")
    return SweepReport(suite=suite, corpus=descriptor, results=ordered, counts=counts, witnesses=witnesses)
