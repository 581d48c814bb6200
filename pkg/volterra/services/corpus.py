#!/usr/bin/env python3
"""
Deterministic algebra corpora for the theorem sweeps.
"""

import logging
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence

import numpy as np

from volterra.config import get_settings
from volterra.errors import DimensionError, UsageError
from volterra.models.algebra import AlgebraSpec
from volterra.models.reports import CorpusDescriptor
from volterra.services.algebra import from_upper
from volterra.services.rational import as_rational, format_rational, parse_rational
from volterra.services.structure import extremal_algebras

logger = logging.getLogger(__name__)

MODES = ("random", "extremal-exhaustive", "grid-3d")
DEFAULT_GRID = "0,1/4,1/2,3/4,1"
DEFAULT_RANDOM_COUNT = 100


def parse_grid(text: str) -> List[Fraction]:
    """Comma-separated rationals, e.g. "0,1/4,1/2,3/4,1" """
    values = [parse_rational(part) for part in text.split(",") if part.strip()]
    if not values:
        raise UsageError("grid needs at least one value")
    return values


def random_algebras(
    dim: int,
    seed: int,
    count: int,
    exclude_half: bool = False,
    denominator: Optional[int] = None,
) -> List[AlgebraSpec]:
    """Off-diagonal p_{ij,i} (i < j) drawn uniformly from k/den, complements filled in"""
    den = denominator if denominator is not None else get_settings().random_denominator
    numerators = np.array([k for k in range(den + 1) if not (exclude_half and 2 * k == den)])
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(1, dim + 1), 2))
    algebras = []
    for _ in range(count):
        draws = rng.choice(numerators, size=len(pairs))
        upper = {pair: Fraction(int(k), den) for pair, k in zip(pairs, draws)}
        algebras.append(from_upper(dim, upper))
    return algebras


def grid_algebras(values: Sequence) -> List[AlgebraSpec]:
    """Cartesian cube over (p_{12,1}, p_{13,1}, p_{23,2})"""
    values = [as_rational(v) for v in values]
    return [
        from_upper(3, {(1, 2): p12, (1, 3): p13, (2, 3): p23})
        for p12, p13, p23 in product(values, repeat=3)
    ]


def generate_corpus(
    mode: str,
    dim: int,
    seed: Optional[int] = None,
    grid: Optional[Sequence] = None,
    count: Optional[int] = None,
    exclude_half: bool = False,
) -> List[AlgebraSpec]:
    """Build a corpus; identical parameters always give an identical list"""
    if mode not in MODES:
        raise UsageError(f"unknown corpus mode {mode!r}; expected one of {', '.join(MODES)}")
    if dim < 1:
        raise UsageError(f"dimension must be positive, got {dim}")
    if mode == "random":
        if seed is None:
            raise UsageError("random corpus requires an explicit seed")
        corpus = random_algebras(dim, seed, count if count is not None else DEFAULT_RANDOM_COUNT, exclude_half)
    elif mode == "extremal-exhaustive":
        corpus = extremal_algebras(dim)
    else:
        if dim != 3:
            raise DimensionError(f"grid-3d corpus is 3-dimensional, got dim {dim}")
        corpus = grid_algebras(grid if grid is not None else parse_grid(DEFAULT_GRID))
    logger.info(f"Generated {len(corpus)} algebras ({mode}, dim {dim})")
    return corpus


def describe_corpus(
    mode: str,
    dim: int,
    seed: Optional[int] = None,
    grid: Optional[Sequence] = None,
    count: Optional[int] = None,
    exclude_half: bool = False,
) -> CorpusDescriptor:
    if mode == "grid-3d":
        values = grid if grid is not None else parse_grid(DEFAULT_GRID)
        grid_text = [format_rational(as_rational(v)) for v in values]
    else:
        grid_text = None
    return CorpusDescriptor(
        mode=mode,
        dim=dim,
        seed=seed if mode == "random" else None,
        count=(count if count is not None else DEFAULT_RANDOM_COUNT) if mode == "random" else None,
        grid=grid_text,
        exclude_half=exclude_half if mode == "random" else False,
    )
