#!/usr/bin/env python3
"""
Pydantic models for the algebraic value types.

All models are frozen (immutable, hashable). Scalars are fractions.Fraction.
Matrices are stored 0-based: ``p[i][j]`` is p_{(i+1)(j+1),(i+1)}. Index
labels exposed to users (subsets, triples, permutations) are 1-based.

Construct AlgebraSpec, SkewMatrix and SimplexPoint through the builders in
``volterra.services.algebra`` so invariant violations raise the toolkit's own
errors; the models themselves only enforce shape.
"""

from fractions import Fraction
from typing import List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, model_validator

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]
RationalVector = Tuple[Fraction, ...]


class _FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _check_square(dim: int, rows, label: str) -> None:
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise ValueError(f"{label} must be {dim}x{dim}")


class AlgebraSpec(_FrozenModel):
    """Reduced heredity-coefficient matrix of a genetic Volterra algebra"""
    dim: int = Field(..., ge=1, description="Number of types m (algebra dimension)")
    p: RationalMatrix = Field(..., description="p[i][j] = p_{ij,i}; diagonal is 1")

    @model_validator(mode="after")
    def _square(self):
        _check_square(self.dim, self.p, "coefficient matrix")
        return self

    def coefficient(self, i: int, j: int) -> Fraction:
        """p_{ij,i} for 1-based labels i, j"""
        return self.p[i - 1][j - 1]


class SkewMatrix(_FrozenModel):
    """Skew-symmetric matrix (a_ik) of the Volterra operator V(x)_k = x_k(1 + sum_i a_ik x_i)"""
    dim: int = Field(..., ge=1, description="Matrix order m")
    a: RationalMatrix = Field(..., description="a[i][k] = -a[k][i], |a[i][k]| <= 1")

    @model_validator(mode="after")
    def _square(self):
        _check_square(self.dim, self.a, "skew matrix")
        return self


class AlgebraElement(_FrozenModel):
    """Coordinate vector in the natural basis e_1, ..., e_m"""
    coords: RationalVector = Field(..., description="Exact coordinates x_1..x_m")

    @property
    def dim(self) -> int:
        return len(self.coords)


class SimplexPoint(_FrozenModel):
    """Point of the probability simplex (coords >= 0, summing to exactly 1)"""
    coords: RationalVector = Field(..., description="Exact probabilities x_1..x_m")

    @property
    def dim(self) -> int:
        return len(self.coords)


class LinearMap(_FrozenModel):
    """Square rational matrix; row i gives D(e_i) = sum_j d_ij e_j"""
    entries: RationalMatrix = Field(..., description="d[i][j], 0-based storage")

    @model_validator(mode="after")
    def _square(self):
        _check_square(len(self.entries), self.entries, "linear map")
        return self

    @property
    def dim(self) -> int:
        return len(self.entries)

    def image_of_basis(self, i: int) -> RationalVector:
        """D(e_i) for a 1-based label"""
        return self.entries[i - 1]

    def apply(self, coords) -> RationalVector:
        """D(x) = sum_i x_i D(e_i)"""
        m = self.dim
        return tuple(
            sum((coords[i] * self.entries[i][j] for i in range(m)), Fraction(0))
            for j in range(m)
        )

    def flat(self) -> RationalVector:
        """Entries in variable order d_11, d_12, ..., d_mm"""
        return tuple(value for row in self.entries for value in row)

    def is_zero(self) -> bool:
        return all(value == 0 for row in self.entries for value in row)


class Tournament(_FrozenModel):
    """Complete directed graph on {1..m}; beats[k][i] is the edge k -> i"""
    dim: int = Field(..., ge=1, description="Number of vertices")
    beats: Tuple[Tuple[bool, ...], ...] = Field(..., description="Adjacency, 0-based storage")

    @model_validator(mode="after")
    def _orientation(self):
        _check_square(self.dim, self.beats, "adjacency")
        for k in range(self.dim):
            if self.beats[k][k]:
                raise ValueError(f"vertex {k + 1} beats itself")
            for i in range(k + 1, self.dim):
                if self.beats[k][i] == self.beats[i][k]:
                    raise ValueError(f"pair ({k + 1},{i + 1}) must have exactly one arrow")
        return self

    def out_degree(self, v: int) -> int:
        """Score of a 1-based vertex"""
        return sum(self.beats[v - 1])

    def score_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(sum(row) for row in self.beats))

    def edges(self) -> List[Tuple[int, int]]:
        """All arrows (k, i) as 1-based labels"""
        return [
            (k + 1, i + 1)
            for k in range(self.dim)
            for i in range(self.dim)
            if self.beats[k][i]
        ]

    def to_networkx(self):
        import networkx as nx

        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.dim + 1))
        graph.add_edges_from(self.edges())
        return graph


class AlgebraFile(BaseModel):
    """On-disk algebra document; entries are exact strings or integers"""
    model_config = ConfigDict(extra="forbid")

    dim: StrictInt = Field(..., ge=1, description="Algebra dimension m")
    form: Literal["coeffs", "skew"] = Field("coeffs", description="Reduced heredity matrix or skew matrix")
    matrix: List[List[Union[StrictInt, StrictStr]]] = Field(..., description="m x m entries, 'num/den' strings or integers")
