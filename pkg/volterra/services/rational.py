#!/usr/bin/env python3
"""
Exact rational helpers: parsing/formatting of "num/den" strings and the
sympy DomainMatrix (over QQ) bridge used for rank, RREF and nullspaces.
"""

import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from volterra.errors import ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

Vector = Tuple[Fraction, ...]


def as_rational(value) -> Fraction:
    """Coerce an exact scalar (Fraction, int, "num/den" string) to Fraction.

    Floats and booleans are rejected: the core never accepts inexact input.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(f"float {value!r} rejected; pass an exact 'num/den' string or Fraction")
    # sympy Rational / gmpy mpq / PythonMPQ
    numerator = getattr(value, "numerator", None)
    denominator = getattr(value, "denominator", None)
    if numerator is not None and denominator is not None:
        return Fraction(int(numerator), int(denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or an integer string; the result is always reduced"""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ParseError(f"not a rational 'num/den' string: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Canonical reduced form: "n" for integers, "n/d" otherwise"""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(values: Iterable[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def format_matrix(rows: Iterable[Iterable[Fraction]]) -> List[List[str]]:
    return [format_vector(row) for row in rows]


def bit_size(value: Fraction) -> int:
    """Bits needed for numerator and denominator together"""
    return value.numerator.bit_length() + value.denominator.bit_length()


# ----------------------------------------------------------------------------
# DomainMatrix bridge
# ----------------------------------------------------------------------------

def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def to_domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix(
        [[_to_qq(as_rational(v)) for v in row] for row in rows],
        (len(rows), ncols),
        QQ,
    )


def _from_domain_matrix(matrix: DomainMatrix) -> List[List[Fraction]]:
    nrows, ncols = matrix.shape
    dense = matrix.to_Matrix()
    return [
        [Fraction(int(dense[r, c].p), int(dense[r, c].q)) for c in range(ncols)]
        for r in range(nrows)
    ]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns"""
    if not rows:
        return [], ()
    reduced, pivots = to_domain_matrix(rows, ncols).rref()
    dense = _from_domain_matrix(reduced)
    return [tuple(dense[r]) for r in range(len(pivots))], tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows:
        return 0
    return to_domain_matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """Canonical basis of {v : rows @ v = 0}.

    The basis is itself in reduced row echelon form (pivot entries 1), so
    equal spaces always produce identical bases.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(vector)
    return canonical_basis(basis, ncols)


def canonical_basis(vectors: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """RREF of the stacked vectors, zero rows dropped"""
    reduced, _ = rref([list(v) for v in vectors], ncols)
    return reduced


def in_span(vector: Sequence[Fraction], basis: Sequence[Sequence[Fraction]], ncols: int) -> bool:
    """Exact membership test by rank comparison"""
    if all(v == 0 for v in vector):
        return True
    if not basis:
        return False
    base_rank = rank(basis, ncols)
    return rank(list(basis) + [list(vector)], ncols) == base_rank
