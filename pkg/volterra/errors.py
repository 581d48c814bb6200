#!/usr/bin/env python3
"""
Exception hierarchy for the Volterra algebra toolkit.

Every operation raises a subclass of VolterraError so the CLI can catch one
type and map it to an exit status.
"""

from typing import List, Optional, Tuple


class VolterraError(Exception):
    """Base class for all toolkit errors"""


class ShapeError(VolterraError, ValueError):
    """Matrix or vector has the wrong shape for the ambient algebra"""


class RangeError(VolterraError, ValueError):
    """A coefficient lies outside its admissible interval"""


class ComplementError(VolterraError, ValueError):
    """p_{ij,i} + p_{ij,j} != 1 for some pair (or a diagonal entry != 1)"""


class SimplexError(VolterraError, ValueError):
    """Point is not on the probability simplex"""


class IndexRangeError(VolterraError, IndexError, ValueError):
    """An index label falls outside {1, ..., m}"""


class DimensionError(VolterraError, ValueError):
    """Operation is only defined for a specific algebra dimension"""


class CapacityError(VolterraError):
    """Input exceeds a configured enumeration or size cap"""


class NonFiniteError(VolterraError):
    """Float simulation produced inf or nan"""


class ZeroEntryError(VolterraError, ValueError):
    """Skew matrix has zero off-diagonal entries, so no tournament exists"""

    def __init__(self, pairs: List[Tuple[int, int]]):
        self.pairs = list(pairs)
        shown = ", ".join(f"({i},{k})" for i, k in self.pairs[:10])
        more = f" and {len(self.pairs) - 10} more" if len(self.pairs) > 10 else ""
        super().__init__(f"tournament undefined: a_ik = 0 at pairs {shown}{more}")


class ParseError(VolterraError, ValueError):
    """Algebra file could not be parsed; carries a position annotation"""

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None,
    ):
        self.path = path
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(path)
        prefix = f"{': '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class UsageError(VolterraError, ValueError):
    """Required parameter missing or parameters inconsistent with the mode"""
