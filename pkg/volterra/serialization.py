#!/usr/bin/env python3
"""
JSON/CSV codec: algebra files in, reports and trajectories out.

Algebra file schema: {"dim": m, "form": "coeffs" | "skew", "matrix": [[...]]}
with entries given as "num/den" strings or integers. Floats are rejected.
"""

import csv
import io
import json
import logging
import pathlib
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import BaseModel, ValidationError

from volterra.errors import ParseError
from volterra.models.algebra import AlgebraFile, AlgebraSpec, LinearMap, SimplexPoint
from volterra.models.reports import SweepReport, Trajectory
from volterra.services.algebra import build_from_coeffs, build_skew, from_skew, to_skew
from volterra.services.rational import format_matrix, format_rational, parse_rational

logger = logging.getLogger(__name__)


def _loc_to_path(loc: Sequence[Union[str, int]]) -> str:
    path = ""
    for index, part in enumerate(loc):
        if isinstance(part, int):
            path += f"[{part}]"
        elif index == 0:
            path = part
        else:
            # union member tags such as 'int' / 'str'
            break
    return path


def parse_algebra_document(document: Any, source: str = None) -> Tuple[AlgebraSpec, str]:
    """Validate a decoded JSON document; returns the algebra and its declared form"""
    if not isinstance(document, dict):
        raise ParseError("algebra document must be a JSON object", source=source)
    try:
        parsed = AlgebraFile.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        path = _loc_to_path(first.get("loc", ()))
        value = first.get("input")
        if isinstance(value, float):
            message = f"float {value!r} not allowed; write an exact 'num/den' string"
        else:
            message = first.get("msg", "invalid value")
        raise ParseError(message, path=path or None, source=source)

    rows = []
    for r, row in enumerate(parsed.matrix):
        values = []
        for c, entry in enumerate(row):
            if isinstance(entry, int):
                values.append(Fraction(entry))
                continue
            try:
                values.append(parse_rational(entry))
            except ParseError as e:
                raise ParseError(str(e), path=f"matrix[{r}][{c}]", source=source)
        rows.append(values)

    if parsed.form == "skew":
        algebra = from_skew(build_skew(parsed.dim, rows))
    else:
        algebra = build_from_coeffs(parsed.dim, rows)
    return algebra, parsed.form


def loads_algebra(text: str, source: str = None) -> AlgebraSpec:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno, source=source)
    algebra, _ = parse_algebra_document(document, source)
    return algebra


def load_algebra(path: Union[str, pathlib.Path]) -> AlgebraSpec:
    """Read and validate an algebra file (UTF-8)"""
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read algebra file: {e.strerror}", source=str(path))
    algebra = loads_algebra(text, source=str(path))
    logger.debug(f"Loaded dim {algebra.dim} algebra from {path}")
    return algebra


def dump_algebra(A: AlgebraSpec, form: str = "coeffs") -> Dict[str, Any]:
    """Canonical document; parse_algebra_document(dump_algebra(A)) gives back A"""
    matrix = to_skew(A).a if form == "skew" else A.p
    return {"dim": A.dim, "form": form, "matrix": format_matrix(matrix)}


def dumps_algebra(A: AlgebraSpec, form: str = "coeffs") -> str:
    return json.dumps(dump_algebra(A, form), indent=2)


def to_jsonable(value: Any) -> Any:
    """Convert models, fractions and tuples into plain JSON values"""
    if isinstance(value, LinearMap):
        return format_matrix(value.entries)
    if isinstance(value, BaseModel):
        return {name: to_jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    return value


def dumps_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, ensure_ascii=False)


def trajectory_csv(trajectory: Trajectory) -> str:
    """Rows (step, x_1..x_m) plus a '#' drift footer"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["step"] + [f"x_{k + 1}" for k in range(trajectory.dim)])
    for step, point in enumerate(trajectory.points):
        writer.writerow([step] + [repr(float(v)) for v in point])
    buffer.write(f"# steps={trajectory.steps} max_drift={trajectory.max_drift:.3e}\n")
    return buffer.getvalue()


def exact_trajectory_csv(points: List[SimplexPoint]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    dim = points[0].dim if points else 0
    writer.writerow(["step"] + [f"x_{k + 1}" for k in range(dim)])
    for step, point in enumerate(points):
        writer.writerow([step] + [format_rational(v) for v in point.coords])
    buffer.write(f"# steps={max(len(points) - 1, 0)} exact max_drift=0\n")
    return buffer.getvalue()


def sweep_csv(report: SweepReport) -> str:
    """One row per algebra: index, witness count, then the suite's check values"""
    keys: List[str] = []
    for result in report.results:
        for key in result.checks:
            if key not in keys:
                keys.append(key)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["index", "witnesses"] + keys)
    for result in report.results:
        writer.writerow(
            [result.index, len(result.witnesses)]
            + [json.dumps(to_jsonable(result.checks.get(key))) for key in keys]
        )
    buffer.write("# " + " ".join(f"{k}={v}" for k, v in report.counts.items()) + "\n")
    return buffer.getvalue()
