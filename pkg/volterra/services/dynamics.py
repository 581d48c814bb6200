#!/usr/bin/env python3
"""
QSO trajectories: float simulation in skew form and exact iteration in
heredity form.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from volterra.config import get_settings
from volterra.errors import CapacityError, NonFiniteError, RangeError, ShapeError, SimplexError
from volterra.models.algebra import AlgebraSpec, SimplexPoint, SkewMatrix
from volterra.models.reports import Trajectory
from volterra.services.algebra import apply_qso, make_simplex_point, skew_step
from volterra.services.rational import bit_size

logger = logging.getLogger(__name__)


def skew_array(S: SkewMatrix) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in S.a], dtype=np.float64)


def _float_start(x0, m: int, tolerance: float) -> np.ndarray:
    coords = getattr(x0, "coords", x0)
    try:
        x = np.array([float(v) for v in coords], dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise SimplexError(f"start point is not numeric: {e}")
    if x.shape != (m,):
        raise ShapeError(f"start point has length {x.shape[0]}, matrix order is {m}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("start point has non-finite coordinates")
    if np.any(x < -tolerance) or abs(x.sum() - 1.0) > tolerance:
        raise SimplexError(f"start point {x.tolist()} is not on the simplex within {tolerance}")
    return np.clip(x, 0.0, None)


def evolve(S: SkewMatrix, x0, steps: int) -> Trajectory:
    """Iterate V(x)_k = x_k (1 + sum_i a_ik x_i) in float64.

    Each step renormalizes by the coordinate sum and zeroes negatives in
    [-clamp, 0). Drift |sum - 1| before renormalization is recorded per step.
    """
    if steps < 0:
        raise RangeError(f"steps must be non-negative, got {steps}")
    settings = get_settings()
    m = S.dim
    a = skew_array(S)
    x = _float_start(x0, m, settings.simplex_tolerance)
    points = [tuple(float(v) for v in x)]
    drift = []
    for step in range(steps):
        nxt = x * (1.0 + x @ a)
        if not np.all(np.isfinite(nxt)):
            raise NonFiniteError(f"non-finite coordinates at step {step + 1}")
        if np.any(nxt < -settings.clamp_threshold):
            logger.warning(f"Step {step + 1}: coordinate {nxt.min():.3e} below clamp threshold")
        total = nxt.sum()
        drift.append(float(abs(total - 1.0)))
        nxt = nxt / total
        nxt[(nxt < 0) & (nxt >= -settings.clamp_threshold)] = 0.0
        x = nxt
        points.append(tuple(float(v) for v in x))
    if drift:
        logger.debug(f"Trajectory of {steps} steps, max drift {max(drift):.3e}")
    return Trajectory(skew=S, steps=steps, points=points, drift=drift)


def evolve_exact(
    A: AlgebraSpec, x0, steps: int, bit_cap: Optional[int] = None
) -> List[SimplexPoint]:
    """Exact iteration of x -> x o x.

    Coordinate bit size roughly doubles per step, so a step is refused up
    front when twice the current largest coordinate exceeds the bit cap.
    """
    if steps < 0:
        raise RangeError(f"steps must be non-negative, got {steps}")
    cap = bit_cap if bit_cap is not None else get_settings().exact_bit_cap
    point = x0 if isinstance(x0, SimplexPoint) else make_simplex_point(x0)
    trajectory = [point]
    for step in range(steps):
        current = max(bit_size(v) for v in point.coords)
        if 2 * current > cap:
            raise CapacityError(
                f"step {step + 1}: coordinates need about {2 * current} bits, cap is {cap}"
            )
        point = apply_qso(A, point)
        largest = max(bit_size(v) for v in point.coords)
        if largest > cap:
            raise CapacityError(f"step {step + 1}: coordinate needs {largest} bits, cap is {cap}")
        trajectory.append(point)
    return trajectory


def evolve_skew_exact(S: SkewMatrix, x) -> SimplexPoint:
    """One exact step in skew form; agrees with apply_qso(from_skew(S), x)"""
    point = x if isinstance(x, SimplexPoint) else make_simplex_point(x)
    return SimplexPoint(coords=skew_step(S, point))


def max_deviation(trajectory: Trajectory, exact: Sequence[SimplexPoint]) -> float:
    """Largest coordinatewise |float - exact| over the common horizon"""
    worst = 0.0
    for float_point, exact_point in zip(trajectory.points, exact):
        for value, reference in zip(float_point, exact_point.coords):
            worst = max(worst, abs(value - float(reference)))
    return worst
