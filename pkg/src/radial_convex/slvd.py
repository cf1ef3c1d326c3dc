"""Spherical Laguerre Voronoi cells and their non-emptiness.

A spherical circle with unit center ``p_i`` and angular radius (weight)
``w_i`` has Laguerre proximity ``(p . p_i) / cos(w_i)`` to a unit point
``p``; each point of the sphere belongs to the circle of largest
proximity. Writing the dual point ``P*_i = p_i / cos(w_i)``, the
proximity is the linear functional ``p . P*_i``, so the cell of circle
``i`` has interior exactly when ``P*_i`` is a strict vertex of the hull of
all dual points.

Generators whose cells are all non-empty come from realizing the radii
``1 / cos(w_i)`` as a spatial convex configuration: the vertices are the
dual points and their directions are the centers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import linprog

from .errors import ConvexConfigError, LengthMismatch, NonUnitInput, TooFewPoints
from .geom import PointClass, Tolerance, _resolve_tol, classify_points
from .spatial import realize_3d
from .validation import check_points, check_unit, check_weight, check_weights

FEASIBILITY_THRESHOLD = 1e-9
MIN_GRID = 1000


class CellVerdict(str, enum.Enum):
    NON_EMPTY = "NonEmpty"
    EMPTY = "Empty"
    BORDERLINE = "Borderline"

    def __str__(self) -> str:
        return self.value


class Method(str, enum.Enum):
    DUAL_HULL = "DualHull"
    FEASIBILITY = "Feasibility"
    SAMPLING = "Sampling"

    def __str__(self) -> str:
        return self.value


_FROM_CLASS = {
    PointClass.STRICT_VERTEX: CellVerdict.NON_EMPTY,
    PointClass.BOUNDARY: CellVerdict.BORDERLINE,
    PointClass.INTERIOR: CellVerdict.EMPTY,
}


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SphericalCircleSet:
    """Unit centers with angular radii in ``[0, pi/2)``."""

    centers: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        c = check_points(self.centers, dims=(3,))
        w = check_weights(self.weights)
        if len(w) != len(c):
            raise LengthMismatch(f"{len(c)} centers but {len(w)} weights")
        norms = np.linalg.norm(c, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > 1e-9)
        if len(bad):
            raise NonUnitInput(f"center #{bad[0]} has norm {norms[bad[0]]!r}")
        object.__setattr__(self, "centers", _frozen(c))
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def n(self) -> int:
        return len(self.weights)

    def duals(self) -> "DualPointSet":
        return DualPointSet(self.centers / np.cos(self.weights)[:, None])


@dataclass(frozen=True)
class DualPointSet:
    """Dual points ``P*_i = p_i / cos(w_i)``."""

    duals: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "duals", _frozen(check_points(self.duals, dims=(3,))))

    @property
    def n(self) -> int:
        return len(self.duals)


@dataclass(frozen=True)
class EmptinessReport:
    """Per-cell verdicts from one method.

    ``margins`` holds the method's signed evidence per cell when it has
    one, and ``cross_check`` an independent report on the same cells.
    """

    verdicts: tuple[CellVerdict, ...]
    method: Method
    sample_counts: tuple[int, ...] | None = None
    margins: tuple[float, ...] | None = None
    cross_check: "EmptinessReport | None" = None
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def all_nonempty(self) -> bool:
        return all(v is CellVerdict.NON_EMPTY for v in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "method": self.method.value,
            "verdicts": [v.value for v in self.verdicts],
            "all_nonempty": self.all_nonempty,
        }
        if self.sample_counts is not None:
            out["sample_counts"] = list(self.sample_counts)
        if self.margins is not None:
            out["margins"] = list(self.margins)
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check.to_dict()
        if self.meta:
            out["meta"] = dict(self.meta)
        return out


def weight_to_radius(w: float) -> float:
    """Distance from the origin of the plane cutting out a circle of angular radius ``w``."""
    return 1.0 / math.cos(check_weight(w))


def laguerre_proximity(circle, p) -> float:
    """``(p . p_i) / cos(w_i)``; larger means closer."""
    center, w = circle
    w = check_weight(w)
    c = check_unit(center, name="center")
    q = check_unit(p, name="p")
    if c.shape != (3,) or q.shape != (3,):
        raise NonUnitInput("center and p must be unit 3-vectors")
    return float(np.dot(q, c)) / math.cos(w)


def place_generators(weights, mode="Robust", tol: Tolerance | None = None):
    """Centers and weights whose Laguerre cells are all non-empty.

    Returns ``(SphericalCircleSet, DualPointSet)`` in the order of
    ``weights``.
    """
    w = check_weights(weights)
    if len(w) < 4:
        raise TooFewPoints(f"need at least 4 weights, got {len(w)}")
    radii = 1.0 / np.cos(w)
    cfg = realize_3d(radii, mode, tol)
    vertices = cfg.in_input_order()
    centers = vertices / np.linalg.norm(vertices, axis=1)[:, None]
    circles = SphericalCircleSet(centers, w)
    return circles, circles.duals()


def _require_cells(circles: SphericalCircleSet) -> None:
    if circles.n < 4:
        raise TooFewPoints(f"need at least 4 circles, got {circles.n}")


def _dual_hull(duals: np.ndarray, tol: Tolerance) -> EmptinessReport:
    classes = classify_points(duals, tol)
    return EmptinessReport(tuple(_FROM_CLASS[c] for c in classes), Method.DUAL_HULL)


def _cell_margin(i: int, duals: np.ndarray) -> tuple[float, float]:
    """Best interior margin of cell ``i`` over unit directions, and the sign test value.

    The first value maximizes ``min_j p.(P*_i - P*_j)`` over the box and
    reports it per unit of ``|p|``. The second maximizes the same margin
    under ``p . P*_i = 1``; it is negative exactly when the cell is empty.
    """
    diff = duals[i] - np.delete(duals, i, axis=0)
    k = len(diff)
    cost = np.r_[0.0, 0.0, 0.0, -1.0]
    a_ub = np.hstack([-diff, np.ones((k, 1))])
    res = linprog(cost, A_ub=a_ub, b_ub=np.zeros(k), bounds=[(-1, 1)] * 3 + [(None, None)], method="highs")
    unit = 0.0
    if res.status == 0:
        nu = float(np.linalg.norm(res.x[:3]))
        unit = -res.fun / nu if nu > 0 else 0.0
    res2 = linprog(
        cost,
        A_ub=a_ub,
        b_ub=np.zeros(k),
        A_eq=np.r_[duals[i], 0.0][None, :],
        b_eq=[1.0],
        bounds=[(None, None)] * 4,
        method="highs",
    )
    signed = -res2.fun if res2.status == 0 else (math.inf if res2.status == 3 else math.nan)
    return unit, signed


def feasibility_report(circles: SphericalCircleSet, threshold: float = FEASIBILITY_THRESHOLD) -> EmptinessReport:
    """Decide each cell from its bisector half-spaces, independently of any hull code."""
    _require_cells(circles)
    duals = circles.duals().duals
    verdicts, margins = [], []
    for i in range(circles.n):
        unit, signed = _cell_margin(i, duals)
        if unit > threshold:
            verdicts.append(CellVerdict.NON_EMPTY)
        elif signed < -threshold:
            verdicts.append(CellVerdict.EMPTY)
        else:
            verdicts.append(CellVerdict.BORDERLINE)
        margins.append(unit if unit > threshold else signed)
    return EmptinessReport(tuple(verdicts), Method.FEASIBILITY, margins=tuple(float(m) for m in margins))


def check_nonemptiness(circles: SphericalCircleSet, tol: Tolerance | None = None) -> EmptinessReport:
    """Dual-hull verdict per cell, cross-checked by the feasibility test."""
    _require_cells(circles)
    tol = _resolve_tol(tol)
    hull = _dual_hull(circles.duals().duals, tol)
    return EmptinessReport(hull.verdicts, hull.method, cross_check=feasibility_report(circles))


def fibonacci_sphere(count: int) -> np.ndarray:
    """Quasi-uniform deterministic unit vectors."""
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def sample_cells(circles: SphericalCircleSet, grid: int = 100_000, chunk: int = 65_536) -> EmptinessReport:
    """Count lattice samples won by each circle (ties go to the lower index).

    A positive count proves a cell non-empty; a zero count is reported as
    ``Empty`` but only means no sample landed there.
    """
    grid = int(grid)
    if grid < MIN_GRID:
        raise ConvexConfigError(f"grid must be at least {MIN_GRID}, got {grid}")
    duals = circles.duals().duals
    counts = np.zeros(circles.n, dtype=np.int64)
    samples = fibonacci_sphere(grid)
    # independent chunks merged by addition, so evaluation order is irrelevant
    for start in range(0, grid, chunk):
        winner = np.argmax(samples[start:start + chunk] @ duals.T, axis=1)
        counts += np.bincount(winner, minlength=circles.n)
    verdicts = tuple(CellVerdict.NON_EMPTY if c > 0 else CellVerdict.EMPTY for c in counts)
    return EmptinessReport(verdicts, Method.SAMPLING, sample_counts=tuple(int(c) for c in counts), meta={"grid": grid})
