"""Input validation helpers and the :class:`RadiiSet` container."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    ConvexConfigError,
    DimensionMismatch,
    NonUnitInput,
    TooFewPoints,
    WeightOutOfRange,
)


@dataclass(frozen=True)
class RadiiSet:
    """Validated multiset of positive radii.

    ``values`` keeps the caller's order so that configurations can report
    which input radius each vertex realizes. ``layers`` groups equal values
    as ``(radius, multiplicity)`` pairs, strictly descending by radius.
    """

    values: tuple[float, ...]
    layers: tuple[tuple[float, int], ...] = field(init=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise TooFewPoints("radii set is empty")
        for i, v in enumerate(vals):
            if not math.isfinite(v) or v <= 0.0:
                raise ConvexConfigError(f"radius #{i} must be positive and finite, got {v!r}")
        object.__setattr__(self, "values", vals)
        counts: dict[float, int] = {}
        for v in vals:
            counts[v] = counts.get(v, 0) + 1
        layers = tuple(sorted(counts.items(), key=lambda kv: -kv[0]))
        object.__setattr__(self, "layers", layers)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.layers)

    @property
    def is_distinct(self) -> bool:
        return all(m == 1 for _, m in self.layers)

    def descending_indices(self) -> list[int]:
        """Input indices sorted by decreasing radius (stable for ties)."""
        return sorted(range(self.n), key=lambda i: (-self.values[i], i))

    def layer_members(self) -> list[list[int]]:
        """Input indices belonging to each layer, in layer order."""
        pos = {r: j for j, (r, _) in enumerate(self.layers)}
        members: list[list[int]] = [[] for _ in self.layers]
        for i, v in enumerate(self.values):
            members[pos[v]].append(i)
        return members

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def check_radii(radii) -> RadiiSet:
    if isinstance(radii, RadiiSet):
        return radii
    try:
        arr = np.asarray(radii, dtype=float).ravel()
    except (TypeError, ValueError) as exc:
        raise ConvexConfigError(f"radii must be numeric: {exc}") from None
    return RadiiSet(tuple(arr.tolist()))


def check_points(points, dims: Iterable[int] = (2, 3), min_points: int = 1) -> np.ndarray:
    """Return ``points`` as a finite ``(n, d)`` float array."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected an (n, d) array of points, got shape {arr.shape}")
    if arr.shape[1] not in tuple(dims):
        raise DimensionMismatch(f"points must have dimension in {tuple(dims)}, got {arr.shape[1]}")
    if arr.shape[0] < min_points:
        raise TooFewPoints(f"need at least {min_points} points, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ConvexConfigError("points contain non-finite coordinates")
    return arr


def check_unit(p, atol: float = 1e-9, name: str = "point") -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    norm = float(np.linalg.norm(arr))
    if not math.isfinite(norm) or abs(norm - 1.0) > atol:
        raise NonUnitInput(f"{name} must be a unit vector, has norm {norm!r}")
    return arr


def check_weight(w: float) -> float:
    w = float(w)
    if not (0.0 <= w < math.pi / 2) or not math.isfinite(w):
        raise WeightOutOfRange(f"weight {w!r} outside [0, pi/2)")
    return w


def check_weights(weights) -> np.ndarray:
    arr = np.asarray(weights, dtype=float).ravel()
    bad = ~np.isfinite(arr) | (arr < 0.0) | (arr >= math.pi / 2)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise WeightOutOfRange(f"weight #{i} = {arr[i]!r} outside [0, pi/2)")
    return arr
