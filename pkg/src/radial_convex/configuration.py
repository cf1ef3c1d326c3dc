"""Result containers produced by the planar and spatial constructions."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .validation import RadiiSet


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Configuration:
    """Points realizing a radii set.

    ``radius_assignment[k]`` is the index into ``radii.values`` realized by
    ``vertices[k]``. ``meta`` records the construction name and the
    parameters it chose.
    """

    vertices: np.ndarray
    radius_assignment: tuple[int, ...]
    radii: RadiiSet
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", _frozen(self.vertices))
        object.__setattr__(self, "radius_assignment", tuple(int(i) for i in self.radius_assignment))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def assigned_radii(self) -> np.ndarray:
        return np.array([self.radii.values[i] for i in self.radius_assignment])

    def radius_residuals(self) -> np.ndarray:
        target = self.assigned_radii()
        return np.abs(np.linalg.norm(self.vertices, axis=1) - target) / target

    def in_input_order(self) -> np.ndarray:
        """Vertices reordered so row ``i`` realizes input radius ``i``."""
        out = np.empty_like(self.vertices)
        out[list(self.radius_assignment)] = self.vertices
        return out

    def with_vertices(self, vertices, **meta) -> "Configuration":
        return replace(self, vertices=vertices, meta={**self.meta, **meta})


class Configuration2D(Configuration):
    """Planar configuration; vertices are listed counterclockwise."""


class Configuration3D(Configuration):
    pass
