"""SVG rendering of planar configurations and OFF export of spatial ones."""

from __future__ import annotations

import numpy as np

from .configuration import Configuration
from .errors import DimensionMismatch
from .geom import _raw_hull

SVG_SIZE = 1000
_MARGIN = 50


def _num(x: float) -> str:
    return f"{x:.4f}"


def render_svg(config: Configuration) -> str:
    """Concentric radius circles, the polygon and an origin marker, scaled to the largest radius."""
    if config.dim != 2:
        raise DimensionMismatch("SVG rendering needs a planar configuration")
    half = SVG_SIZE / 2
    r_max = max(config.radii.values)
    scale = (half - _MARGIN) / r_max

    def xy(p):
        # SVG's y axis points down
        return _num(half + scale * p[0]), _num(half - scale * p[1])

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for r, _ in config.radii.layers:
        lines.append(
            f'<circle cx="{_num(half)}" cy="{_num(half)}" r="{_num(scale * r)}" '
            'fill="none" stroke="#9bb" stroke-width="1"/>'
        )
    pts = " ".join(",".join(xy(p)) for p in config.vertices)
    lines.append(f'<polygon points="{pts}" fill="#def" fill-opacity="0.5" stroke="#036" stroke-width="2"/>')
    for p in config.vertices:
        x, y = xy(p)
        lines.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#036"/>')
    o = _num(half)
    lines.append(f'<path d="M {_num(half - 8)} {o} H {_num(half + 8)} M {o} {_num(half - 8)} V {_num(half + 8)}" '
                 'stroke="#c00" stroke-width="2"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_off(config: Configuration) -> str:
    """Vertices and outward-oriented triangular hull facets in OFF layout."""
    if config.dim != 3:
        raise DimensionMismatch("OFF export needs a spatial configuration")
    V = np.asarray(config.vertices)
    facets, _, _ = _raw_hull(V)
    lines = ["OFF", f"{len(V)} {len(facets)} 0"]
    lines += [" ".join(f"{c:.17g}" for c in p) for p in V]
    lines += ["3 " + " ".join(str(int(i)) for i in f) for f in facets]
    return "\n".join(lines) + "\n"
