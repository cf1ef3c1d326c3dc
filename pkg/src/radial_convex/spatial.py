"""Spatial convex configurations for prescribed radii.

Distinct radii use two poles plus a strict planar configuration on the
equator. Arbitrary multiplicities use the cone grid: a thin cone with its
apex above the largest sphere cuts each sphere in a latitude circle, points
are spread over those circles, and the smallest layer sits as a ring (or a
single point) near the south pole.

Whenever a construction does not verify, a rotation-free fallback is
used: every radius ``r`` is placed on the latitude where the support
function of an off-centre ball equals ``1/r``. Those points lie on the
polar body of the ball, an ellipsoid of revolution with a focus at the
origin, so each of them is a strict vertex.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .configuration import Configuration3D
from .errors import DegenerateGrid, RadiiNotDistinct, TooFewPoints
from .geom import Tolerance, _resolve_tol, certify_strict
from .planar import _strictify_distinct, construct_distinct_2d
from .validation import RadiiSet, check_radii
from .verify import Verdict, verify_configuration

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
INFLATION = 0.1
BOTTOM_LIFT = 0.05


class Mode(str, enum.Enum):
    PAPER_FAITHFUL = "PaperFaithful"
    ROBUST = "Robust"

    def __str__(self) -> str:
        return self.value


def _mode(mode) -> Mode:
    if isinstance(mode, Mode):
        return mode
    key = str(mode).replace("_", "").replace("-", "").lower()
    for m in Mode:
        if m.value.lower() == key:
            return m
    raise ValueError(f"unknown mode {mode!r}; expected PaperFaithful or Robust")


def _require_n(rs: RadiiSet) -> None:
    if rs.n < 4:
        raise TooFewPoints(f"need at least 4 radii in 3D, got {rs.n}")


def _sph(r, polar, azimuth) -> np.ndarray:
    r, polar, azimuth = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (r, polar, azimuth)))
    s = np.sin(polar)
    return np.column_stack([r * s * np.cos(azimuth), r * s * np.sin(azimuth), r * np.cos(polar)])


# ------------------------------------------------------------------ fallback


def _ellipsoid_place(r: np.ndarray, r_far: float, r_near: float, phase: float = 0.0) -> np.ndarray:
    """Points of radius r[i] on the focal ellipsoid through r_far (north) and r_near (south).

    ``r`` must be sorted descending.
    """
    A = 0.5 * (1.0 / r_near + 1.0 / r_far)
    B = 0.5 * (1.0 / r_near - 1.0 / r_far)
    uz = np.clip((A - 1.0 / r) / B, -1.0, 1.0)
    # copies of one radius share a latitude; spread them evenly around it
    _, start, counts = np.unique(-r, return_index=True, return_counts=True)
    layer = np.repeat(np.arange(len(start)), counts)
    copy = np.arange(len(r)) - start[layer]
    azimuth = phase + GOLDEN_ANGLE * layer + 2 * math.pi * copy / counts[layer]
    return _sph(r, np.arccos(uz), azimuth)


def _certified(cfg: Configuration3D | None, tol: Tolerance, max_lp: int) -> bool:
    """Cheap sufficient check for a Pass verdict."""
    if cfg is None or float(np.max(cfg.radius_residuals())) > tol.rel_eps:
        return False
    return certify_strict(cfg.vertices, tol, max_lp=max_lp)


def _select(cands, tol: Tolerance) -> Configuration3D | None:
    """First certified candidate; a larger exact-test budget is tried only if none certifies."""
    cands = [c for c in cands if c is not None]
    for max_lp in (64, 1024):
        for cfg in cands:
            if _certified(cfg, tol, max_lp):
                return cfg
    return None


def _ellipsoid_candidates(rs: RadiiSet, **meta):
    order = rs.descending_indices()
    r = rs.as_array()[order]
    for a, b in ((1.0, 1.0), (1.001, 0.999), (1.02, 0.98), (1.2, 0.8), (1.5, 0.5), (2.0, 0.3), (3.0, 0.2)):
        if (a == 1.0 and r[0] == r[1]) or (b == 1.0 and r[-1] == r[-2]):
            continue  # repeated extremes would coincide at a pole
        V = _ellipsoid_place(r, r[0] * a, r[-1] * b)
        yield Configuration3D(
            V, tuple(order), rs, {**meta, "fallback": "focal-ellipsoid", "r_far": r[0] * a, "r_near": r[-1] * b}
        )


def _ellipsoid_fallback(rs: RadiiSet, tol: Tolerance, primary=None, **meta) -> Configuration3D | None:
    """``primary`` if it certifies, else the first certified focal-ellipsoid placement."""
    cands = [primary, *_ellipsoid_candidates(rs, **meta)]
    chosen = _select(cands, tol)
    if chosen is not None:
        return chosen
    return primary if primary is not None else (cands[1] if len(cands) > 1 else None)


# ------------------------------------------------------------- distinct radii


def _tetrahedron(rs: RadiiSet, tol: Tolerance) -> Configuration3D:
    order = rs.descending_indices()
    r = rs.as_array()[order]
    azimuth = np.array([0.0, 0.0, 2 * math.pi / 3, 4 * math.pi / 3])
    polar = 2 * math.pi / 3
    for _ in range(60):
        V = _sph(r, np.array([0.0, polar, polar, polar]), azimuth)
        cfg = Configuration3D(V, tuple(order), rs, {"construction": "tetrahedron", "polar_angle": polar})
        if verify_configuration(cfg, rs, tol).origin_inside:
            return cfg
        polar = 0.5 * (polar + math.pi)
    return cfg


def construct_distinct_3d(radii, tol: Tolerance | None = None) -> Configuration3D:
    """Poles for the two largest radii, a strict planar configuration on the equator."""
    tol = _resolve_tol(tol)
    rs = check_radii(radii)
    _require_n(rs)
    if not rs.is_distinct:
        raise RadiiNotDistinct("radii must be pairwise distinct; use construct_layered_3d")
    if rs.n == 4:
        cfg = _tetrahedron(rs, tol)
    else:
        order = rs.descending_indices()
        r = rs.as_array()[order]
        # the planar clearance must beat the threshold of the full 3D set
        floor = max(tol.rel_eps * 2.0 * math.sqrt(3.0) * r[0], tol.abs_floor)
        plane_tol = Tolerance(tol.rel_eps, floor)
        eq = RadiiSet(tuple(r[2:].tolist()))
        # the ellipsoid is a stronger fallback than the costly planar ones
        flat = _strictify_distinct(construct_distinct_2d(eq), plane_tol, quick=True)
        V = np.zeros((rs.n, 3))
        V[0, 2] = r[0]
        V[1, 2] = -r[1]
        V[2:, :2] = flat.vertices
        assign = [order[0], order[1]] + [order[2 + i] for i in flat.radius_assignment]
        cfg = Configuration3D(
            V, tuple(assign), rs, {"construction": "poles-equator", "equator": dict(flat.meta)}
        )
    return _ellipsoid_fallback(rs, tol, cfg, construction=cfg.meta["construction"])


# --------------------------------------------------------------- cone grid


def _apex_half_angle(r_top: float, r_low: float, apex: float) -> float:
    # the generator passes the origin at distance apex*sin(angle); it must
    # still cut the smallest upper sphere
    stated = 0.5 * math.atan(apex / r_low)
    crossing = 0.5 * math.asin(min(1.0, r_top / apex))
    return min(stated, crossing)


def _latitude(apex: float, alpha: float, radius: float) -> tuple[float, float]:
    """Upper crossing of the cone generator with a sphere: (z, ring radius)."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    root = math.sqrt(max(radius * radius - (apex * sa) ** 2, 0.0))
    t = (apex - radius) * (apex + radius) / (apex * ca + root)
    z, rho = apex - t * ca, t * sa
    scale = radius / math.hypot(z, rho)
    return z * scale, rho * scale


def _subset(m_ref: int, m: int) -> np.ndarray:
    """Indices into ``m_ref`` equally spaced longitudes, always including 0."""
    return np.unique(np.floor(np.arange(m) * m_ref / m + 1e-9).astype(int))


def _grid(rs: RadiiSet, robust: bool) -> Configuration3D:
    layers = rs.layers
    members = rs.layer_members()
    k = len(layers)
    r1 = layers[0][0]
    eps_inf = INFLATION * r1
    apex = r1 + eps_inf
    pts: list[np.ndarray] = []
    assign: list[int] = []
    table = []
    if k == 1:
        # single layer: north pole plus a ring near the south pole
        rad, m = layers[0]
        gamma = BOTTOM_LIFT * rad
        z = -rad + gamma
        rho = math.sqrt(rad * rad - z * z)
        az = np.arange(m - 1) * (2 * math.pi / (m - 1))
        pts.append(np.array([[0.0, 0.0, rad]]))
        pts.append(np.column_stack([rho * np.cos(az), rho * np.sin(az), np.full(m - 1, z)]))
        assign.extend(members[0])
        meta = {"apex": None, "half_angle": None, "gamma": gamma, "reference_layer": None,
                "layers": [{"radius": rad, "z": z, "rho": rho, "azimuths": az.tolist(), "pole": True}]}
        return Configuration3D(np.vstack(pts), tuple(assign), rs, meta)

    upper = layers[:-1]
    alpha = _apex_half_angle(upper[-1][0], layers[-1][0], apex)
    p = max(range(k - 1), key=lambda j: (upper[j][1], -j))
    m_ref = upper[p][1]
    beta = 2 * math.pi / m_ref
    for j, ((rad, m), idx) in enumerate(zip(upper, members[:-1])):
        z, rho = _latitude(apex, alpha, rad)
        az = _subset(m_ref, m) * beta
        if robust:
            az = az + j * GOLDEN_ANGLE
        pts.append(np.column_stack([rho * np.cos(az), rho * np.sin(az), np.full(len(az), z)]))
        assign.extend(idx)
        table.append({"radius": rad, "z": z, "rho": rho, "azimuths": az.tolist()})
    rad, m = layers[-1]
    if m == 1:
        gamma = 0.0
        pts.append(np.array([[0.0, 0.0, -rad]]))
        table.append({"radius": rad, "z": -rad, "rho": 0.0, "azimuths": [0.0]})
    else:
        gamma = BOTTOM_LIFT * rad
        z = -rad + gamma
        rho = math.sqrt(max(rad * rad - z * z, 0.0))
        az = np.arange(m) * (2 * math.pi / m)
        if robust:
            az = az + (k - 1) * GOLDEN_ANGLE
        pts.append(np.column_stack([rho * np.cos(az), rho * np.sin(az), np.full(m, z)]))
        table.append({"radius": rad, "z": z, "rho": rho, "azimuths": az.tolist()})
    assign.extend(members[-1])
    meta = {
        "apex": [0.0, 0.0, apex],
        "inflation": eps_inf,
        "half_angle": alpha,
        "gamma": gamma,
        "reference_layer": p,
        "beta": beta,
        "layers": table,
    }
    return Configuration3D(np.vstack(pts), tuple(assign), rs, meta)


def construct_layered_3d(radii, mode="Robust", tol: Tolerance | None = None) -> Configuration3D:
    """Cone-grid construction for arbitrary multiplicities.

    ``PaperFaithful`` shares longitudes between layers, so points on the
    shared cone generator are boundary non-vertices. ``Robust`` offsets
    each layer by the golden angle and falls back to the focal ellipsoid
    when the grid does not verify.
    """
    tol = _resolve_tol(tol)
    mode = _mode(mode)
    rs = check_radii(radii)
    _require_n(rs)
    cfg = _grid(rs, robust=mode is Mode.ROBUST)
    cfg = cfg.with_vertices(cfg.vertices, construction="cone-grid", mode=mode.value)
    if mode is Mode.PAPER_FAITHFUL:
        report = verify_configuration(cfg, rs, tol)
        if report.verdict is Verdict.FAIL and report.reason in ("degenerate", "origin", "interior"):
            raise DegenerateGrid(f"cone grid fails verification ({report.reason}); use Robust mode")
        return cfg
    return _ellipsoid_fallback(rs, tol, cfg, construction="cone-grid", mode=mode.value)


def strictify_3d(config: Configuration3D, tol: Tolerance | None = None) -> Configuration3D:
    """Offset each layer's longitudes by a multiple of the golden angle.

    Radii and latitudes are kept. If the offset grid still does not
    verify, the focal-ellipsoid placement is returned instead.
    """
    tol = _resolve_tol(tol)
    rs = config.radii
    cands = [config]
    if config.meta.get("construction") == "cone-grid":
        cfg = _grid(rs, robust=True)
        meta = {**config.meta, **cfg.meta, "mode": Mode.ROBUST.value, "strictified": True}
        cands.append(cfg.with_vertices(cfg.vertices, **meta))
    cands += _ellipsoid_candidates(rs, construction=config.meta.get("construction"), strictified=True)
    return _select(cands, tol) or config


def realize_3d(radii, mode="Robust", tol: Tolerance | None = None) -> Configuration3D:
    """Distinct radii use the pole construction; otherwise the cone grid."""
    rs = check_radii(radii)
    if rs.is_distinct:
        return construct_distinct_3d(rs, tol)
    return construct_layered_3d(rs, mode, tol)
