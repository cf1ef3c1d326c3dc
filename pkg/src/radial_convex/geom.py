"""Convex hulls, convex-position classification and the spherical metric.

Every sidedness test compares against a single absolute threshold derived
from the input scale (see :class:`Tolerance`), so the same point set gives
the same answer regardless of the order in which it is supplied.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, cKDTree
from scipy.spatial import QhullError

from .errors import ConvexConfigError, DegenerateHull, TooFewPoints
from .validation import check_points, check_unit

ENV_TOL = "RADIAL_CONVEX_TOL"


class PointClass(str, enum.Enum):
    STRICT_VERTEX = "StrictVertex"
    BOUNDARY = "BoundaryNonVertex"
    INTERIOR = "Interior"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Tolerance:
    """Relative geometric tolerance.

    The absolute threshold is ``rel_eps * D`` where ``D`` is the diagonal of
    the input's bounding box, never below ``abs_floor``.
    """

    rel_eps: float = 1e-9
    abs_floor: float = 0.0

    def __post_init__(self):
        if not (self.rel_eps > 0 and math.isfinite(self.rel_eps)):
            raise ConvexConfigError(f"rel_eps must be positive, got {self.rel_eps!r}")
        if not (self.abs_floor >= 0 and math.isfinite(self.abs_floor)):
            raise ConvexConfigError(f"abs_floor must be non-negative, got {self.abs_floor!r}")

    @classmethod
    def from_env(cls, default: float = 1e-9) -> "Tolerance":
        raw = os.environ.get(ENV_TOL)
        if raw is None or raw.strip() == "":
            return cls(default)
        try:
            return cls(float(raw))
        except ValueError:
            raise ConvexConfigError(f"{ENV_TOL} must be a positive number, got {raw!r}") from None

    def threshold(self, points: np.ndarray) -> float:
        pts = np.asarray(points, dtype=float)
        extent = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))) if len(pts) else 0.0
        return max(self.rel_eps * extent, self.abs_floor)


DEFAULT_TOL = Tolerance()


def _resolve_tol(tol: Tolerance | None) -> Tolerance:
    return DEFAULT_TOL if tol is None else tol


@dataclass(frozen=True)
class HullDescription:
    """Boundary description of a full-dimensional convex hull.

    For 2D, ``vertex_indices`` is the counterclockwise boundary cycle and
    ``facets`` holds its edges as ``(i, j)`` pairs. For 3D, ``facets`` are
    triangles whose right-hand normal points outward. Every facet satisfies
    ``normal @ x + offset <= 0`` for points inside.
    """

    dim: int
    vertex_indices: np.ndarray
    facets: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray

    def signed_distance(self, x) -> np.ndarray:
        """Largest facet value per query point (negative means inside)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return (x @ self.normals.T + self.offsets).max(axis=1)


def geodesic_distance(p, q, tol: float = 1e-9) -> float:
    """Great-circle distance in radians between two unit vectors."""
    p = check_unit(p, tol, "p")
    q = check_unit(q, tol, "q")
    # the half-angle form stays accurate near 0 and pi, unlike acos
    return 2.0 * math.atan2(float(np.linalg.norm(p - q)), float(np.linalg.norm(p + q)))


# ---------------------------------------------------------------- internals


def _affine_frame(pts: np.ndarray, eps: float) -> tuple[int, np.ndarray, np.ndarray]:
    """Affine rank of ``pts`` with its centroid and principal directions."""
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    if len(pts) == 1:
        return 0, centroid, np.eye(pts.shape[1])
    _, vecs = np.linalg.eigh(centered.T @ centered)
    vt = vecs[:, ::-1].T
    proj = centered @ vt.T
    extents = proj.max(axis=0) - proj.min(axis=0)
    rank = int(np.sum(extents > eps))
    return rank, centroid, vt


def affine_rank(points, tol: Tolerance | None = None) -> int:
    pts = check_points(points, dims=(1, 2, 3))
    eps = _resolve_tol(tol).threshold(pts)
    return _affine_frame(pts, eps)[0]


def _monotone_chain(pts: np.ndarray) -> list[int]:
    """Counterclockwise hull cycle; exactly collinear points are dropped."""
    order = np.lexsort((pts[:, 1], pts[:, 0])).tolist()
    xy = pts.tolist()

    def half(seq):
        out: list[int] = []
        for i in seq:
            px, py = xy[i]
            while len(out) >= 2:
                ox, oy = xy[out[-2]]
                ax, ay = xy[out[-1]]
                if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) > 0:
                    break
                out.pop()
            out.append(i)
        return out

    lower = half(order)
    upper = half(order[::-1])
    return lower[:-1] + upper[:-1]


def _raw_hull(pts: np.ndarray):
    """Facets (index arrays), unit outward normals and offsets of a full-dim set."""
    d = pts.shape[1]
    if d == 1:
        lo, hi = int(np.argmin(pts[:, 0])), int(np.argmax(pts[:, 0]))
        facets = np.array([[lo], [hi]])
        normals = np.array([[-1.0], [1.0]])
        offsets = np.array([pts[lo, 0], -pts[hi, 0]])
        return facets, normals, offsets
    if d == 2:
        cycle = _monotone_chain(pts)
        facets = np.array([[cycle[i], cycle[(i + 1) % len(cycle)]] for i in range(len(cycle))])
        edge = pts[facets[:, 1]] - pts[facets[:, 0]]
        normals = np.column_stack([edge[:, 1], -edge[:, 0]])
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        offsets = -np.einsum("ij,ij->i", normals, pts[facets[:, 0]])
        return facets, normals, offsets
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateHull(f"qhull failed: {exc}".splitlines()[0]) from None
    facets = hull.simplices.copy()
    normals = hull.equations[:, :3].copy()
    offsets = hull.equations[:, 3].copy()
    a, b, c = (pts[facets[:, k]] for k in range(3))
    flip = np.einsum("ij,ij->i", np.cross(b - a, c - a), normals) < 0
    facets[flip] = facets[flip][:, [0, 2, 1]]
    return facets, normals, offsets


def _lp_direction(v: np.ndarray, others: np.ndarray) -> tuple[np.ndarray | None, float]:
    """Direction maximizing the smallest separation of ``v`` from ``others``.

    Returns the unit direction (or None) and an upper bound on the
    separation achievable by any unit direction.
    """
    if len(others) == 0:
        return None, math.inf
    d = v.shape[0]
    diff = v - others
    scale = float(np.abs(diff).max()) or 1.0
    res = linprog(
        c=np.r_[np.zeros(d), -1.0],
        A_ub=np.hstack([-diff / scale, np.ones((len(diff), 1))]),
        b_ub=np.zeros(len(diff)),
        bounds=[(-1.0, 1.0)] * d + [(None, None)],
        method="highs",
    )
    if res.status != 0:
        return None, math.inf
    # unit directions lie in the box, so the box optimum bounds them
    bound = -res.fun * scale
    u = res.x[:d]
    nu = float(np.linalg.norm(u))
    if bound <= 0 or nu == 0:
        return None, bound
    return u / nu, bound


def _lp_margin(v: np.ndarray, others: np.ndarray) -> float:
    """max over directions u of min_w u.(v - w), in distance units."""
    if len(others) == 0:
        return math.inf
    d = v.shape[0]
    diff = v - others
    scale = float(np.abs(diff).max()) or 1.0
    diff = diff / scale
    # variables (u, t): maximize t subject to t - u.diff_w <= 0, |u_k| <= 1
    a_ub = np.hstack([-diff, np.ones((len(diff), 1))])
    res = linprog(
        c=np.r_[np.zeros(d), -1.0],
        A_ub=a_ub,
        b_ub=np.zeros(len(diff)),
        bounds=[(-1.0, 1.0)] * d + [(None, None)],
        method="highs",
    )
    if res.status != 0:
        return 0.0
    u = res.x[:d]
    t = -res.fun
    nu = float(np.linalg.norm(u))
    if nu == 0.0:
        return 0.0
    return t / nu * scale


_LOCAL_LP = 48


def _is_strict(i: int, pts: np.ndarray, tree, eps: float) -> bool:
    """Decide whether some unit direction separates ``pts[i]`` from all others by more than ``eps``.

    Cutting planes: solve on the nearest points, add every point the
    candidate direction fails to separate, repeat.
    """
    v = pts[i]
    others = np.delete(pts, i, axis=0)
    if tree is None:
        active = np.arange(len(others))
    else:
        _, near = tree.query(v, k=min(_LOCAL_LP + 1, len(pts)))
        near = near[near != i]
        active = np.where(near > i, near - 1, near)
    while True:
        u, bound = _lp_direction(v, others[active])
        if bound <= eps:
            return False
        if u is None:
            return _lp_margin(v, others) > eps
        sep = (v - others) @ u
        if float(sep.min()) > eps:
            return True
        worse = np.flatnonzero(sep <= eps)
        fresh = np.setdiff1d(worse, active)
        if len(fresh) == 0:
            return _lp_margin(v, others) > eps
        active = np.union1d(active, fresh[np.argsort(sep[fresh])[:256]])


def _segment_distance(v: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    den = float(ab @ ab)
    t = 0.0 if den == 0.0 else min(1.0, max(0.0, float((v - a) @ ab) / den))
    return float(np.linalg.norm(v - a - t * ab))


def _planar_margin(i: int, a: int, b: int, pts: np.ndarray, tree) -> float:
    """Distance from hull vertex ``pts[i]`` to the hull of all other points (2D).

    Removing ``v`` exposes only points inside the triangle (a, v, b) of
    its hull neighbours, so the nearby chain is rebuilt from those.
    """
    v, pa, pb = pts[i], pts[a], pts[b]
    reach = max(np.linalg.norm(pa - v), np.linalg.norm(pb - v))
    near = np.array(tree.query_ball_point(v, reach * (1 + 1e-12)), dtype=int)
    near = near[(near != i) & (near != a) & (near != b)]
    tri = np.array([pa, v, pb])
    if len(near):
        q = pts[near]
        e = np.roll(tri, -1, axis=0) - tri
        side = np.stack([e[k, 0] * (q[:, 1] - tri[k, 1]) - e[k, 1] * (q[:, 0] - tri[k, 0]) for k in range(3)])
        inside = np.all(side >= 0, axis=0) | np.all(side <= 0, axis=0)
        near = near[inside]
    sub = pts[np.r_[a, b, near].astype(int)]
    if len(sub) == 2:
        return _segment_distance(v, sub[0], sub[1])
    cycle = _monotone_chain(sub)
    return min(_segment_distance(v, sub[cycle[k]], sub[cycle[(k + 1) % len(cycle)]]) for k in range(len(cycle)))


def _witness_margins(pts: np.ndarray, facets: np.ndarray, normals: np.ndarray) -> np.ndarray:
    """Lower bound on each hull vertex's separation from all other points.

    The witness direction is the normalized sum of incident facet normals.
    Among hull vertices the runner-up for any direction in a vertex's
    normal cone is one of its hull neighbours, so only those and the
    non-vertex points need checking. Non-vertices get ``-inf``.
    """
    n, d = pts.shape
    u = np.zeros((n, d))
    for k in range(facets.shape[1]):
        np.add.at(u, facets[:, k], normals)
    norms = np.linalg.norm(u, axis=1)
    norms[norms == 0] = 1.0
    u /= norms[:, None]
    margin = np.full(n, np.inf)
    cols = facets.shape[1]
    for a in range(cols):
        for b in range(cols):
            if a == b:
                continue
            ia, ib = facets[:, a], facets[:, b]
            vals = np.einsum("ij,ij->i", u[ia], pts[ia] - pts[ib])
            np.minimum.at(margin, ia, vals)
    cand = np.unique(facets)
    rest = np.setdiff1d(np.arange(n), cand)
    if len(rest):
        top = np.einsum("ij,ij->i", u[cand], pts[cand])
        for start in range(0, len(rest), 1024):
            chunk = pts[rest[start:start + 1024]]
            margin[cand] = np.minimum(margin[cand], top - (u[cand] @ chunk.T).max(axis=1))
    out = np.full(n, -np.inf)
    out[cand] = margin[cand]
    return out


def _classify_full(pts: np.ndarray, eps: float) -> np.ndarray:
    """Classify a duplicate-free, full-dimensional set. Returns an int code array.

    0 = strict vertex, 1 = boundary non-vertex, 2 = interior.
    """
    n, d = pts.shape
    facets, normals, offsets = _raw_hull(pts)
    codes = np.full(n, 2, dtype=np.int8)
    cand = np.unique(facets)
    margin = _witness_margins(pts, facets, normals)
    if d == 1:
        margin[cand] = [_lp_margin(pts[i], np.delete(pts, i, axis=0)) for i in cand]

    strict = cand[margin[cand] > eps]
    unsure = cand[margin[cand] <= eps]
    if len(unsure) and d == 2:
        tree = cKDTree(pts)
        succ = dict(zip(facets[:, 0].tolist(), facets[:, 1].tolist()))
        pred = {b: a for a, b in succ.items()}
        found = [i for i in unsure if _planar_margin(i, pred[i], succ[i], pts, tree) > eps]
        strict = np.append(strict, np.array(found, dtype=int))
    elif len(unsure):
        tree = cKDTree(pts) if n > _LOCAL_LP else None
        found = [i for i in unsure if _is_strict(i, pts, tree, eps)]
        strict = np.append(strict, np.array(found, dtype=int))
    codes[strict] = 0

    rest = np.flatnonzero(codes != 0)
    for start in range(0, len(rest), 2048):
        chunk = rest[start:start + 2048]
        dist = (pts[chunk] @ normals.T + offsets).max(axis=1)
        codes[chunk] = np.where(dist >= -eps, 1, 2)
    return codes


def _dedupe(pts: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Map each point to a representative; returns (rep_of_point, group_size)."""
    n = len(pts)
    parent = np.arange(n)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if eps > 0 and n > 1:
        for i, j in cKDTree(pts).query_pairs(eps, output_type="ndarray"):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    else:
        _, first = np.unique(pts, axis=0, return_index=True)
        _, inv = np.unique(pts, axis=0, return_inverse=True)
        return first[inv.ravel()], np.bincount(inv.ravel())[inv.ravel()]
    reps = np.array([find(i) for i in range(n)])
    sizes = np.bincount(reps, minlength=n)[reps]
    return reps, sizes


def _classify_codes(pts: np.ndarray, eps: float) -> tuple[np.ndarray, int]:
    reps, sizes = _dedupe(pts, eps)
    uniq = np.unique(reps)
    upts = pts[uniq]
    rank, centroid, vt = _affine_frame(upts, eps)
    if rank == 0:
        return np.ones(len(pts), dtype=np.int8), 0
    sub = (upts - centroid) @ vt[:rank].T if rank < pts.shape[1] else upts
    if len(sub) == rank:
        # a simplex in its own affine hull: every point is extreme
        ucodes = np.zeros(len(sub), dtype=np.int8)
    else:
        ucodes = _classify_full(sub, eps)
    lookup = dict(zip(uniq.tolist(), ucodes.tolist()))
    codes = np.array([lookup[r] for r in reps], dtype=np.int8)
    codes[(sizes > 1) & (codes == 0)] = 1
    return codes, rank


_CODE_TO_CLASS = (PointClass.STRICT_VERTEX, PointClass.BOUNDARY, PointClass.INTERIOR)


def _min_points(d: int) -> int:
    return d + 1


def classify_points(points, tol: Tolerance | None = None) -> list[PointClass]:
    """Classify every point as a strict hull vertex, a boundary non-vertex or interior.

    Flat inputs are classified inside their affine hull; use
    :func:`affine_rank` to detect that case.
    """
    pts = check_points(points)
    d = pts.shape[1]
    if len(pts) < _min_points(d):
        raise TooFewPoints(f"need at least {_min_points(d)} points in {d}D, got {len(pts)}")
    eps = _resolve_tol(tol).threshold(pts)
    codes, _ = _classify_codes(pts, eps)
    return [_CODE_TO_CLASS[c] for c in codes]


def strict_margins(points, tol: Tolerance | None = None) -> np.ndarray:
    """Exact separation margin of each point from the hull of the others.

    Positive values mean the point is a strict vertex by that distance;
    this is the slow LP route, intended for diagnostics and tests.
    """
    pts = check_points(points)
    return np.array([_lp_margin(pts[i], np.delete(pts, i, axis=0)) for i in range(len(pts))])


def convex_hull(points, tol: Tolerance | None = None) -> HullDescription:
    pts = check_points(points)
    n, d = pts.shape
    if n < _min_points(d):
        raise TooFewPoints(f"need at least {_min_points(d)} points in {d}D, got {n}")
    eps = _resolve_tol(tol).threshold(pts)
    reps, _ = _dedupe(pts, eps)
    uniq = np.unique(reps)
    rank, _, _ = _affine_frame(pts[uniq], eps)
    if rank < d:
        kind = "collinear" if d == 2 else "coplanar"
        raise DegenerateHull(f"input points are {kind} (affine rank {rank})")
    upts = pts[uniq]
    facets, normals, offsets = _raw_hull(upts)
    codes = _classify_full(upts, eps)
    keep = codes == 0
    if d == 2:
        cycle = [int(i) for i in facets[:, 0] if keep[i]]
        verts = uniq[cycle]
        closed = np.column_stack([verts, np.roll(verts, -1)])
        edge = pts[closed[:, 1]] - pts[closed[:, 0]]
        nrm = np.column_stack([edge[:, 1], -edge[:, 0]])
        nrm /= np.linalg.norm(nrm, axis=1)[:, None]
        off = -np.einsum("ij,ij->i", nrm, pts[closed[:, 0]])
        return HullDescription(2, verts, closed, nrm, off)
    sub = np.flatnonzero(keep)
    f2, n2, o2 = _raw_hull(upts[sub])
    return HullDescription(3, np.sort(uniq[sub]), uniq[sub][f2], n2, o2)


def origin_interior(hull: HullDescription, points=None, tol: Tolerance | None = None) -> bool:
    """True iff the origin lies strictly inside ``hull`` by more than the tolerance."""
    if hull is None or len(hull.offsets) == 0:
        return False
    eps = 0.0 if points is None else _resolve_tol(tol).threshold(check_points(points))
    return bool(np.max(hull.offsets) < -eps)


def origin_inside(points, tol: Tolerance | None = None) -> bool:
    """Convenience wrapper: hull of ``points`` strictly contains the origin."""
    try:
        hull = convex_hull(points, tol)
    except (DegenerateHull, TooFewPoints):
        return False
    return origin_interior(hull, points, tol)


def origin_clearance(points) -> float:
    """Distance from the origin to the hull boundary (negative when outside)."""
    hull = convex_hull(points, Tolerance(1e-15))
    return float(-np.max(hull.offsets))


def certify_strict(points, tol: Tolerance | None = None, max_lp: int = 64) -> bool:
    """Cheap sufficient test that every point is a strict vertex and the origin is inside.

    Witness directions settle most points; at most ``max_lp`` remaining
    ones get the exact test. ``True`` is exact; ``False`` means "not
    certified" and the full classification may still succeed.
    """
    pts = check_points(points)
    n, d = pts.shape
    if n < d + 1:
        return False
    eps = _resolve_tol(tol).threshold(pts)
    try:
        facets, normals, offsets = _raw_hull(pts)
    except DegenerateHull:
        return False
    if len(np.unique(facets)) != n or np.max(offsets) >= -eps:
        return False
    unsure = np.flatnonzero(_witness_margins(pts, facets, normals) <= eps)
    if len(unsure) > max_lp:
        return False
    tree = cKDTree(pts) if n > _LOCAL_LP else None
    return all(_is_strict(i, pts, tree, eps) for i in unsure)
