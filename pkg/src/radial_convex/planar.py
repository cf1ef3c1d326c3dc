"""Planar convex configurations for prescribed radii.

The chord constructions place most points on one or two straight lines,
which yields a convex configuration whose middle points are boundary
non-vertices. The strictify operations rotate points on their circles
(radii never change) until every point is a strict vertex. When the
literal perturbation scheme does not reach strictness, rotation-only
fallbacks are tried and the first verified candidate is returned:

* a focal-conic placement on an ellipse with a focus at the origin, for
  radii repeated at most twice;
* an incremental spiral that inserts radii from the smallest up, keeping a
  clearance ``tau`` maximized by bisection;
* a polar-dual placement that puts radius ``r`` at a direction where the
  support function of a fixed strictly convex body equals ``1/r``, which
  makes every point a vertex by construction;
* a sequential LP polish of the thinnest of these, which moves angles
  within a trust region to raise the smallest clearance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .configuration import Configuration2D
from .errors import BudgetUnderflow, RadiiNotDistinct, RepetitionTooHigh, TooFewPoints
from .geom import Tolerance, _resolve_tol
from .validation import RadiiSet, check_radii
from .verify import Verdict, verify_configuration

TWO_PI = 2.0 * math.pi
MAX_MULTIPLICITY = 4


# ------------------------------------------------------------------ helpers


def _descending(rs: RadiiSet) -> tuple[np.ndarray, list[int]]:
    order = rs.descending_indices()
    return rs.as_array()[order], order


def _require_n(rs: RadiiSet, n_min: int = 3) -> None:
    if rs.n < n_min:
        raise TooFewPoints(f"need at least {n_min} radii, got {rs.n}")


def _polygon_margins(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Clearance of each vertex beyond its neighbours' chord, and origin distance left of each edge."""
    prev, nxt = np.roll(P, 1, axis=0), np.roll(P, -1, axis=0)
    e = nxt - prev
    cl = ((P - prev)[:, 0] * e[:, 1] - (P - prev)[:, 1] * e[:, 0]) / np.linalg.norm(e, axis=1)
    e2 = nxt - P
    oc = (P[:, 0] * e2[:, 1] - P[:, 1] * e2[:, 0]) / np.linalg.norm(e2, axis=1)
    return cl, oc


def polygon_margin(P) -> float:
    """Smallest strict-convexity or origin clearance of a ccw polygon (negative if violated)."""
    P = np.asarray(P, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        cl, oc = _polygon_margins(P)
    m = min(float(cl.min()), float(oc.min()))
    return m if math.isfinite(m) else -math.inf


def _threshold_bound(r_max: float, tol: Tolerance) -> float:
    # the bounding-box diagonal of any realization is at most 2*sqrt(2)*r_max
    return max(tol.rel_eps * 2.0 * math.sqrt(2.0) * r_max, tol.abs_floor)


def _ccw_order(P: np.ndarray) -> np.ndarray:
    return np.argsort(np.mod(np.arctan2(P[:, 1], P[:, 0]), TWO_PI), kind="stable")


def _make(P: np.ndarray, assign, rs: RadiiSet, **meta) -> Configuration2D:
    P = np.asarray(P, dtype=float)
    assign = list(assign)
    area = 0.5 * float(np.sum(P[:, 0] * np.roll(P[:, 1], -1) - np.roll(P[:, 0], -1) * P[:, 1]))
    if area < 0:
        P, assign = P[::-1], assign[::-1]
    return Configuration2D(P, tuple(assign), rs, dict(meta))


# ------------------------------------------------------------- distinct radii


def construct_distinct_2d(radii) -> Configuration2D:
    """Chord construction for pairwise distinct radii.

    All but the smallest radius are placed on the horizontal line
    ``y = c`` with ``c`` halfway between the two smallest radii; the
    smallest radius goes opposite the midpoint of the chord's extreme
    points. Middle chord points are boundary non-vertices.
    """
    rs = check_radii(radii)
    _require_n(rs)
    if not rs.is_distinct:
        raise RadiiNotDistinct("radii must be pairwise distinct; use construct_repeated_2d")
    r, order = _descending(rs)
    n = len(r)
    c = 0.5 * (r[-1] + r[-2])
    V = np.empty((n, 2))
    V[:-1, 0] = np.sqrt(r[:-1] ** 2 - c * c)
    V[:-1, 1] = c
    M = 0.5 * (V[0] + V[-2])
    V[-1] = -r[-1] * M / np.linalg.norm(M)
    return Configuration2D(
        V, tuple(order), rs, {"construction": "chord", "c": float(c), "M": M.tolist()}
    )


def chord_budget(config: Configuration2D) -> float:
    """Angular budget ``theta = gamma - zeta`` of a chord configuration."""
    V = config.vertices
    r = config.assigned_radii()
    n = len(r)
    M = 0.5 * (V[0] + V[n - 2])
    d = lambda a, b: float(np.linalg.norm(a - b))  # noqa: E731
    gamma = math.acos(np.clip((r[0] ** 2 + r[n - 2] ** 2 - d(V[0], V[n - 2]) ** 2) / (2 * r[0] * r[n - 2]), -1, 1))
    dvm = d(V[n - 1], M)
    zeta = math.acos(np.clip((dvm ** 2 + r[n - 2] ** 2 - d(M, V[n - 2]) ** 2) / (2 * dvm * r[n - 2]), -1, 1))
    return gamma - zeta


def _rotate(P: np.ndarray, angles) -> np.ndarray:
    c, s = np.cos(angles), np.sin(angles)
    return np.column_stack([c * P[:, 0] - s * P[:, 1], s * P[:, 0] + c * P[:, 1]])


def _budget_rotation(config: Configuration2D, theta: float) -> np.ndarray:
    """Rotate middle chord points toward the interior by equal cumulative steps summing to theta/2."""
    V = config.vertices
    n = len(V)
    steps = np.zeros(n)
    if n > 3:
        delta = theta / (2 * (n - 3))
        steps[2:n - 1] = -delta * np.arange(1, n - 2)
    return _rotate(V, steps)


# incremental spiral ---------------------------------------------------------


def _ray_circle(q, d, r):
    """Point where the ray ``q + t d`` (t > 0, q inside) leaves the circle of radius r."""
    qd = q[0] * d[0] + q[1] * d[1]
    qq = q[0] * q[0] + q[1] * q[1]
    t = -qd + math.sqrt(max(qd * qd - (qq - r * r), 0.0))
    return q[0] + t * d[0], q[1] + t * d[1]


def _turn(v, a):
    c, s = math.cos(a), math.sin(a)
    return c * v[0] - s * v[1], s * v[0] + c * v[1]


def _side(a, b, p):
    ex, ey = b[0] - a[0], b[1] - a[1]
    return (ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / math.hypot(ex, ey)


def _min_rotation(P, r, tau):
    """Smallest clockwise angle from P[0] for a new point on circle r keeping every
    affected vertex and the origin ``tau`` clear."""
    b, q, s = P[0], P[1], P[-1]
    phb = math.atan2(b[1], b[0])
    wx, wy = b[0] - q[0], b[1] - q[1]
    L = math.hypot(wx, wy)
    nb = math.hypot(b[0], b[1])
    if tau >= L or tau >= nb:
        return None
    p1 = _ray_circle(q, _turn((wx / L, wy / L), -math.asin(tau / L)), r)
    p2 = _ray_circle(b, _turn((b[0] / nb, b[1] / nb), -math.asin(tau / nb)), r)
    a = max((phb - math.atan2(p1[1], p1[0])) % TWO_PI, (phb - math.atan2(p2[1], p2[0])) % TWO_PI)
    ex, ey = b[0] - s[0], b[1] - s[1]
    Le = math.hypot(ex, ey)
    nx, ny = ey / Le, -ex / Le
    c = nx * b[0] + ny * b[1] + tau
    if c > r:
        return None
    if nx * r * math.cos(phb - a) + ny * r * math.sin(phb - a) < c:
        thn, dl = math.atan2(ny, nx), math.acos(c / r)
        cands = [x for x in ((phb - (thn + sg * dl)) % TWO_PI for sg in (1, -1)) if x > a]
        if not cands:
            return None
        a = min(cands)
    return a if a < math.pi else None


def _spiral(r: np.ndarray, tau: float, start, lookahead: float):
    """ccw polygon with P[j] on circle r[j] (r descending), or None."""
    P = [(r[-3 + k] * math.cos(start[k]), r[-3 + k] * math.sin(start[k])) for k in range(3)]

    def fits(p):
        return -_side(P[-2], p, P[-1]) >= tau and _side(P[-1], p, (0.0, 0.0)) >= tau

    for k in range(len(r) - 4, -1, -1):
        a = _min_rotation(P, r[k], tau)
        if a is None:
            return None
        phb = math.atan2(P[0][1], P[0][0])
        if lookahead and k > 0 and r[k - 1] <= lookahead * r[k]:
            # a near-equal successor needs room; trade some own rotation for it
            best = None
            for j in range(10):
                aj = a * 4 ** j if a > 0 else 1e-9 * 4 ** j
                if aj >= math.pi / 2:
                    break
                p = (r[k] * math.cos(phb - aj), r[k] * math.sin(phb - aj))
                if not fits(p):
                    break
                a2 = _min_rotation([p] + P, r[k - 1], tau)
                if a2 is not None and (best is None or aj + a2 < best[0]):
                    best = (aj + a2, aj)
            if best is not None:
                a = best[1]
        p = (r[k] * math.cos(phb - a), r[k] * math.sin(phb - a))
        if not fits(p):
            return None
        P.insert(0, p)
    return np.array(P)


_SPIRAL_STARTS = ((0.0, 2.0, 4.0), (0.0, 1.5, 3.6), (0.0, 2.4, 4.2), (0.0, 1.2, 3.2))


def _spiral_search(r: np.ndarray, eps: float, lookahead: float = 0.0, goal: float = 8.0, steps: int = 4):
    """Spiral with clearance ``goal * eps`` if possible, else the best bisected clearance."""
    best = (-math.inf, None)
    if len(r) < 3:
        return best
    for start in _SPIRAL_STARTS:
        P = _spiral(r, goal * eps, start, lookahead)
        if P is not None:
            return polygon_margin(P), P
    for start in _SPIRAL_STARTS:
        lo, hi = math.log(1.05 * eps), math.log(goal * eps)
        P = _spiral(r, math.exp(lo), start, lookahead)
        if P is None:
            continue
        for _ in range(steps):
            mid = 0.5 * (lo + hi)
            Q = _spiral(r, math.exp(mid), start, lookahead)
            if Q is None:
                hi = mid
            else:
                lo, P = mid, Q
        m = polygon_margin(P)
        if m > best[0]:
            best = (m, P)
        if m >= 4 * eps:
            break
    return best


def _spiral_seed(r: np.ndarray, eps: float):
    """Some spiral polygon, possibly with clearance below ``eps``, as a polishing seed."""
    for frac in (0.5, 0.1, 0.01, 1e-3):
        for start in _SPIRAL_STARTS:
            P = _spiral(r, frac * eps, start, 0.0)
            if P is not None:
                return P
    return None


# sequential LP polish ------------------------------------------------------


def _angle_margins(phi: np.ndarray, r: np.ndarray) -> np.ndarray:
    P = np.column_stack([r * np.cos(phi), r * np.sin(phi)])
    cl, oc = _polygon_margins(P)
    return np.concatenate([cl, oc])


def _angle_jacobian(phi: np.ndarray, r: np.ndarray, m0: np.ndarray, h: float):
    # each margin involves at most three cyclically consecutive angles, so
    # angles at least three apart can be differenced together
    from scipy.sparse import coo_matrix

    n = len(phi)
    full = n - n % 3
    colors = [np.arange(c, full, 3) for c in range(3)] + [np.array([j]) for j in range(full, n)]
    rows, cols, vals = [], [], []
    for S in colors:
        if len(S) == 0:
            continue
        d = np.zeros(n)
        d[S] = h
        dm = (_angle_margins(phi + d, r) - m0) / h
        R = np.stack([(S - 1) % n, S, (S + 1) % n, n + (S - 1) % n, n + S], axis=1)
        rows.append(R.ravel())
        cols.append(np.repeat(S, 5))
        vals.append(dm[R].ravel())
    rows, cols, vals = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    return coo_matrix((vals, (rows, cols)), shape=(2 * n, n)).tocsr()


def _lp_polish(P: np.ndarray, eps: float, goal: float = 4.0, iters: int = 150) -> tuple[float, np.ndarray]:
    """Raise the smallest polygon margin by trust-region sequential linear programming.

    Radii are untouched; only the angles move. Stops once the margin
    reaches ``goal * eps`` or the trust region collapses.
    """
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix, hstack

    r = np.linalg.norm(P, axis=1)
    phi = np.unwrap(np.arctan2(P[:, 1], P[:, 0]))
    n = len(r)
    m = _angle_margins(phi, r)
    f = float(m.min())
    delta = min(0.05, 2 * math.pi / n)
    h = 1e-7
    stall = 0
    for _ in range(iters):
        if f >= goal * eps or delta < 1e-13 or stall >= 12:
            break
        J = _angle_jacobian(phi, r, m, h)
        # rows that cannot bind inside the trust region are dropped
        reach = np.asarray(abs(J).sum(axis=1)).ravel() * delta
        keep = np.flatnonzero(m - reach <= float(np.min(m + reach)))
        A = J[keep]
        res = linprog(
            np.r_[np.zeros(n), -1.0],
            A_ub=hstack([-A, csr_matrix(np.ones((len(keep), 1)))], format="csr"),
            b_ub=m[keep],
            bounds=[(-delta, delta)] * n + [(None, None)],
            method="highs",
        )
        if res.status != 0:
            delta *= 0.5
            stall += 1
            continue
        trial = phi + res.x[:n]
        mt = _angle_margins(trial, r)
        gain = float(mt.min()) - f
        if gain > 0:
            phi, m, f = trial, mt, f + gain
            delta = min(2 * delta, 0.5)
            stall = stall + 1 if gain < 0.01 * eps else 0
        else:
            delta *= 0.3
            stall += 1
    return f, np.column_stack([r * np.cos(phi), r * np.sin(phi)])


# polar-dual placement -------------------------------------------------------

_QUADRANT = (
    lambda f: f,
    lambda f: math.pi - f,
    lambda f: math.pi + f,
    lambda f: -f,
)


def _level_angle(v: float, a: float, b: float, w: float) -> float:
    """Angle in [0, pi/2] where the support function sqrt(a^2 cos^2 + b^2 sin^2) + w equals v."""
    g = v - w
    c2 = (g * g - b * b) / (a * a - b * b)
    return math.acos(math.sqrt(min(1.0, max(0.0, c2))))


def _dual_place(r: np.ndarray, a: float, b: float, w: float) -> tuple[np.ndarray, np.ndarray]:
    """Place r[j] at a direction where the body's support function is 1/r[j].

    Returns ccw points and the index into ``r`` realized by each.
    """
    u = 1.0 / r
    levels, inverse = np.unique(u, return_inverse=True)
    members = [np.flatnonzero(inverse == i).tolist() for i in range(len(levels))]
    fs = [_level_angle(v, a, b, w) for v in levels]
    last = [-1.0] * 4
    phis: list[tuple[float, int]] = []
    for i in np.argsort(fs, kind="stable"):
        f, idx = fs[i], members[i]
        best = None
        for sub in itertools.combinations(range(4), len(idx)):
            key = min(f - last[q] for q in sub)
            if best is None or key > best[0] + 1e-15:
                best = (key, sub)
        for q, j in zip(best[1], idx):
            last[q] = f
            phis.append((_QUADRANT[q](f) % TWO_PI, j))
    phis.sort()
    ang = np.array([p for p, _ in phis])
    idx = np.array([j for _, j in phis])
    return np.column_stack([r[idx] * np.cos(ang), r[idx] * np.sin(ang)]), idx


def _dual_search(r: np.ndarray, eps: float):
    u = 1.0 / r
    best = (-math.inf, None, None)
    for s in (1.0, 0.7, 0.4, 0.15):
        for d in (0.3, 0.1, 0.02):
            lo = u.min() * (1 - d)
            w = s * lo
            b = lo - w
            for e in (1e-3, 0.02, 0.3):
                a = u.max() * (1 + e) - w
                P, idx = _dual_place(r, a, b, w)
                m = polygon_margin(P)
                if m > best[0]:
                    best = (m, P, idx)
                if best[0] > 16 * eps:
                    return best
    return best


# focal conic ----------------------------------------------------------------


def _conic_place(r: np.ndarray, r_far: float, r_near: float) -> tuple[np.ndarray, np.ndarray]:
    """Two-arm placement on an ellipse with a focus at the origin.

    The ellipse ``rho(phi) = 1 / (A - B cos phi)`` reaches ``r_far`` at
    ``phi = 0`` and ``r_near`` at ``phi = pi``; it is the polar body of a
    disc, so every point on it is a strict vertex. Descending radii
    alternate between the upper and lower arm. ``r`` must be descending
    with multiplicities at most two.
    """
    A = 0.5 * (1.0 / r_near + 1.0 / r_far)
    B = 0.5 * (1.0 / r_near - 1.0 / r_far)
    f = np.arccos(np.clip((A - 1.0 / r) / B, -1.0, 1.0))
    phi = np.where(np.arange(len(r)) % 2 == 0, f, -f)
    idx = np.argsort(np.mod(phi, TWO_PI), kind="stable")
    return np.column_stack([r[idx] * np.cos(phi[idx]), r[idx] * np.sin(phi[idx])]), idx


def _conic_search(r: np.ndarray, eps: float):
    best = (-math.inf, None, None)
    for a in (1.0, 1.001, 1.02, 1.2):
        for b in (1.0, 0.999, 0.98, 0.8, 0.5):
            P, idx = _conic_place(r, r[0] * a, r[-1] * b)
            m = polygon_margin(P)
            if m > best[0]:
                best = (m, P, idx)
            if m > 16 * eps:
                return best
    return best


# shared fallback ------------------------------------------------------------


def _robust_candidates(r: np.ndarray, eps: float, prefer_dual: bool, quick: bool = False):
    """Yield (margin, points, index-into-r, method) candidates, cheapest first.

    Every family's best placement is offered first; thin ones are then
    offered again after the sequential LP polish, which keeps the cyclic order.
    """
    ident = np.arange(len(r))
    two_arm = len(r) < 3 or np.all(r[2:] < r[:-2])

    def conic():
        m, P, idx = _conic_search(r, eps)
        return m, P, idx, "focal-conic"

    def dual():
        m, P, idx = _dual_search(r, eps)
        return m, P, idx, "support-function"

    def spiral(look):
        m, P = _spiral_search(r, eps, lookahead=look)
        if P is None:
            P = _spiral_seed(r, eps)
            m = polygon_margin(P) if P is not None else -math.inf
        return m, P, ident, "incremental-spiral"

    if prefer_dual:
        families = [dual] + ([conic] if two_arm else []) + [lambda: spiral(0.0)]
    else:
        families = ([conic] if two_arm else []) + [lambda: spiral(0.0), dual]
    families.append(lambda: spiral(1.5))
    if quick:
        families = families[:1]
    seeds = []
    for make in families:
        m, P, idx, method = make()
        if P is None:
            continue
        yield m, P, idx, method
        seeds.append((m, P, idx, method))
    if quick:
        return
    # polishing is costly, so it only starts once every raw family failed
    seeds.sort(key=lambda c: -c[0])
    for m, P, idx, method in seeds:
        if m < 4 * eps:
            mp, Q = _lp_polish(P, eps)
            yield mp, Q, idx, method + "+lp-polish"


def _robust_strictify(
    config: Configuration2D, tol: Tolerance, prefer_dual: bool, quick: bool = False, **meta
) -> Configuration2D:
    rs = config.radii
    r, order = _descending(rs)
    eps = _threshold_bound(r[0], tol)
    best = None
    for m, P, idx, method in _robust_candidates(r, eps, prefer_dual, quick):
        if best is not None and m <= best[0]:
            continue
        assign = [order[j] for j in idx]
        cand = _make(P, assign, rs, **{**config.meta, **meta, "strictify": method, "margin": float(m)})
        best = (m, cand)
        if m > tol.threshold(cand.vertices) and verify_configuration(cand, rs, tol).verdict is Verdict.PASS:
            return cand
    return best[1] if best is not None else config


def strictify_distinct_2d(config: Configuration2D, tol: Tolerance | None = None) -> Configuration2D:
    """Rotate chord points on their circles until every point is a strict vertex.

    First tries the equal-split budget rotation; if that does not verify,
    falls back to the rotation-only constructions described in the module
    docstring. Radii are never changed.
    """
    return _strictify_distinct(config, _resolve_tol(tol), quick=False)


def _strictify_distinct(config: Configuration2D, tol: Tolerance, quick: bool) -> Configuration2D:
    rs = config.radii
    n = config.n
    if n == 3:
        return config.with_vertices(config.vertices, strictify="identity", theta=None)
    theta = chord_budget(config)
    if not theta > 0:
        raise BudgetUnderflow(f"angular budget theta = {theta!r} is not positive")
    V = _budget_rotation(config, theta)
    cand = config.with_vertices(V, strictify="budget-rotation", theta=float(theta))
    if polygon_margin(V) > tol.threshold(V) and verify_configuration(cand, rs, tol).verdict is Verdict.PASS:
        return cand
    return _robust_strictify(config, tol, prefer_dual=False, quick=quick, theta=float(theta))


# ------------------------------------------------------------- repeated radii


def _check_repeated(rs: RadiiSet) -> None:
    _require_n(rs)
    worst = max(rs.multiplicities)
    if worst > MAX_MULTIPLICITY:
        raise RepetitionTooHigh(
            f"a radius repeats {worst} times (at most {MAX_MULTIPLICITY} supported); "
            "use probe_conjecture_2d to search for a configuration"
        )


def construct_repeated_2d(radii) -> Configuration2D:
    """Two-chord construction for radii with multiplicities up to four.

    Distinct radii are delegated to the chord construction; repeated radii
    need at least four points.
    """
    rs = check_radii(radii)
    _check_repeated(rs)
    if rs.is_distinct:
        return construct_distinct_2d(rs)
    _require_n(rs, 4)
    layers = rs.layers
    members = rs.layer_members()
    r_min = layers[-1][0]
    c = 0.5 * r_min
    pts: list[tuple[float, float]] = []
    assign: list[int] = []
    if max(rs.multiplicities) == 4:
        # quadrant order keeps any three of a layer around the origin
        signs = ((1, 1), (-1, -1), (-1, 1), (1, -1))
        for (rad, _), idx in zip(layers, members):
            h = math.sqrt(rad * rad - c * c)
            for (sx, sy), i in zip(signs, idx):
                pts.append((sx * c, sy * h))
                assign.append(i)
        meta = {"construction": "two-chord", "case": 1, "c": c}
    else:
        # one point per layer on x = c, the rest on a second chord through M1
        tops = [math.sqrt(rad * rad - c * c) for rad, _ in layers]
        M = np.array([c, 0.5 * (tops[0] + tops[-1])])
        p = max(j for j, (_, m) in enumerate(layers) if m >= 2)
        M1 = -layers[p][0] * M / np.linalg.norm(M)
        x2 = float(M1[0])
        for (rad, m), idx, top in zip(layers, members, tops):
            pts.append((c, top))
            assign.append(idx[0])
            h2 = math.sqrt(max(rad * rad - x2 * x2, 0.0))
            for sy, i in zip((-1, 1), idx[1:]):
                pts.append((x2, sy * h2))
                assign.append(i)
        meta = {"construction": "two-chord", "case": 2, "c": c, "M": M.tolist(), "M1": M1.tolist()}
    P = np.array(pts)
    order = _ccw_order(P)
    return Configuration2D(P[order], tuple(assign[i] for i in order), rs, meta)


def _chord_bulge(config: Configuration2D, fraction: float = 0.25) -> np.ndarray:
    """Rotate collinear chord points outward along a parabolic profile.

    Each vertical chord's interior points move outward by an amount that
    vanishes at the chord ends; the peak is ``fraction`` of the smallest
    radial slack among them.
    """
    V = config.vertices.copy()
    r = config.assigned_radii()
    for x0 in np.unique(np.round(V[:, 0], 12)):
        on = np.flatnonzero(np.isclose(V[:, 0], x0, rtol=0, atol=1e-12 * r.max()))
        if len(on) < 3:
            continue
        y = V[on, 1]
        lo, hi = y.min(), y.max()
        shape = (hi - y) * (y - lo) / (0.25 * (hi - lo) ** 2)
        mid = shape > 0
        if not mid.any():
            continue
        slack = np.min((r[on][mid] - abs(x0)) / shape[mid])
        amp = fraction * slack
        x = abs(x0) + amp * shape
        x = np.minimum(x, r[on])
        V[on, 0] = np.sign(x0) * x
        V[on, 1] = np.sign(y) * np.sqrt(np.maximum(r[on] ** 2 - x * x, 0.0))
    return V


def strictify_repeated_2d(config: Configuration2D, tol: Tolerance | None = None) -> Configuration2D:
    """Perturb a two-chord configuration on its circles until every point is strict."""
    tol = _resolve_tol(tol)
    rs = config.radii
    if rs.is_distinct:
        return strictify_distinct_2d(config, tol)
    if verify_configuration(config, rs, tol).verdict is Verdict.PASS:
        return config.with_vertices(config.vertices, strictify="identity")
    V = _chord_bulge(config)
    if not np.array_equal(V, config.vertices):
        cand = config.with_vertices(V, strictify="chord-bulge")
        if verify_configuration(cand, rs, tol).verdict is Verdict.PASS:
            return cand
    return _robust_strictify(config, tol, prefer_dual=True)


def realize_2d(radii, strict: bool = True, tol: Tolerance | None = None) -> Configuration2D:
    """Dispatch to the distinct or repeated construction and optionally strictify."""
    rs = check_radii(radii)
    if rs.is_distinct:
        cfg = construct_distinct_2d(rs)
        return strictify_distinct_2d(cfg, tol) if strict else cfg
    cfg = construct_repeated_2d(rs)
    return strictify_repeated_2d(cfg, tol) if strict else cfg


# ---------------------------------------------------------------------- probe


@dataclass(frozen=True)
class ProbeOutcome:
    found: bool
    configuration: Configuration2D | None
    iterations: int
    budget_exhausted: bool
    best_score: float = -math.inf


def _score(angles: np.ndarray, r: np.ndarray) -> float:
    order = np.argsort(np.mod(angles, TWO_PI))
    a, rr = angles[order], r[order]
    P = np.column_stack([rr * np.cos(a), rr * np.sin(a)])
    return polygon_margin(P)


def probe_conjecture_2d(
    radii,
    budget: int = 10_000,
    seed: int = 0,
    tol: Tolerance | None = None,
    restart_every: int = 500,
) -> ProbeOutcome:
    """Randomized multi-start hill climbing over the angles of fixed-radius points.

    Each iteration evaluates one candidate angle vector. The score is the
    smallest vertex or origin clearance of the angle-sorted polygon, in
    units of the largest radius. A candidate that scores above the
    tolerance is checked with :func:`verify_configuration`; only a passing
    configuration is reported as found. Not finding one is no proof that
    none exists.
    """
    rs = check_radii(radii)
    _require_n(rs)
    tol = _resolve_tol(tol)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    r = rs.as_array()
    scale = float(r.max())
    eps = _threshold_bound(scale, tol) / scale
    rng = np.random.default_rng(seed)
    n = len(r)
    best_overall = -math.inf
    it = 0
    while it < budget:
        x = rng.uniform(0.0, TWO_PI, n)
        f = _score(x, r) / scale
        it += 1
        step = 0.5
        since = 0
        while it < budget and since < restart_every:
            if f > 2 * eps:
                order = np.argsort(np.mod(x, TWO_PI))
                P = np.column_stack([r[order] * np.cos(x[order]), r[order] * np.sin(x[order])])
                cfg = _make(P, order, rs, construction="probe", seed=seed, score=f)
                if verify_configuration(cfg, rs, tol).verdict is Verdict.PASS:
                    return ProbeOutcome(True, cfg, it, False, f)
            y = x + rng.normal(0.0, step, n)
            g = _score(y, r) / scale
            it += 1
            since += 1
            if g > f:
                x, f = y, g
                step = min(step * 1.5, 1.0)
            else:
                step = max(step * 0.97, 1e-6)
        best_overall = max(best_overall, f)
    return ProbeOutcome(False, None, it, True, best_overall)
