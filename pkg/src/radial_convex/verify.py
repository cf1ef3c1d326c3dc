"""Single verification gate for planar and spatial configurations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .configuration import Configuration
from .errors import DegenerateHull, LengthMismatch, TooFewPoints
from .geom import PointClass, Tolerance, _classify_codes, _raw_hull, _resolve_tol
from .validation import RadiiSet, check_points, check_radii


class Verdict(str, enum.Enum):
    PASS = "Pass"
    PASS_NON_STRICT = "PassNonStrict"
    FAIL = "Fail"

    def __str__(self) -> str:
        return self.value


_CODE_TO_CLASS = (PointClass.STRICT_VERTEX, PointClass.BOUNDARY, PointClass.INTERIOR)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of :func:`verify_configuration`.

    ``reason`` names the first violated condition when the verdict is
    ``Fail``: ``"radius"``, ``"degenerate"``, ``"interior"`` or ``"origin"``.
    """

    radius_residuals: tuple[float, ...]
    classifications: tuple[PointClass, ...]
    origin_inside: bool
    strict: bool
    degenerate: bool
    verdict: Verdict
    reason: str | None = None

    @property
    def max_residual(self) -> float:
        return max(self.radius_residuals) if self.radius_residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "strict": self.strict,
            "origin_inside": self.origin_inside,
            "degenerate": self.degenerate,
            "max_residual": self.max_residual,
            "radius_residuals": list(self.radius_residuals),
            "classifications": [c.value for c in self.classifications],
        }


def _residuals(pts: np.ndarray, radii: RadiiSet, assignment: Sequence[int] | None) -> np.ndarray:
    norms = np.linalg.norm(pts, axis=1)
    if assignment is not None:
        target = radii.as_array()[np.asarray(assignment, dtype=int)]
        return np.abs(norms - target) / target
    # multiset matching: sorted order pairs equal radii arbitrarily, which is harmless
    order = np.argsort(norms, kind="stable")
    target = np.sort(radii.as_array())
    out = np.empty(len(pts))
    out[order] = np.abs(norms[order] - target) / target
    return out


def verify_configuration(
    points,
    radii,
    tol: Tolerance | None = None,
    assignment: Sequence[int] | None = None,
) -> VerificationReport:
    """Check ``points`` against ``radii`` and the convex-configuration definition.

    ``points`` may also be a :class:`Configuration`, whose own radius
    assignment is then used.
    """
    if isinstance(points, Configuration):
        if assignment is None:
            assignment = points.radius_assignment
        points = points.vertices
    tol = _resolve_tol(tol)
    pts = check_points(points)
    rs = check_radii(radii)
    if len(pts) != rs.n:
        raise LengthMismatch(f"{len(pts)} points but {rs.n} radii")
    if assignment is not None:
        assignment = [int(i) for i in assignment]
        if len(assignment) != len(pts) or sorted(assignment) != list(range(rs.n)):
            raise LengthMismatch("radius assignment must be a permutation of the radii indices")
    d = pts.shape[1]
    if len(pts) < d + 1:
        raise TooFewPoints(f"need at least {d + 1} points in {d}D, got {len(pts)}")

    res = _residuals(pts, rs, assignment)
    eps = tol.threshold(pts)
    codes, rank = _classify_codes(pts, eps)
    classes = tuple(_CODE_TO_CLASS[c] for c in codes)
    degenerate = rank < d
    inside = False
    if not degenerate:
        try:
            _, _, offsets = _raw_hull(np.unique(pts, axis=0))
            inside = bool(np.max(offsets) < -eps)
        except DegenerateHull:
            pass
    strict = bool(np.all(codes == 0))

    if float(res.max()) > tol.rel_eps:
        verdict, reason = Verdict.FAIL, "radius"
    elif degenerate:
        verdict, reason = Verdict.FAIL, "degenerate"
    elif np.any(codes == 2):
        verdict, reason = Verdict.FAIL, "interior"
    elif not inside:
        verdict, reason = Verdict.FAIL, "origin"
    elif strict:
        verdict, reason = Verdict.PASS, None
    else:
        verdict, reason = Verdict.PASS_NON_STRICT, None
    return VerificationReport(
        radius_residuals=tuple(float(x) for x in res),
        classifications=classes,
        origin_inside=bool(inside),
        strict=strict,
        degenerate=bool(degenerate),
        verdict=verdict,
        reason=reason,
    )
