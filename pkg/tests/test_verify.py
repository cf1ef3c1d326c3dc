import math

import numpy as np
import pytest

from radial_convex import (
    DimensionMismatch,
    LengthMismatch,
    PointClass,
    TooFewPoints,
    Verdict,
    construct_distinct_2d,
    verify_configuration,
)

SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]


def test_square_passes():
    rep = verify_configuration(SQUARE, [math.sqrt(2)] * 4)
    assert rep.verdict is Verdict.PASS and rep.passed
    assert rep.strict and rep.origin_inside and rep.reason is None
    assert rep.max_residual < 1e-15


def test_chord_is_non_strict():
    rep = verify_configuration(construct_distinct_2d([4, 3, 2, 1]), [4, 3, 2, 1])
    assert rep.verdict is Verdict.PASS_NON_STRICT
    assert rep.classifications.count(PointClass.BOUNDARY) == 1
    assert rep.origin_inside and not rep.strict


def test_triangle_missing_origin():
    pts = np.array([(1, 0), (2, 0), (1, 1)], dtype=float)
    rep = verify_configuration(pts, np.linalg.norm(pts, axis=1))
    assert rep.verdict is Verdict.FAIL and rep.reason == "origin"


def test_wrong_radius_fails_first():
    rep = verify_configuration(SQUARE, [1.0] * 4)
    assert rep.verdict is Verdict.FAIL and rep.reason == "radius"


def test_interior_point_fails():
    pts = [(2, 0), (0, 2), (-2, 0), (0, -2), (0.5, 0)]
    rep = verify_configuration(pts, [2, 2, 2, 2, 0.5])
    assert rep.verdict is Verdict.FAIL and rep.reason == "interior"


def test_coplanar_fails_degenerate():
    pts = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    rep = verify_configuration(pts, [1] * 4)
    assert rep.verdict is Verdict.FAIL and rep.reason == "degenerate"


def test_permutation_invariant_by_multiset():
    rng = np.random.default_rng(0)
    pts = np.array([(3, 0), (0, 2), (-1, 0), (0, -1.5)], dtype=float)
    radii = [3, 2, 1, 1.5]
    base = verify_configuration(pts, radii).verdict
    for _ in range(5):
        assert verify_configuration(pts[rng.permutation(4)], rng.permutation(radii)).verdict is base


def test_assignment_is_used():
    pts = [(3, 0), (0, 2), (-1, 0), (0, -1.5)]
    assert verify_configuration(pts, [3, 2, 1, 1.5], assignment=[0, 1, 2, 3]).verdict is Verdict.PASS
    assert verify_configuration(pts, [2, 3, 1, 1.5], assignment=[0, 1, 2, 3]).reason == "radius"


def test_errors():
    with pytest.raises(LengthMismatch):
        verify_configuration(SQUARE, [1, 1, 1])
    with pytest.raises(LengthMismatch):
        verify_configuration(SQUARE, [1, 1, 1, 1], assignment=[0, 0, 1, 2])
    with pytest.raises(DimensionMismatch):
        verify_configuration([(1, 2, 3, 4)] * 5, [1] * 5)
    with pytest.raises(TooFewPoints):
        verify_configuration([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [1, 1, 1])


def test_report_dict():
    d = verify_configuration(SQUARE, [math.sqrt(2)] * 4).to_dict()
    assert d["verdict"] == "Pass"
    assert d["classifications"] == ["StrictVertex"] * 4
