import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import suites
from radial_convex import (
    PointClass,
    RadiiNotDistinct,
    RepetitionTooHigh,
    TooFewPoints,
    Verdict,
    chord_budget,
    classify_points,
    construct_distinct_2d,
    construct_repeated_2d,
    probe_conjecture_2d,
    realize_2d,
    strictify_distinct_2d,
    strictify_repeated_2d,
    verify_configuration,
)
from radial_convex.validation import RadiiSet

S, B = PointClass.STRICT_VERTEX, PointClass.BOUNDARY


def _signed_area(P):
    x, y = P[:, 0], P[:, 1]
    return 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _assert_realizes(cfg, radii):
    r = np.asarray(radii, dtype=float)
    got = np.linalg.norm(cfg.in_input_order(), axis=1)
    np.testing.assert_allclose(got, r, rtol=1e-9)
    assert _signed_area(cfg.vertices) > 0


# ------------------------------------------------------------ distinct chord


def test_chord_4321_coordinates():
    cfg = construct_distinct_2d([4, 3, 2, 1])
    c = 1.5
    # the chord y = c crosses the three larger circles; the last point sits
    # opposite the midpoint of the chord's end points
    chord = np.array([[math.sqrt(r * r - c * c), c] for r in (4, 3, 2)])
    mid = 0.5 * (chord[0] + chord[2])
    last = -mid / np.linalg.norm(mid)
    expected = np.vstack([chord, last])
    np.testing.assert_allclose(cfg.vertices, expected, atol=1e-12)
    np.testing.assert_allclose(cfg.vertices, [[3.7081, 1.5], [2.5981, 1.5], [1.3229, 1.5], [-0.8589, -0.5122]], atol=1e-4)
    assert cfg.meta["c"] == c
    assert classify_points(cfg.vertices) == [S, B, S, S]
    rep = verify_configuration(cfg, [4, 3, 2, 1])
    assert rep.origin_inside
    assert rep.verdict is Verdict.PASS_NON_STRICT


def test_chord_three_points_all_strict():
    cfg = construct_distinct_2d([2, 1, 0.5])
    assert len(cfg.vertices) == 3
    assert classify_points(cfg.vertices) == [S, S, S]
    assert verify_configuration(cfg, [2, 1, 0.5]).verdict is Verdict.PASS


@pytest.mark.parametrize("radii, err", [([1, 1, 2], RadiiNotDistinct), ([2, 1], TooFewPoints)])
def test_chord_preconditions(radii, err):
    with pytest.raises(err):
        construct_distinct_2d(radii)


def test_chord_input_order_preserved():
    radii = [1.0, 4.0, 2.0, 3.0]
    cfg = construct_distinct_2d(radii)
    _assert_realizes(cfg, radii)


# ------------------------------------------------------------ strictify distinct


def test_strictify_4321():
    cfg = construct_distinct_2d([4, 3, 2, 1])
    out = strictify_distinct_2d(cfg)
    assert classify_points(out.vertices) == [S] * 4
    rep = verify_configuration(out, [4, 3, 2, 1])
    assert rep.verdict is Verdict.PASS
    np.testing.assert_allclose(np.linalg.norm(out.vertices, axis=1), np.linalg.norm(cfg.vertices, axis=1), atol=1e-12)


def test_strictify_four_points_single_rotation():
    cfg = construct_distinct_2d([4, 3, 2, 1])
    out = strictify_distinct_2d(cfg)
    assert out.meta["strictify"] == "budget-rotation"
    theta = chord_budget(cfg)
    assert out.meta["theta"] == pytest.approx(theta)
    moved = np.flatnonzero(np.any(out.vertices != cfg.vertices, axis=1))
    assert moved.tolist() == [2]
    a0 = math.atan2(cfg.vertices[2, 1], cfg.vertices[2, 0])
    a1 = math.atan2(out.vertices[2, 1], out.vertices[2, 0])
    assert a0 - a1 == pytest.approx(theta / 2, abs=1e-12)


def test_strictify_three_points_is_identity():
    cfg = construct_distinct_2d([2, 1, 0.5])
    out = strictify_distinct_2d(cfg)
    np.testing.assert_array_equal(out.vertices, cfg.vertices)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_strictify_distinct_random(seed):
    rng = np.random.default_rng(seed)
    radii = suites.distinct_radii(rng, n_hi=40)
    cfg = strictify_distinct_2d(construct_distinct_2d(radii))
    _assert_realizes(cfg, radii)
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS


def test_strictify_distinct_large_instance():
    # adjacent ratios just above 1 + 1e-6
    rng = np.random.default_rng(7)
    r = np.exp(np.cumsum(np.log1p(rng.uniform(1e-6, 3e-6, 10_000))))
    radii = rng.permutation(r)
    cfg = strictify_distinct_2d(construct_distinct_2d(radii))
    _assert_realizes(cfg, radii)
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS


# ------------------------------------------------------------ repeated


def test_repeated_equal_four():
    cfg = construct_repeated_2d([1, 1, 1, 1])
    assert cfg.meta["case"] == 1
    assert classify_points(cfg.vertices) == [S] * 4
    assert verify_configuration(cfg, [1, 1, 1, 1]).verdict is Verdict.PASS
    out = strictify_repeated_2d(cfg)
    np.testing.assert_allclose(out.vertices, cfg.vertices, atol=1e-12)
    assert classify_points(out.vertices) == [S] * 4


def test_repeated_two_layers_case_two():
    cfg = construct_repeated_2d([2, 2, 1, 1])
    assert cfg.meta["case"] == 2
    assert len(cfg.vertices) == 4
    rep = verify_configuration(cfg, [2, 2, 1, 1])
    assert rep.origin_inside and rep.verdict is not Verdict.FAIL


@pytest.mark.parametrize("radii", [[2, 2, 2, 1, 1], [3, 3, 2, 2, 1, 1]])
def test_repeated_strictify_examples(radii):
    cfg = strictify_repeated_2d(construct_repeated_2d(radii))
    rep = verify_configuration(cfg, radii)
    assert rep.verdict is Verdict.PASS
    assert rep.max_residual < 1e-9
    assert len(cfg.vertices) == len(radii)


@pytest.mark.parametrize("radii", [[1, 1, 1, 1, 1], [1, 1, 1, 1, 1, 0.1], [3, 2, 2, 2, 2, 2]])
def test_repeated_multiplicity_five_rejected(radii):
    with pytest.raises(RepetitionTooHigh, match="probe"):
        construct_repeated_2d(radii)


def test_repeated_too_few():
    with pytest.raises(TooFewPoints):
        construct_repeated_2d([1, 1, 1])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_repeated_random(seed):
    rng = np.random.default_rng(seed)
    radii = suites.repeated_radii(rng)
    cfg = realize_2d(radii)
    _assert_realizes(cfg, radii)
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS


def test_realize_dispatch():
    assert realize_2d([3, 2, 1, 0.5]).meta["construction"] == "chord"
    assert realize_2d([1, 1, 2, 2]).meta["construction"] == "two-chord"
    non_strict = realize_2d([4, 3, 2, 1], strict=False)
    assert verify_configuration(non_strict, [4, 3, 2, 1]).verdict is Verdict.PASS_NON_STRICT


# ------------------------------------------------------------ probe


def test_probe_regular_pentagon():
    out = probe_conjecture_2d([1, 1, 1, 1, 1], budget=10_000, seed=0)
    assert out.found and not out.budget_exhausted
    assert out.iterations <= 10_000
    assert verify_configuration(out.configuration, [1] * 5).verdict is Verdict.PASS


def test_probe_distinct_is_quick():
    out = probe_conjecture_2d([4, 3, 2, 1], budget=10_000, seed=0)
    assert out.found and out.iterations <= 100


def test_probe_found_implies_verified():
    radii = [1, 1, 1, 1, 1, 0.1]
    out = probe_conjecture_2d(radii, budget=100_000, seed=0)
    # five unit points within a half circle and the small one opposite
    # form a valid configuration, so a hit is plausible
    if out.found:
        rep = verify_configuration(out.configuration, radii)
        assert rep.verdict is Verdict.PASS
        cls = [c.value for c in classify_points(out.configuration.vertices)]
        assert cls == oracles.classify(out.configuration.vertices, oracles.threshold(out.configuration.vertices))
    else:
        assert out.budget_exhausted and out.iterations == 100_000


def test_probe_exhausts_small_budget():
    # a tiny radius needs a near-half-circle gap among seven unit points; five steps are not enough
    out = probe_conjecture_2d([1, 1, 1, 1, 1, 1, 1, 1e-3], budget=5, seed=1)
    assert not out.found and out.budget_exhausted
    assert out.iterations == 5 and out.configuration is None


def test_probe_is_deterministic():
    a = probe_conjecture_2d([1, 1, 1, 1, 1], seed=3)
    b = probe_conjecture_2d([1, 1, 1, 1, 1], seed=3)
    assert a.iterations == b.iterations
    np.testing.assert_array_equal(a.configuration.vertices, b.configuration.vertices)


# ------------------------------------------------------------ radii set


def test_radii_set_layers():
    rs = RadiiSet((1.0, 3.0, 1.0, 2.0))
    assert rs.layers == ((3.0, 1), (2.0, 1), (1.0, 2))
    assert sum(m for _, m in rs.layers) == rs.n


@pytest.mark.parametrize("bad", [[1, 0, 2], [1, -1, 2], [1, float("nan"), 2], [1, float("inf"), 2]])
def test_radii_set_rejects_bad_values(bad):
    with pytest.raises(ValueError):
        RadiiSet(tuple(bad))
