import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import suites
from radial_convex import (
    DegenerateGrid,
    Mode,
    PointClass,
    RadiiNotDistinct,
    TooFewPoints,
    Verdict,
    classify_points,
    construct_distinct_3d,
    construct_layered_3d,
    convex_hull,
    realize_3d,
    strictify_3d,
    verify_configuration,
)

S, B, I = PointClass.STRICT_VERTEX, PointClass.BOUNDARY, PointClass.INTERIOR


def _assert_realizes(cfg, radii):
    got = np.linalg.norm(cfg.in_input_order(), axis=1)
    np.testing.assert_allclose(got, np.asarray(radii, dtype=float), rtol=1e-9)


def _assert_latitudes(cfg):
    layers = cfg.meta["layers"]
    for lay in layers:
        r = lay["radius"]
        assert abs(lay["z"] ** 2 + lay["rho"] ** 2 - r * r) <= 1e-9 * r * r
    zs = [lay["z"] for lay in layers[:-1]]
    assert all(a > b for a, b in zip(zs, zs[1:]))


# ------------------------------------------------------------ distinct


def test_distinct_tetrahedron():
    cfg = construct_distinct_3d([4, 3, 2, 1])
    _assert_realizes(cfg, [4, 3, 2, 1])
    h = convex_hull(cfg.vertices)
    assert len(h.vertex_indices) == 4 and len(h.facets) == 4
    assert verify_configuration(cfg, [4, 3, 2, 1]).verdict is Verdict.PASS


def test_distinct_poles_and_equator():
    cfg = construct_distinct_3d([5, 4, 3, 2, 1])
    np.testing.assert_allclose(cfg.vertices[0], [0, 0, 5], atol=1e-12)
    np.testing.assert_allclose(cfg.vertices[1], [0, 0, -4], atol=1e-12)
    np.testing.assert_allclose(cfg.vertices[2:, 2], 0.0, atol=1e-12)
    assert classify_points(cfg.vertices) == [S] * 5
    assert verify_configuration(cfg, [5, 4, 3, 2, 1]).verdict is Verdict.PASS


@pytest.mark.parametrize("radii, err", [([1, 1, 2, 3], RadiiNotDistinct), ([3, 2, 1], TooFewPoints)])
def test_distinct_preconditions(radii, err):
    with pytest.raises(err):
        construct_distinct_3d(radii)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_distinct_random(seed):
    rng = np.random.default_rng(seed)
    radii = suites.distinct_radii(rng, n_hi=60, lo=1e-2, hi=1e2)
    cfg = construct_distinct_3d(radii)
    _assert_realizes(cfg, radii)
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS


# ------------------------------------------------------------ layered


def test_layered_two_by_three():
    cfg = construct_layered_3d([2, 2, 2, 1, 1, 1])
    meta = cfg.meta
    assert meta["reference_layer"] == 0
    assert meta["beta"] == pytest.approx(2 * np.pi / 3)
    bottom = meta["layers"][-1]
    assert bottom["z"] == pytest.approx(-0.95) and len(bottom["azimuths"]) == 3
    assert classify_points(cfg.vertices) == [S] * 6
    rep = verify_configuration(cfg, [2, 2, 2, 1, 1, 1])
    assert rep.verdict is Verdict.PASS and rep.origin_inside
    _assert_latitudes(cfg)


def test_layered_robust_six():
    radii = [3, 2, 2, 2, 2, 1]
    cfg = construct_layered_3d(radii, Mode.ROBUST)
    assert len(cfg.vertices) == 6
    assert classify_points(cfg.vertices) == [S] * 6
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS
    _assert_realizes(cfg, radii)


def test_paper_faithful_shared_generator():
    radii = [4, 4, 4, 3, 3, 3, 2, 2, 2, 1]
    cfg = construct_layered_3d(radii, "PaperFaithful")
    cls = classify_points(cfg.vertices)
    assert I not in cls
    assert cls.count(B) == 3
    expected = oracles.classify(cfg.vertices, oracles.threshold(cfg.vertices))
    assert [c.value for c in cls] == expected
    # the boundary points are the middle layer, on the generator through the layers above and below
    mids = [i for i, c in enumerate(cls) if c is B]
    assert {round(float(np.linalg.norm(cfg.vertices[i])), 12) for i in mids} == {3.0}
    rep = verify_configuration(cfg, radii)
    assert rep.verdict is Verdict.PASS_NON_STRICT and rep.origin_inside
    out = strictify_3d(cfg)
    assert classify_points(out.vertices) == [S] * 10
    assert verify_configuration(out, radii).verdict is Verdict.PASS
    _assert_realizes(out, radii)


def test_paper_faithful_three_layers_small_example():
    radii = [3, 3, 3, 2, 2, 2, 1]
    cfg = construct_layered_3d(radii, "PaperFaithful")
    rep = verify_configuration(cfg, radii)
    assert rep.verdict in (Verdict.PASS, Verdict.PASS_NON_STRICT)
    assert I not in rep.classifications
    assert verify_configuration(strictify_3d(cfg), radii).verdict is Verdict.PASS


def test_paper_faithful_coplanar_grid_reported():
    with pytest.raises(DegenerateGrid):
        construct_layered_3d([2, 2, 1, 1], "PaperFaithful")
    assert verify_configuration(construct_layered_3d([2, 2, 1, 1]), [2, 2, 1, 1]).verdict is Verdict.PASS


def test_strictify_robust_is_identity():
    cfg = construct_layered_3d([3, 2, 2, 2, 2, 1])
    out = strictify_3d(cfg)
    np.testing.assert_allclose(out.vertices, cfg.vertices, atol=1e-12)


def test_single_layer():
    cfg = construct_layered_3d([1, 1, 1, 1])
    assert classify_points(cfg.vertices) == [S] * 4
    assert verify_configuration(cfg, [1, 1, 1, 1]).verdict is Verdict.PASS
    out = strictify_3d(construct_layered_3d([1, 1, 1, 1], "PaperFaithful"))
    assert verify_configuration(out, [1, 1, 1, 1]).verdict is Verdict.PASS


def test_unknown_mode():
    with pytest.raises(ValueError):
        construct_layered_3d([1, 1, 1, 1], "Bogus")


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        construct_layered_3d([1, 1, 1])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_realize_3d_random(seed):
    rng = np.random.default_rng(seed)
    radii = suites.layered_radii(rng, n_hi=80)
    cfg = realize_3d(radii)
    _assert_realizes(cfg, radii)
    assert verify_configuration(cfg, radii).verdict is Verdict.PASS
    if cfg.meta.get("construction") == "cone-grid" and "layers" in cfg.meta:
        _assert_latitudes(cfg)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_paper_faithful_random_never_interior(seed):
    rng = np.random.default_rng(seed)
    radii = suites.multi_layer_radii(rng, n_hi=60)
    try:
        cfg = construct_layered_3d(radii, "PaperFaithful")
    except DegenerateGrid:
        return
    _assert_latitudes(cfg)
    rep = verify_configuration(cfg, radii)
    assert rep.verdict in (Verdict.PASS, Verdict.PASS_NON_STRICT)
    if rep.verdict is Verdict.PASS_NON_STRICT:
        assert verify_configuration(strictify_3d(cfg), radii).verdict is Verdict.PASS
