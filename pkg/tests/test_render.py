import numpy as np
import pytest

from radial_convex import (
    DimensionMismatch,
    construct_distinct_2d,
    construct_layered_3d,
    convex_hull,
    render_off,
    render_svg,
)


def test_svg_layout():
    cfg = construct_distinct_2d([4, 3, 2, 1])
    svg = render_svg(cfg)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert 'width="1000" height="1000"' in svg
    # one circle per radius layer and one dot per vertex
    assert svg.count("<circle") == 4 + 4
    assert svg == render_svg(cfg)


def test_off_matches_hull():
    cfg = construct_layered_3d([2, 2, 2, 1, 1, 1])
    lines = render_off(cfg).splitlines()
    nv, nf, _ = map(int, lines[1].split())
    V = np.array([[float(x) for x in ln.split()] for ln in lines[2:2 + nv]])
    np.testing.assert_array_equal(V, cfg.vertices)
    faces = np.array([[int(x) for x in ln.split()] for ln in lines[2 + nv:]])
    assert np.all(faces[:, 0] == 3) and len(faces) == nf
    # outward orientation: each face normal points away from the centroid
    c = V.mean(axis=0)
    for _, a, b, d in faces:
        n = np.cross(V[b] - V[a], V[d] - V[a])
        assert np.dot(n, V[a] - c) > 0
    assert nf == len(convex_hull(V).facets)


def test_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        render_off(construct_distinct_2d([3, 2, 1]))
    with pytest.raises(DimensionMismatch):
        render_svg(construct_layered_3d([1, 1, 1, 1]))
