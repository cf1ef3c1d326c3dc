import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from radial_convex import (
    DimensionMismatch,
    LaguerreCellAssigner,
    NonUnitInput,
    RadialConvexEmbedding,
    SphericalCircleSet,
    Verdict,
    fibonacci_sphere,
    sample_cells,
)


def test_embedding_params_and_clone():
    est = RadialConvexEmbedding(dim=3, strict=False, rel_eps=1e-8)
    assert est.get_params() == {"dim": 3, "strict": False, "mode": "Robust", "rel_eps": 1e-8}
    c = clone(est)
    assert c.get_params() == est.get_params() and not hasattr(c, "embedding_")


@pytest.mark.parametrize("dim", [2, 3])
def test_embedding_fit_transform(dim):
    radii = np.array([1.0, 4.0, 2.0, 2.0, 3.0])
    est = RadialConvexEmbedding(dim=dim)
    Y = est.fit_transform(radii)
    assert Y.shape == (5, dim)
    np.testing.assert_allclose(np.linalg.norm(Y, axis=1), radii, rtol=1e-9)
    assert est.report_.verdict is Verdict.PASS
    np.testing.assert_array_equal(est.transform(radii[:, None]), Y)


def test_embedding_is_transductive():
    est = RadialConvexEmbedding().fit([3, 2, 1, 0.5])
    with pytest.raises(ValueError):
        est.transform([3, 2, 1, 0.6])
    with pytest.raises(NotFittedError):
        RadialConvexEmbedding().transform([1, 2, 3])


def test_embedding_validation():
    with pytest.raises(DimensionMismatch):
        RadialConvexEmbedding(dim=4).fit([1, 2, 3, 4])
    with pytest.raises(DimensionMismatch):
        RadialConvexEmbedding().fit(np.ones((3, 2)))
    with pytest.raises(ValueError):
        RadialConvexEmbedding().fit([1, np.nan, 2])


def test_assigner_predict_matches_sampling():
    w = np.array([0.2, 0.9, 0.4, 1.1, 0.6])
    est = LaguerreCellAssigner().fit(w)
    assert est.report_.all_nonempty
    np.testing.assert_array_equal(est.classes_, np.arange(5))
    X = fibonacci_sphere(5000)
    P = est.transform(X)
    assert P.shape == (5000, 5)
    pred = est.predict(X)
    counts = np.bincount(pred, minlength=5)
    ref = sample_cells(SphericalCircleSet(est.centers_, w), grid=5000)
    np.testing.assert_array_equal(counts, ref.sample_counts)
    # every cell is non-empty, so every class is predicted somewhere
    assert np.all(counts > 0)


def test_assigner_errors():
    with pytest.raises(NotFittedError):
        LaguerreCellAssigner().predict([[0, 0, 1]])
    est = LaguerreCellAssigner().fit([0.1, 0.2, 0.3, 0.4])
    with pytest.raises(NonUnitInput):
        est.predict([[0, 0, 2]])
    with pytest.raises(DimensionMismatch):
        est.predict([[0, 1]])
