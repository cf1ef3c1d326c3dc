"""Scikit-learn style wrappers around the constructions.

:class:`RadialConvexEmbedding` is transductive, like manifold embeddings:
it places the radii it was fitted on and ``transform`` only accepts those
same radii. :class:`LaguerreCellAssigner` fits generators from weights
and then scores or assigns arbitrary unit directions.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DimensionMismatch, NonUnitInput
from .geom import Tolerance
from .planar import realize_2d
from .slvd import check_nonemptiness, place_generators
from .spatial import realize_3d
from .validation import check_radii, check_weights
from .verify import verify_configuration


def _column(X, name: str) -> np.ndarray:
    """Accept a 1-D array or a single-column 2-D array."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D or a single column, got shape {arr.shape}")
    return check_array(arr[:, None], ensure_min_samples=1)[:, 0]


def _unit_rows(X, atol: float = 1e-9) -> np.ndarray:
    arr = check_array(X, ensure_min_samples=1)
    if arr.shape[1] != 3:
        raise DimensionMismatch(f"expected unit 3-vectors, got {arr.shape[1]} columns")
    norms = np.linalg.norm(arr, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > atol)
    if len(bad):
        raise NonUnitInput(f"row {bad[0]} has norm {norms[bad[0]]!r}")
    return arr


class RadialConvexEmbedding(TransformerMixin, BaseEstimator):
    """Place each radius as a vertex of a convex configuration around the origin.

    Parameters
    ----------
    dim : 2 or 3
    strict : bool
        Planar only: strictify the construction.
    mode : {"Robust", "PaperFaithful"}
        Spatial only.
    rel_eps : float
        Relative tolerance of the verification.
    """

    def __init__(self, dim: int = 2, strict: bool = True, mode: str = "Robust", rel_eps: float = 1e-9):
        self.dim = dim
        self.strict = strict
        self.mode = mode
        self.rel_eps = rel_eps

    def fit(self, X, y=None):
        radii = _column(X, "X")
        if self.dim not in (2, 3):
            raise DimensionMismatch(f"dim must be 2 or 3, got {self.dim!r}")
        tol = Tolerance(self.rel_eps)
        rs = check_radii(radii)
        if self.dim == 2:
            config = realize_2d(rs, strict=self.strict, tol=tol)
        else:
            config = realize_3d(rs, self.mode, tol)
        self.radii_ = radii
        self.configuration_ = config
        self.report_ = verify_configuration(config, rs, tol)
        self.embedding_ = config.in_input_order()
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "embedding_")
        radii = _column(X, "X")
        if radii.shape != self.radii_.shape or not np.array_equal(radii, self.radii_):
            raise ValueError("the embedding is transductive: transform only accepts the fitted radii")
        return self.embedding_.copy()

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X).embedding_.copy()


class LaguerreCellAssigner(ClassifierMixin, BaseEstimator):
    """Generators with non-empty spherical Laguerre cells, then cell assignment.

    ``fit`` takes the weights (angular radii in ``[0, pi/2)``).
    ``transform`` returns the proximity of each unit direction to every
    circle and ``predict`` the index of the closest one.
    """

    def __init__(self, mode: str = "Robust", rel_eps: float = 1e-9):
        self.mode = mode
        self.rel_eps = rel_eps

    def fit(self, X, y=None):
        weights = check_weights(_column(X, "X"))
        circles, duals = place_generators(weights, self.mode, Tolerance(self.rel_eps))
        self.weights_ = weights
        self.centers_ = np.array(circles.centers)
        self.duals_ = np.array(duals.duals)
        self.classes_ = np.arange(len(weights))
        self.report_ = check_nonemptiness(circles, Tolerance(self.rel_eps))
        self.n_features_in_ = 1
        return self

    def _check(self):
        if not hasattr(self, "duals_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def transform(self, X):
        self._check()
        return _unit_rows(X) @ self.duals_.T

    def predict(self, X):
        return np.argmax(self.transform(X), axis=1)
