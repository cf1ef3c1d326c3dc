"""Random instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import math

import numpy as np


def _log_uniform(rng, lo, hi, size):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


def distinct_radii(rng, n_lo=4, n_hi=64, lo=1e-3, hi=1e3, min_ratio=1 + 1e-6):
    """Strictly distinct radii whose sorted neighbours differ by more than ``min_ratio``."""
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        r = _log_uniform(rng, lo, hi, n)
        s = np.sort(r)
        if np.all(s[1:] / s[:-1] > min_ratio):
            return r


def repeated_radii(rng, lo=0.1, hi=10.0, max_layers=16, max_mult=4):
    """Shuffled radii with up to ``max_layers`` distinct values, each repeated 1..max_mult times."""
    while True:
        k = int(rng.integers(1, max_layers + 1))
        vals = _log_uniform(rng, lo, hi, k)
        mult = rng.integers(1, max_mult + 1, k)
        r = np.repeat(vals, mult)
        if len(r) >= 4:
            return rng.permutation(r)


def layered_radii(rng, n_lo=4, n_hi=256, lo=1e-2, hi=1e2):
    """``n`` radii drawn with replacement from ``k`` log-uniform values, ``k`` uniform in ``1..n``."""
    n = int(rng.integers(n_lo, n_hi + 1))
    k = int(rng.integers(1, n + 1))
    vals = _log_uniform(rng, lo, hi, k)
    return vals[rng.integers(0, k, n)]


def multi_layer_radii(rng, **kw):
    while True:
        r = layered_radii(rng, **kw)
        if len(np.unique(r)) >= 2:
            return r


def weights(rng, n_lo=4, n_hi=32, w_max=1.4):
    n = int(rng.integers(n_lo, n_hi + 1))
    return rng.uniform(0.0, w_max, n)
