"""Data/codebook validation and the distance and error primitives shared by all algorithms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


def as_data_matrix(X) -> np.ndarray:
    """Return ``X`` as a 2-D float64 array, checking shape and finiteness."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"data must be a non-empty n x d matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("data contains NaN or Inf")
    return X


def as_codebook(C, d: int | None = None) -> np.ndarray:
    """Return ``C`` as a k x d float64 array; ``d`` enforces a matching dimension."""
    C = np.asarray(C, dtype=np.float64)
    if C.ndim == 1:
        C = C.reshape(-1, 1) if d in (None, 1) else C.reshape(1, -1)
    if C.ndim != 2 or C.shape[0] < 1:
        raise ValueError(f"codebook must be a non-empty k x d matrix, got shape {C.shape}")
    if d is not None and C.shape[1] != d:
        raise ValueError(f"dimension mismatch: codebook has d={C.shape[1]}, data has d={d}")
    if not np.all(np.isfinite(C)):
        raise ValueError("codebook contains NaN or Inf")
    return C


def _checked(X, C) -> tuple[np.ndarray, np.ndarray]:
    X = as_data_matrix(X)
    return X, as_codebook(C, X.shape[1])


def sq_distances(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """n x k matrix of squared Euclidean distances (direct differences, no norm expansion)."""
    return cdist(X, C, metric="sqeuclidean")


@dataclass(frozen=True)
class Assignment:
    """Nearest and second-nearest centroid per data point.

    ``second_idx`` and ``d2`` are ``None`` when the codebook has a single centroid.
    """

    nearest_idx: np.ndarray
    d1: np.ndarray
    second_idx: np.ndarray | None
    d2: np.ndarray | None

    @property
    def has_second(self) -> bool:
        return self.second_idx is not None


@dataclass(frozen=True)
class CentroidStats:
    error: np.ndarray
    utility: np.ndarray
    voronoi_count: np.ndarray


def assign(X, C) -> Assignment:
    """Assign every point to its nearest and second-nearest centroid.

    Ties go to the lowest centroid index.
    """
    X, C = _checked(X, C)
    D = sq_distances(X, C)
    rows = np.arange(X.shape[0])
    nearest = np.argmin(D, axis=1)
    d1 = D[rows, nearest]
    if C.shape[0] == 1:
        return Assignment(nearest, d1, None, None)
    D[rows, nearest] = np.inf
    second = np.argmin(D, axis=1)
    d2 = D[rows, second]
    return Assignment(nearest, d1, second, d2)


def nearest(X: np.ndarray, C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Labels and squared distances to the nearest centroid, without validation."""
    D = sq_distances(X, C)
    labels = np.argmin(D, axis=1)
    return labels, D[np.arange(X.shape[0]), labels]


def sse(X, C) -> float:
    """Summed squared error of quantizing ``X`` with codebook ``C``."""
    X, C = _checked(X, C)
    return float(nearest(X, C)[1].sum())


def centroid_stats(X, C) -> CentroidStats:
    """Per-centroid error and utility, aggregated over Voronoi sets in data-row order.

    The utility of a centroid is the SSE increase caused by removing it, which
    equals the summed (d2 - d1) over its Voronoi set.
    """
    X, C = _checked(X, C)
    k = C.shape[0]
    if k < 2:
        raise ValueError("centroid utility needs at least two centroids")
    a = assign(X, C)
    error = np.bincount(a.nearest_idx, weights=a.d1, minlength=k)
    utility = np.bincount(a.nearest_idx, weights=a.d2 - a.d1, minlength=k)
    count = np.bincount(a.nearest_idx, minlength=k)
    return CentroidStats(error, utility, count)


def mean_quantization_distance(X, C) -> float:
    X, C = _checked(X, C)
    return float(np.sqrt(sse(X, C) / X.shape[0]))


def centroid_distances(C: np.ndarray) -> np.ndarray:
    """k x k Euclidean distance matrix between centroids."""
    return cdist(C, C, metric="euclidean")


def mean_nn_distance(C) -> float:
    """Mean Euclidean distance from each centroid to its nearest other centroid."""
    C = as_codebook(C)
    k = C.shape[0]
    if k < 2:
        raise ValueError("nearest-neighbor distance needs at least two centroids")
    D = centroid_distances(C)
    np.fill_diagonal(D, np.inf)
    return float(D.min(axis=1).mean())
