"""Lloyd's algorithm (batch k-means) with deterministic empty-cluster repair."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import as_codebook, as_data_matrix, nearest

_FLOAT_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class LloydConfig:
    tol: float = 1e-4
    max_iter: int = 300

    def __post_init__(self):
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class LloydResult:
    codebook: np.ndarray
    sse: float
    iterations: int
    converged: bool
    repairs: int = 0


def _update(X: np.ndarray, labels: np.ndarray, d1: np.ndarray, C: np.ndarray) -> tuple[np.ndarray, int]:
    """Move every centroid to the mean of its Voronoi set.

    An empty Voronoi set gets the point with the largest current error
    (lowest index among maxima); that point then counts as quantized exactly.
    """
    k, d = C.shape
    counts = np.bincount(labels, minlength=k)
    repairs = 0
    if np.any(counts == 0):
        labels = labels.copy()
        d1 = d1.copy()
        for j in np.flatnonzero(counts == 0):
            p = int(np.argmax(d1))
            counts[labels[p]] -= 1
            labels[p] = j
            counts[j] += 1
            d1[p] = 0.0
            repairs += 1
    sums = np.empty((k, d))
    for col in range(d):
        sums[:, col] = np.bincount(labels, weights=X[:, col], minlength=k)
    new_C = C.copy()
    filled = counts > 0
    new_C[filled] = sums[filled] / counts[filled, None]
    return new_C, repairs


def lloyd_fit(X, C0, cfg: LloydConfig | None = None) -> LloydResult:
    """Run Lloyd iterations from ``C0`` until the relative centroid shift drops below ``cfg.tol``.

    The shift is ``||C_t - C_{t-1}||_F / max(||C_{t-1}||_F, eps)``. A zero shift
    always counts as converged, so ``tol=0`` stops at an exact fixed point.
    """
    cfg = cfg or LloydConfig()
    X = as_data_matrix(X)
    C = as_codebook(C0, X.shape[1]).copy()
    if C.shape[0] > X.shape[0]:
        raise ValueError(f"k={C.shape[0]} centroids exceed n={X.shape[0]} data points")

    converged = False
    repairs = 0
    it = 0
    for it in range(1, cfg.max_iter + 1):
        labels, d1 = nearest(X, C)
        new_C, r = _update(X, labels, d1, C)
        repairs += r
        shift = np.linalg.norm(new_C - C) / max(np.linalg.norm(C), _FLOAT_EPS)
        C = new_C
        if shift == 0.0 or shift < cfg.tol:
            converged = True
            break
    final_sse = float(nearest(X, C)[1].sum())
    return LloydResult(C, final_sse, it, converged, repairs)
