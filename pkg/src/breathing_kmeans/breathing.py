"""Breathing k-means: cyclic insertion near high-error centroids and removal of
low-utility centroids with neighborhood freezing, starting from a k-means++ solution.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    as_codebook,
    as_data_matrix,
    centroid_distances,
    centroid_stats,
    mean_nn_distance,
    mean_quantization_distance,
)
from .lloyd import LloydConfig, LloydResult, lloyd_fit
from .rng import derive_seed, make_rng
from .seeding import SeedConfig, seed_and_fit

# relative jitter used when the codebook already quantizes the data exactly
_ZERO_ERROR_JITTER = np.sqrt(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class BreathingConfig:
    m0: int = 5
    theta: float = 1.1
    tol: float = 1e-4
    epsilon: float = 0.01
    lloyd: LloydConfig = field(default_factory=LloydConfig)
    seed: SeedConfig = field(default_factory=SeedConfig)
    rng_seed: int = 0

    def __post_init__(self):
        if self.m0 < 0:
            raise ValueError("m0 must be >= 0")
        if self.theta <= 0:
            raise ValueError("theta must be > 0")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")


@dataclass(frozen=True)
class FitResult:
    codebook: np.ndarray
    sse: float
    seeding_sse: float
    breathing_cycles: int
    lloyd_iterations_total: int
    wall_time: float
    rng_seed: int
    sse_history: tuple[float, ...] = ()


@dataclass(frozen=True)
class DeletionPlan:
    """Outcome of the breathe-out selection, kept for inspection and tests."""

    deleted: tuple[int, ...]
    frozen: frozenset[int]
    kappa: float
    guard_fired: bool


def breathe_in(X, C, m: int, epsilon: float = 0.01, rng=None) -> np.ndarray:
    """Append ``m`` jittered copies of the ``m`` highest-error centroids.

    Each copy gets its own offset ``epsilon * mean_quantization_distance * u``
    with ``u`` uniform on ``[-0.5, 0.5]^d``.
    """
    X = as_data_matrix(X)
    C = as_codebook(C, X.shape[1])
    k, d = C.shape
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > k:
        raise ValueError(f"cannot copy m={m} centroids from a codebook of size {k}")
    rng = make_rng(rng)
    error = centroid_stats(X, C).error
    top = np.argsort(-error, kind="stable")[:m]
    scale = epsilon * mean_quantization_distance(X, C)
    if scale == 0.0:
        scale = _ZERO_ERROR_JITTER * max(1.0, float(np.abs(C).max()))
    offsets = scale * (rng.random((m, d)) - 0.5)
    return np.concatenate([C, C[top] + offsets])


def plan_deletions(X, C, m: int, theta: float = 1.1) -> DeletionPlan:
    """Choose ``m`` centroids to delete in ascending utility order.

    Every deleted centroid freezes the other centroids closer than
    ``kappa = theta * mean_nn_distance(C)`` (nearest first), but only while
    ``|frozen| + m < k`` so that enough deletable centroids remain.
    """
    X = as_data_matrix(X)
    C = as_codebook(C, X.shape[1])
    k = C.shape[0]
    if m < 1 or m >= k:
        raise ValueError(f"need 1 <= m < k, got m={m}, k={k}")
    utility = centroid_stats(X, C).utility
    dist = centroid_distances(C)
    kappa = theta * mean_nn_distance(C)

    deleted: list[int] = []
    frozen: set[int] = set()
    guard_fired = False
    for c in np.argsort(utility, kind="stable"):
        c = int(c)
        if c in frozen:
            continue
        deleted.append(c)
        near = np.flatnonzero(dist[c] < kappa)
        for x in near[np.argsort(dist[c, near], kind="stable")]:
            x = int(x)
            if x == c or x in frozen or x in deleted:
                continue
            if len(frozen) + m < k:
                frozen.add(x)
            else:
                guard_fired = True
        if len(deleted) == m:
            break
    return DeletionPlan(tuple(deleted), frozenset(frozen), kappa, guard_fired)


def breathe_out(X, C, m: int, theta: float = 1.1) -> np.ndarray:
    """Remove ``m`` low-utility centroids, keeping the survivors in their original order."""
    C = as_codebook(C)
    plan = plan_deletions(X, C, m, theta)
    keep = np.ones(C.shape[0], dtype=bool)
    keep[list(plan.deleted)] = False
    return C[keep]


def bkm_fit(X, k: int, cfg: BreathingConfig | None = None, seeding: LloydResult | None = None) -> FitResult:
    """Fit ``k`` centroids with breathing k-means.

    ``seeding`` lets a caller hand over an existing k-means++ result (paired
    benchmarks); otherwise one is computed from ``cfg.seed``. The breathing
    depth starts at ``m0`` (capped so that ``k + m <= n`` and ``m <= k``) and
    drops by one after each cycle that fails to improve the best SSE by the
    relative margin ``cfg.tol``.
    """
    cfg = cfg or BreathingConfig()
    X = as_data_matrix(X)
    n = X.shape[0]
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    start = time.perf_counter()
    if seeding is None:
        seeding = seed_and_fit(X, k, cfg.seed, cfg.lloyd)
    elif seeding.codebook.shape != (k, X.shape[1]):
        raise ValueError("seeding codebook does not match k and the data dimension")

    C = seeding.codebook
    best_sse, best_C = seeding.sse, C.copy()
    history = [seeding.sse]
    iterations = 0
    cycles = 0
    m = min(cfg.m0, k, n - k) if k > 1 else 0
    rng = np.random.default_rng(derive_seed(cfg.rng_seed, "breathe"))
    while m > 0:
        cycles += 1
        grown = lloyd_fit(X, breathe_in(X, C, m, cfg.epsilon, rng), cfg.lloyd)
        shrunk = lloyd_fit(X, breathe_out(X, grown.codebook, m, cfg.theta), cfg.lloyd)
        iterations += grown.iterations + shrunk.iterations
        C = shrunk.codebook
        history.append(shrunk.sse)
        if shrunk.sse < best_sse * (1.0 - cfg.tol):
            best_sse, best_C = shrunk.sse, C.copy()
        else:
            m -= 1
    return FitResult(
        codebook=best_C,
        sse=best_sse,
        seeding_sse=seeding.sse,
        breathing_cycles=cycles,
        lloyd_iterations_total=seeding.iterations + iterations,
        wall_time=time.perf_counter() - start,
        rng_seed=cfg.rng_seed,
        sse_history=tuple(history),
    )
