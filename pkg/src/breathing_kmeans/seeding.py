"""Initial codebooks: uniform random rows, k-means++ D^2 sampling, best-of-n_init fitting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .geometry import as_codebook, as_data_matrix, sq_distances
from .lloyd import LloydConfig, LloydResult, lloyd_fit
from .rng import derive_seed, make_rng


@dataclass(frozen=True)
class SeedConfig:
    """How to build the starting codebook.

    ``method`` is ``"kmeanspp"``, ``"random"`` or ``"explicit"``; the explicit
    case uses ``init`` as the codebook and always runs once. ``n_local_trials``
    only affects k-means++: ``None`` is the greedy ``2 + ln k`` candidates per
    step, ``1`` is plain D^2 sampling.
    """

    method: Literal["kmeanspp", "random", "explicit"] = "kmeanspp"
    n_init: int = 10
    rng_seed: int = 0
    init: np.ndarray | None = None
    n_local_trials: int | None = None

    def __post_init__(self):
        if self.n_init < 1:
            raise ValueError("n_init must be >= 1")
        if self.method not in ("kmeanspp", "random", "explicit"):
            raise ValueError(f"unknown seeding method {self.method!r}")
        if self.method == "explicit" and self.init is None:
            raise ValueError("explicit seeding requires an init codebook")


def _check_k(n: int, k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of data points n={n}")


def random_seed(X, k: int, rng=None) -> np.ndarray:
    """Pick ``k`` distinct data rows uniformly at random."""
    X = as_data_matrix(X)
    _check_k(X.shape[0], k)
    idx = make_rng(rng).choice(X.shape[0], size=k, replace=False)
    return X[idx].copy()


def default_local_trials(k: int) -> int:
    return 2 + int(np.log(k))


def kmeanspp_indices(
    X,
    k: int,
    rng=None,
    first_index: int | None = None,
    n_local_trials: int | None = 1,
) -> np.ndarray:
    """Row indices chosen by k-means++ D^2 sampling.

    The first row is uniform (or ``first_index``); each further row is drawn with
    probability proportional to its squared distance to the nearest row chosen
    so far. With ``n_local_trials > 1`` that many candidates are drawn per step
    and the one leaving the smallest total squared distance is kept (greedy
    variant, ``None`` means ``2 + ln k``). Once every remaining squared distance
    is zero the draw falls back to a uniform choice among rows not yet taken.
    """
    X = as_data_matrix(X)
    n = X.shape[0]
    _check_k(n, k)
    trials = default_local_trials(k) if n_local_trials is None else int(n_local_trials)
    if trials < 1:
        raise ValueError("n_local_trials must be >= 1")
    rng = make_rng(rng)
    chosen = np.empty(k, dtype=np.intp)
    taken = np.zeros(n, dtype=bool)
    first = int(rng.integers(n)) if first_index is None else int(first_index)
    chosen[0] = first
    taken[first] = True
    closest = sq_distances(X, X[first : first + 1])[:, 0]
    for i in range(1, k):
        cum = np.cumsum(closest)
        total = cum[-1]
        if total <= 0.0:
            idx = int(rng.choice(np.flatnonzero(~taken)))
            cand_dist = sq_distances(X, X[idx : idx + 1])[:, 0]
        else:
            cands = np.searchsorted(cum, rng.random(trials) * total, side="right")
            # a draw can round up to total; keep it on a row with positive weight
            last_positive = int(np.flatnonzero(closest > 0.0)[-1])
            cands = np.where((cands >= n) | (closest[np.minimum(cands, n - 1)] <= 0.0), last_positive, cands)
            dists = sq_distances(X, X[cands])
            if trials == 1:
                best = 0
            else:
                best = int(np.argmin(np.minimum(dists, closest[:, None]).sum(axis=0)))
            idx = int(cands[best])
            cand_dist = dists[:, best]
        chosen[i] = idx
        taken[idx] = True
        np.minimum(closest, cand_dist, out=closest)
    return chosen


def kmeanspp_seed(X, k: int, rng=None, first_index: int | None = None, n_local_trials: int | None = 1) -> np.ndarray:
    X = as_data_matrix(X)
    return X[kmeanspp_indices(X, k, rng, first_index, n_local_trials)].copy()


def seed_and_fit(X, k: int, cfg: SeedConfig | None = None, lloyd_cfg: LloydConfig | None = None) -> LloydResult:
    """Run seeding + Lloyd ``n_init`` times and keep the lowest-SSE result.

    Run ``r`` draws from its own stream seeded with ``derive_seed(cfg.rng_seed, "init", r)``.
    Equal SSEs go to the lowest run index.
    """
    cfg = cfg or SeedConfig()
    X = as_data_matrix(X)
    _check_k(X.shape[0], k)
    if cfg.method == "explicit":
        C0 = as_codebook(cfg.init, X.shape[1])
        if C0.shape[0] != k:
            raise ValueError(f"init codebook has {C0.shape[0]} rows, expected k={k}")
        return lloyd_fit(X, C0, lloyd_cfg)

    best = None
    for run in range(cfg.n_init):
        rng = np.random.default_rng(derive_seed(cfg.rng_seed, "init", run))
        if cfg.method == "kmeanspp":
            C0 = kmeanspp_seed(X, k, rng, n_local_trials=cfg.n_local_trials)
        else:
            C0 = random_seed(X, k, rng)
        result = lloyd_fit(X, C0, lloyd_cfg)
        if best is None or result.sse < best.sse:
            best = result
    return best
