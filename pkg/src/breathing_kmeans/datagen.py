"""Seedable generators for the synthetic benchmark problems.

Every generator is a pure function of its parameters and seed. Points are
dealt to clusters round-robin (point ``i`` belongs to cluster ``i % g``), which
fixes the per-cluster counts for any ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.spatial.distance import pdist

from .rng import make_rng

Family = Literal["gaussian_grid", "uniform_square", "norm25_style", "gaussian_mixture"]
FAMILIES: tuple[str, ...] = ("gaussian_grid", "uniform_square", "norm25_style", "gaussian_mixture")


def _round_robin_labels(n: int, g: int) -> np.ndarray:
    return np.arange(n) % g


def gen_gaussian_mixture(centers, n: int, sigma, rng=None) -> np.ndarray:
    """Sample ``n`` points from axis-aligned Gaussians around ``centers``.

    ``sigma`` broadcasts against ``(g, d)``: a scalar, a per-axis ``(d,)``
    vector, a per-cluster ``(g, 1)`` column, or the full table.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    g, d = centers.shape
    if n < 1:
        raise ValueError("n must be >= 1")
    sig = np.asarray(sigma, dtype=np.float64)
    sig = np.broadcast_to(sig, (g, d))
    if np.any(sig < 0):
        raise ValueError("sigma must be >= 0")
    labels = _round_robin_labels(n, g)
    noise = make_rng(rng).standard_normal((n, d))
    return centers[labels] + noise * sig[labels]


def grid_centers(rows: int, cols: int, spacing: float = 1.0) -> np.ndarray:
    """Row-major centers of a ``rows x cols`` grid with the origin at the first node."""
    ys, xs = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    return spacing * np.column_stack([xs.ravel(), ys.ravel()]).astype(np.float64)


def gen_gaussian_grid(
    rows: int = 5,
    cols: int = 5,
    n: int = 10000,
    sigma_x: float = 0.08,
    sigma_y: float = 0.16,
    spacing: float = 1.0,
    rng=None,
) -> np.ndarray:
    """Gaussian clusters on a regular 2-D grid, elongated along y by default (gmd5x5-like)."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    if n < rows * cols:
        raise ValueError("n must be at least rows * cols")
    if sigma_x < 0 or sigma_y < 0 or spacing <= 0:
        raise ValueError("sigmas must be >= 0 and spacing > 0")
    return gen_gaussian_mixture(grid_centers(rows, cols, spacing), n, [sigma_x, sigma_y], rng)


def gen_uniform_square(n: int = 1000, rng=None) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return make_rng(rng).random((n, 2))


def gen_norm25_style(
    n: int = 10000,
    d: int = 15,
    g: int = 25,
    side: float = 500.0,
    sigma: float = 1.0,
    rng=None,
    min_separation: float = 20.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Norm25-like data: ``g`` centers uniform in ``[0, side]^d`` plus Gaussian noise.

    Centers are redrawn until every pair is more than ``min_separation * sigma``
    apart. Returns ``(X, centers)``.
    """
    if n < g or d < 1 or g < 1 or side <= 0 or sigma < 0:
        raise ValueError("invalid norm25 parameters")
    rng = make_rng(rng)
    for _ in range(1000):
        centers = rng.random((g, d)) * side
        if g == 1 or pdist(centers).min() > min_separation * sigma:
            break
    else:
        raise RuntimeError("could not place well-separated centers; increase side")
    return gen_gaussian_mixture(centers, n, sigma, rng), centers


def separated_centers(g: int, d: int = 2, side: float = 1.0, min_dist: float = 0.2, rng=None) -> np.ndarray:
    """Draw ``g`` centers uniformly in ``[0, side]^d`` with pairwise distance >= ``min_dist``.

    Sequential rejection sampling; a layout that gets stuck is discarded and
    restarted. Raises if the box is too crowded.
    """
    rng = make_rng(rng)
    for _ in range(200):
        centers = np.empty((0, d))
        for _ in range(200 * g):
            c = rng.random(d) * side
            if len(centers) == 0 or np.min(np.linalg.norm(centers - c, axis=1)) >= min_dist:
                centers = np.vstack([centers, c])
                if len(centers) == g:
                    return centers
    raise RuntimeError(f"could not place {g} centers {min_dist} apart in a box of side {side}")


def gen_simple_mixture(g: int = 14, n: int = 4000, sigma: float = 0.025, rng=None) -> tuple[np.ndarray, np.ndarray]:
    """Well-separated circular Gaussians in the unit square (easy case for k-means++).

    Centers are at least ``10 * sigma`` apart. Returns ``(X, centers)``.
    """
    rng = make_rng(rng)
    centers = separated_centers(g, 2, 1.0, 10 * sigma, rng)
    return gen_gaussian_mixture(centers, n, sigma, rng), centers


@dataclass(frozen=True)
class GenSpec:
    """A named generator family with its parameters and seed."""

    family: Family
    n: int
    params: dict = field(default_factory=dict)
    rng_seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def generate(self) -> np.ndarray:
        return self.generate_with_centers()[0]

    def generate_with_centers(self) -> tuple[np.ndarray, np.ndarray | None]:
        """Data plus the true cluster centers (None for the uniform family)."""
        rng = np.random.default_rng(self.rng_seed)
        p = dict(self.params)
        if self.family == "uniform_square":
            return gen_uniform_square(self.n, rng), None
        if self.family == "gaussian_grid":
            X = gen_gaussian_grid(n=self.n, rng=rng, **p)
            return X, grid_centers(p.get("rows", 5), p.get("cols", 5), p.get("spacing", 1.0))
        if self.family == "norm25_style":
            return gen_norm25_style(n=self.n, rng=rng, **p)
        if "centers" in p:
            centers = np.asarray(p["centers"], dtype=float)
            return gen_gaussian_mixture(centers, self.n, p.get("sigma", 1.0), rng), centers
        return gen_simple_mixture(n=self.n, rng=rng, **p)
