"""Comparison metrics for paired k-means++ / breathing k-means experiments."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class DegenerateMetricWarning(RuntimeWarning):
    """A relative metric had a zero denominator and was reported as 0."""


def delta_sse(sse_kmpp: float, sse_bkm: float) -> float:
    """Relative SSE improvement ``1 - SSE(bkm) / SSE(km++)``."""
    if sse_kmpp == 0:
        warnings.warn("SSE(km++) is 0; delta SSE reported as 0", DegenerateMetricWarning, stacklevel=2)
        return 0.0
    return 1.0 - sse_bkm / sse_kmpp


def delta_cpu(cpu_kmpp: float, cpu_bkm: float) -> float:
    """Relative extra run time ``CPU(bkm) / CPU(km++) - 1``."""
    if cpu_kmpp <= 0:
        warnings.warn("CPU(km++) is 0; delta CPU reported as 0", DegenerateMetricWarning, stacklevel=2)
        return 0.0
    return cpu_bkm / cpu_kmpp - 1.0


def delta_good(sse: float, sse_good: float) -> float:
    """Relative deviation of a solution's SSE from a reference ("good") solution."""
    if sse_good <= 0:
        raise ValueError("reference SSE must be > 0")
    return sse / sse_good - 1.0


def count_modes(values: Sequence[float], bins: int = 30, min_count: int = 3) -> int:
    """Count local maxima of a histogram of ``values``.

    A mode is a bin holding at least ``min_count`` values that is strictly
    higher than the next bin to the left and not lower than the one to the
    right, after merging runs of equal height (plateaus count once).
    """
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=bins)
    padded = np.concatenate([[0], counts, [0]])
    modes = 0
    i = 1
    while i <= len(counts):
        j = i
        while j + 1 <= len(counts) and padded[j + 1] == padded[i]:
            j += 1
        if padded[i] >= min_count and padded[i] > padded[i - 1] and padded[i] > padded[j + 1]:
            modes += 1
        i = j + 1
    return modes


@dataclass(frozen=True)
class PairedRun:
    sse_kmpp: float
    sse_bkm: float
    cpu_kmpp: float
    cpu_bkm: float
    rng_seed: int
    breathing_cycles: int = 0

    @property
    def delta_sse(self) -> float:
        return delta_sse(self.sse_kmpp, self.sse_bkm)

    @property
    def delta_cpu(self) -> float:
        return delta_cpu(self.cpu_kmpp, self.cpu_bkm)


@dataclass(frozen=True)
class ExperimentReport:
    problem: str
    n: int
    d: int
    k: int
    runs: tuple[PairedRun, ...]
    mean_sse_kmpp: float
    rel_std_kmpp: float
    mean_sse_bkm: float
    rel_std_bkm: float
    mean_delta_sse: float
    mean_delta_cpu: float


def _mean(values) -> float:
    # fsum is correctly rounded, so the result does not depend on run order
    return math.fsum(values) / len(values)


def _mean_rel_std(values: Sequence[float]) -> tuple[float, float]:
    mean = _mean(values)
    # population standard deviation (divide by R)
    std = math.sqrt(_mean([(v - mean) ** 2 for v in values]))
    return mean, (std / mean if mean != 0 else 0.0)


def aggregate(runs: Sequence[PairedRun], problem: str = "", n: int = 0, d: int = 0, k: int = 0) -> ExperimentReport:
    """Means and relative (population) standard deviations over paired runs."""
    runs = tuple(runs)
    if not runs:
        raise ValueError("cannot aggregate an empty run list")
    mean_kmpp, rel_kmpp = _mean_rel_std([r.sse_kmpp for r in runs])
    mean_bkm, rel_bkm = _mean_rel_std([r.sse_bkm for r in runs])
    return ExperimentReport(
        problem=problem,
        n=n,
        d=d,
        k=k,
        runs=runs,
        mean_sse_kmpp=mean_kmpp,
        rel_std_kmpp=rel_kmpp,
        mean_sse_bkm=mean_bkm,
        rel_std_bkm=rel_bkm,
        mean_delta_sse=_mean([r.delta_sse for r in runs]),
        mean_delta_cpu=_mean([r.delta_cpu for r in runs]),
    )
