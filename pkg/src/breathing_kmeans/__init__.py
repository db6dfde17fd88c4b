"""Breathing k-means: k-means++ seeding improved by cyclic centroid insertion and deletion."""

from .breathing import BreathingConfig, FitResult, bkm_fit, breathe_in, breathe_out, plan_deletions
from .datagen import GenSpec, gen_gaussian_grid, gen_norm25_style, gen_simple_mixture, gen_uniform_square
from .geometry import (
    Assignment,
    CentroidStats,
    assign,
    centroid_stats,
    mean_nn_distance,
    mean_quantization_distance,
    sse,
)
from .lloyd import LloydConfig, LloydResult, lloyd_fit
from .metrics import ExperimentReport, PairedRun, aggregate, delta_cpu, delta_good, delta_sse
from .seeding import SeedConfig, kmeanspp_seed, random_seed, seed_and_fit

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BreathingConfig",
    "CentroidStats",
    "ExperimentReport",
    "FitResult",
    "GenSpec",
    "LloydConfig",
    "LloydResult",
    "PairedRun",
    "SeedConfig",
    "aggregate",
    "assign",
    "bkm_fit",
    "breathe_in",
    "breathe_out",
    "centroid_stats",
    "delta_cpu",
    "delta_good",
    "delta_sse",
    "gen_gaussian_grid",
    "gen_norm25_style",
    "gen_simple_mixture",
    "gen_uniform_square",
    "kmeanspp_seed",
    "lloyd_fit",
    "mean_nn_distance",
    "mean_quantization_distance",
    "plan_deletions",
    "random_seed",
    "seed_and_fit",
    "sse",
]
