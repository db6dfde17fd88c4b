"""Command-line interface: ``bkmeans {gen,fit,bench,plot}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import datagen
from .bench import format_table, load_campaign, run_campaign, write_reports
from .breathing import BreathingConfig, bkm_fit
from .io import DataFormatError, load_matrix, save_matrix
from .lloyd import LloydConfig
from .plot import scatter_svg
from .rng import derive_seed
from .seeding import SeedConfig, seed_and_fit

log = logging.getLogger("breathing_kmeans")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path) -> np.ndarray:
    try:
        return load_matrix(path)
    except (DataFormatError, OSError, UnicodeDecodeError) as exc:
        raise DataError(str(exc)) from exc


# gen ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        X, centers = _generate(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    header = f"{args.family} n={X.shape[0]} d={X.shape[1]} seed={args.seed}"
    save_matrix(args.output, X, header)
    if args.centers_output and centers is not None:
        save_matrix(args.centers_output, centers, f"{args.family} true centers")
    print(f"n={X.shape[0]} d={X.shape[1]} seed={args.seed} -> {args.output}")
    return EXIT_OK


def _generate(args):
    rng = np.random.default_rng(args.seed)
    centers = None
    if args.family == "uniform":
        X = datagen.gen_uniform_square(args.n, rng)
    elif args.family == "gaussian-grid":
        X = datagen.gen_gaussian_grid(args.rows, args.cols, args.n, args.sigma_x, args.sigma_y, args.spacing, rng)
        centers = datagen.grid_centers(args.rows, args.cols, args.spacing)
    elif args.family == "norm25":
        X, centers = datagen.gen_norm25_style(args.n, args.d, args.g, args.side, args.sigma, rng)
    else:
        X, centers = datagen.gen_simple_mixture(args.clusters, args.n, args.sigma, rng)
    return X, centers


# fit ----------------------------------------------------------------------


def _seed_config(args, d: int, seed: int) -> SeedConfig:
    if args.init.startswith("file:"):
        init = _load(args.init[len("file:") :])
        if init.shape != (args.k, d):
            raise DataError(f"init codebook has shape {init.shape}, expected ({args.k}, {d})")
        return SeedConfig(method="explicit", n_init=1, rng_seed=seed, init=init)
    if args.init not in ("kmeanspp", "random"):
        raise UsageError(f"--init must be kmeanspp, random or file:PATH, got {args.init!r}")
    return SeedConfig(method=args.init, n_init=args.n_init, rng_seed=seed)


def _fit_once(args, X, seed: int):
    """One fit under ``seed``; returns (codebook, sse, cycles, wall)."""
    try:
        lloyd = LloydConfig(tol=args.tol, max_iter=args.max_iter)
        cfg = BreathingConfig(
            m0=args.m,
            theta=args.theta,
            tol=args.tol,
            lloyd=lloyd,
            seed=_seed_config(args, X.shape[1], derive_seed(seed, "seeding")),
            rng_seed=derive_seed(seed, "breathing"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.algo == "kmpp":
        t0 = time.perf_counter()
        res = seed_and_fit(X, args.k, cfg.seed, lloyd)
        return res.codebook, res.sse, 0, time.perf_counter() - t0
    fit = bkm_fit(X, args.k, cfg)
    if args.runs == 1:
        print(f"seeding SSE: {fit.seeding_sse:.10g}")
    return fit.codebook, fit.sse, fit.breathing_cycles, fit.wall_time


def cmd_fit(args) -> int:
    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    X = _load(args.data)
    n, d = X.shape
    if args.k > n:
        raise DataError(f"k={args.k} exceeds the number of data points n={n}")
    print(f"algo: {args.algo}  n={n} d={d} k={args.k}")
    if args.runs == 1:
        codebook, value, cycles, wall = _fit_once(args, X, args.seed)
        print(f"SSE: {value:.10g}")
        print(f"breathing cycles: {cycles}")
        print(f"wall time: {wall:.3f} s")
    else:
        results = []
        for run in range(args.runs):
            res = _fit_once(args, X, derive_seed(args.seed, "run", run))
            print(f"run {run}: SSE {res[1]:.10g}  cycles {res[2]}  wall {res[3]:.3f} s")
            results.append(res)
        values = np.array([r[1] for r in results])
        codebook, value = min(results, key=lambda r: r[1])[:2]
        print(f"mean SSE: {values.mean():.10g} ±{100 * values.std() / values.mean():.2f}%")
        print(f"SSE: {value:.10g}")
    if args.output:
        save_matrix(args.output, codebook, f"{args.algo} k={args.k} sse={value!r} seed={args.seed}")
        print(f"codebook -> {args.output}")
    return EXIT_OK


# bench --------------------------------------------------------------------


def cmd_bench(args) -> int:
    try:
        campaign = load_campaign(args.spec)
    except OSError as exc:
        raise DataError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(f"{args.spec}: {exc}") from exc
    if args.seed is not None:
        campaign = replace(campaign, seed=args.seed)
    reports = run_campaign(campaign, args.workers)
    files = write_reports(reports, args.output)
    sys.stdout.write(format_table(reports))
    for key, path in files.items():
        print(f"{key}: {path}")
    return EXIT_OK


# plot ---------------------------------------------------------------------


def cmd_plot(args) -> int:
    X = _load(args.data)
    books = [_load(p) for p in args.codebook if p]
    if X.shape[1] < 2:
        raise DataError("plotting needs at least two dimensions")
    try:
        svg = scatter_svg(X, books, axes=tuple(args.axes))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    Path(args.output).write_text(svg, encoding="utf-8")
    print(f"{X.shape[0]} points, {sum(len(b) for b in books)} centroids -> {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bkmeans", description="Breathing k-means and paired k-means++ benchmarks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a synthetic dataset")
    fam = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", required=True)
    common.add_argument("--centers-output", help="also write the true cluster centers")
    p = fam.add_parser("uniform", parents=[common], help="uniform points in the unit square")
    p.add_argument("--n", type=int, default=1000)
    p = fam.add_parser("gaussian-grid", parents=[common], help="grid of axis-aligned Gaussians (gmd-style)")
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--sigma-x", type=float, default=0.08)
    p.add_argument("--sigma-y", type=float, default=0.16)
    p.add_argument("--spacing", type=float, default=1.0)
    p = fam.add_parser("norm25", parents=[common], help="Norm25-style high-dimensional Gaussians")
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--d", type=int, default=15)
    p.add_argument("--g", type=int, default=25)
    p.add_argument("--side", type=float, default=500.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p = fam.add_parser("mixture", parents=[common], help="well-separated circular Gaussians")
    p.add_argument("--clusters", type=int, default=14)
    p.add_argument("--n", type=int, default=4000)
    p.add_argument("--sigma", type=float, default=0.025)
    gen.set_defaults(func=cmd_gen)

    fit = sub.add_parser("fit", help="fit a codebook to a dataset file")
    fit.add_argument("data")
    fit.add_argument("--k", type=int, default=8)
    fit.add_argument("--algo", choices=["kmpp", "bkm"], default="bkm")
    fit.add_argument("--m", type=int, default=5, help="initial breathing depth")
    fit.add_argument("--theta", type=float, default=1.1, help="freezing range")
    fit.add_argument("--tol", type=float, default=1e-4)
    fit.add_argument("--n-init", type=int, default=10)
    fit.add_argument("--init", default="kmeanspp", help="kmeanspp, random or file:PATH")
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--runs", type=int, default=1, help="independent repetitions; the best codebook is kept")
    fit.add_argument("--max-iter", type=int, default=300)
    fit.add_argument("-o", "--output", help="codebook output file")
    fit.set_defaults(func=cmd_fit)

    bench = sub.add_parser("bench", help="run a paired benchmark campaign from an INI spec")
    bench.add_argument("spec")
    bench.add_argument("-o", "--output", default="bench_out", help="report directory")
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--seed", type=int, default=None, help="override the campaign master seed")
    bench.set_defaults(func=cmd_bench)

    plot = sub.add_parser("plot", help="SVG scatter plot of data and codebooks")
    plot.add_argument("data")
    plot.add_argument("--codebook", action="append", default=[], help="codebook file (repeatable)")
    plot.add_argument("--axes", type=int, nargs=2, default=[0, 1], metavar=("X", "Y"))
    plot.add_argument("-o", "--output", required=True)
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bkmeans: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"bkmeans: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:
        log.debug("failure", exc_info=True)
        print(f"bkmeans: failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
