"""Paired k-means++ vs breathing k-means benchmark campaigns.

Each run fits k-means++ (best of ``n_init``) and then runs breathing k-means
from exactly that solution, so the bkm time includes the seeding time and
SSE(bkm) can never exceed SSE(km++).

Campaigns are described in an INI file::

    [campaign]
    seed = 2024          ; master seed
    workers = 1

    [problem uniform]
    generator = uniform_square
    n = 1000
    k = 100
    runs = 20

    [problem gmd5x5]
    generator = gaussian_grid
    n = 10000
    rows = 5
    cols = 5
    k = 50
    runs = 10

    [problem birch]
    file = data/birch1.txt
    k = 100
    runs = 5

Optional per-problem keys: ``m``, ``theta``, ``tol``, ``n_init``, ``init``
(``kmeanspp`` or ``random``), ``max_iter``, ``data_seed`` and any generator
parameter (``sigma_x``, ``sigma_y``, ``spacing``, ``d``, ``g``, ``side``,
``sigma``).
"""

from __future__ import annotations

import configparser
import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .breathing import BreathingConfig, bkm_fit
from .datagen import FAMILIES, GenSpec
from .io import load_matrix
from .lloyd import LloydConfig
from .metrics import ExperimentReport, PairedRun, aggregate
from .rng import derive_seed
from .seeding import SeedConfig, seed_and_fit

_INT_PARAMS = {"rows", "cols", "d", "g"}
_FLOAT_PARAMS = {"sigma_x", "sigma_y", "spacing", "side", "sigma", "min_separation"}


class BenchmarkError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    k: int
    runs: int = 1
    generator: GenSpec | None = None
    path: str | None = None
    breathing: BreathingConfig = field(default_factory=BreathingConfig)

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if (self.generator is None) == (self.path is None):
            raise ValueError(f"problem {self.name!r} needs exactly one of a generator or a file")

    def load(self) -> np.ndarray:
        if self.generator is not None:
            return self.generator.generate()
        return load_matrix(self.path)


@dataclass(frozen=True)
class Campaign:
    problems: tuple[ProblemSpec, ...]
    seed: int = 0
    workers: int = 1


def parse_campaign(text: str, base_dir: str | os.PathLike = ".") -> Campaign:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.read_string(text)
    seed = parser.getint("campaign", "seed", fallback=0)
    workers = parser.getint("campaign", "workers", fallback=1)
    problems = []
    for index, section in enumerate(s for s in parser.sections() if s.startswith("problem")):
        opts = parser[section]
        name = section.partition(" ")[2].strip() or f"problem{index}"
        lloyd = LloydConfig(tol=opts.getfloat("tol", 1e-4), max_iter=opts.getint("max_iter", 300))
        breathing = BreathingConfig(
            m0=opts.getint("m", 5),
            theta=opts.getfloat("theta", 1.1),
            tol=opts.getfloat("tol", 1e-4),
            lloyd=lloyd,
            seed=SeedConfig(method=opts.get("init", "kmeanspp"), n_init=opts.getint("n_init", 10)),
        )
        generator = None
        path = None
        if "file" in opts:
            path = str(Path(base_dir) / opts["file"])
        elif "generator" in opts:
            family = opts["generator"].replace("-", "_")
            if family not in FAMILIES:
                raise ValueError(f"[{section}] unknown generator {opts['generator']!r}")
            params = {}
            for key in _INT_PARAMS | _FLOAT_PARAMS:
                if key in opts:
                    params[key] = opts.getint(key) if key in _INT_PARAMS else opts.getfloat(key)
            data_seed = opts.getint("data_seed", derive_seed(seed, "data", index))
            generator = GenSpec(family, opts.getint("n"), params, data_seed)
        problems.append(
            ProblemSpec(
                name=name,
                k=opts.getint("k", 8),
                runs=opts.getint("runs", 1),
                generator=generator,
                path=path,
                breathing=breathing,
            )
        )
    if not problems:
        raise ValueError("campaign defines no [problem ...] sections")
    return Campaign(tuple(problems), seed, workers)


def load_campaign(path: str | os.PathLike) -> Campaign:
    path = Path(path)
    return parse_campaign(path.read_text(encoding="utf-8"), path.parent)


def paired_run(X: np.ndarray, k: int, cfg: BreathingConfig, run_seed: int) -> PairedRun:
    """One k-means++ fit followed by breathing k-means started from it."""
    cfg = replace(cfg, rng_seed=run_seed, seed=replace(cfg.seed, rng_seed=run_seed))
    t0 = time.perf_counter()
    kmpp = seed_and_fit(X, k, cfg.seed, cfg.lloyd)
    t1 = time.perf_counter()
    bkm = bkm_fit(X, k, cfg, seeding=kmpp)
    t2 = time.perf_counter()
    return PairedRun(
        sse_kmpp=kmpp.sse,
        sse_bkm=bkm.sse,
        cpu_kmpp=t1 - t0,
        cpu_bkm=t2 - t0,
        rng_seed=run_seed,
        breathing_cycles=bkm.breathing_cycles,
    )


def _task(args):
    name, run, X, k, cfg, run_seed = args
    try:
        return paired_run(X, k, cfg, run_seed)
    except Exception as exc:  # re-raised with context in the parent
        raise BenchmarkError(f"problem {name!r} run {run} (seed {run_seed}): {exc}") from exc


def run_problem(problem: ProblemSpec, master_seed: int, index: int = 0, workers: int = 1, X=None) -> ExperimentReport:
    if X is None:
        X = problem.load()
    tasks = [
        (problem.name, run, X, problem.k, problem.breathing, derive_seed(master_seed, "run", index, run))
        for run in range(problem.runs)
    ]
    if workers <= 1:
        results = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_task, tasks))
    return aggregate(results, problem.name, X.shape[0], X.shape[1], problem.k)


def run_campaign(campaign: Campaign, workers: int | None = None) -> list[ExperimentReport]:
    workers = campaign.workers if workers is None else workers
    return [run_problem(p, campaign.seed, i, workers) for i, p in enumerate(campaign.problems)]


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def runs_csv(reports: list[ExperimentReport]) -> str:
    """Per-run SSE results; contains no timings, so it is reproducible byte for byte."""
    rows = [
        [rep.problem, i, r.rng_seed, repr(r.sse_kmpp), repr(r.sse_bkm), repr(r.delta_sse), r.breathing_cycles]
        for rep in reports
        for i, r in enumerate(rep.runs)
    ]
    return _csv(["problem", "run", "rng_seed", "sse_kmpp", "sse_bkm", "delta_sse", "breathing_cycles"], rows)


def summary_csv(reports: list[ExperimentReport]) -> str:
    rows = [
        [
            rep.problem, rep.n, rep.d, rep.k, len(rep.runs),
            repr(rep.mean_sse_kmpp), repr(rep.rel_std_kmpp),
            repr(rep.mean_sse_bkm), repr(rep.rel_std_bkm),
            repr(rep.mean_delta_sse),
        ]
        for rep in reports
    ]
    header = ["problem", "n", "d", "k", "runs", "mean_sse_kmpp", "rel_std_kmpp",
              "mean_sse_bkm", "rel_std_bkm", "mean_delta_sse"]
    return _csv(header, rows)


def timing_csv(reports: list[ExperimentReport]) -> str:
    rows = [
        [rep.problem, i, f"{r.cpu_kmpp:.6f}", f"{r.cpu_bkm:.6f}", f"{r.delta_cpu:.6f}"]
        for rep in reports
        for i, r in enumerate(rep.runs)
    ]
    return _csv(["problem", "run", "cpu_kmpp", "cpu_bkm", "delta_cpu"], rows)


def format_table(reports: list[ExperimentReport]) -> str:
    header = ["data set", "n", "d", "k", "SSE(km++)", "SSE(bkm)", "dSSE", "dCPU"]
    body = [
        [
            rep.problem, str(rep.n), str(rep.d), str(rep.k),
            f"{rep.mean_sse_kmpp:.4g} ±{100 * rep.rel_std_kmpp:.2f}%",
            f"{rep.mean_sse_bkm:.4g} ±{100 * rep.rel_std_bkm:.2f}%",
            f"{100 * rep.mean_delta_sse:.2f}%",
            f"{100 * rep.mean_delta_cpu:.1f}%",
        ]
        for rep in reports
    ]
    widths = [max(len(row[c]) for row in [header, *body]) for c in range(len(header))]
    lines = []
    for row in [header, *body]:
        cells = [row[0].ljust(widths[0])] + [cell.rjust(w) for cell, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells))
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def write_reports(reports: list[ExperimentReport], outdir: str | os.PathLike) -> dict[str, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files = {
        "runs": (outdir / "runs.csv", runs_csv(reports)),
        "summary": (outdir / "summary.csv", summary_csv(reports)),
        "timing": (outdir / "timing.csv", timing_csv(reports)),
        "table": (outdir / "table.txt", format_table(reports)),
    }
    for path, text in files.values():
        path.write_text(text, encoding="utf-8")
    return {key: path for key, (path, _) in files.items()}
