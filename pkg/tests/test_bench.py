import numpy as np
import pytest

from breathing_kmeans.bench import (
    ProblemSpec,
    format_table,
    load_campaign,
    paired_run,
    parse_campaign,
    run_campaign,
    run_problem,
    runs_csv,
    summary_csv,
    write_reports,
)
from breathing_kmeans.breathing import BreathingConfig
from breathing_kmeans.datagen import GenSpec
from breathing_kmeans.io import save_matrix
from breathing_kmeans.rng import derive_seed
from breathing_kmeans.seeding import SeedConfig

SPEC = """
[campaign]
seed = 7
workers = 1

[problem square]
generator = uniform_square
n = 300
k = 12
runs = 3
n_init = 2

[problem grid]
generator = gaussian-grid
n = 400
rows = 2
cols = 2
sigma_x = 0.05
k = 6
runs = 2
m = 3
theta = 1.5
"""


def test_parse_campaign():
    camp = parse_campaign(SPEC)
    assert camp.seed == 7
    square, grid = camp.problems
    assert (square.name, square.k, square.runs) == ("square", 12, 3)
    assert square.breathing.seed.n_init == 2
    assert square.generator.family == "uniform_square"
    assert square.generator.rng_seed == derive_seed(7, "data", 0)
    assert grid.generator.params == {"rows": 2, "cols": 2, "sigma_x": 0.05}
    assert grid.breathing.m0 == 3 and grid.breathing.theta == 1.5


@pytest.mark.parametrize(
    "text",
    [
        "[campaign]\nseed = 1\n",
        "[problem a]\ngenerator = spiral\nn = 10\n",
        "[problem a]\nk = 3\n",
        "[problem a]\ngenerator = uniform_square\nn = 10\nruns = 0\n",
    ],
)
def test_parse_campaign_rejects_bad_specs(text):
    with pytest.raises(ValueError):
        parse_campaign(text)


def test_file_problem_resolves_relative_to_spec(tmp_path):
    X = np.random.default_rng(0).random((60, 2))
    save_matrix(tmp_path / "data.txt", X)
    (tmp_path / "c.ini").write_text("[problem f]\nfile = data.txt\nk = 4\nruns = 2\n")
    camp = load_campaign(tmp_path / "c.ini")
    np.testing.assert_array_equal(camp.problems[0].load(), X)
    rep = run_campaign(camp)[0]
    assert (rep.n, rep.d, rep.k) == (60, 2, 4)


def test_paired_run_invariants():
    X = GenSpec("uniform_square", 400, rng_seed=1).generate()
    run = paired_run(X, 20, BreathingConfig(), 99)
    assert run.sse_bkm <= run.sse_kmpp
    assert run.cpu_bkm >= run.cpu_kmpp > 0
    assert run.rng_seed == 99


def test_single_run_has_zero_spread():
    problem = ProblemSpec("one", 5, 1, GenSpec("uniform_square", 100, rng_seed=0))
    rep = run_problem(problem, 3)
    assert rep.rel_std_kmpp == 0.0 and rep.rel_std_bkm == 0.0


def test_m_zero_gives_no_improvement():
    cfg = BreathingConfig(m0=0, seed=SeedConfig(n_init=1))
    problem = ProblemSpec("flat", 8, 3, GenSpec("uniform_square", 200, rng_seed=0), breathing=cfg)
    rep = run_problem(problem, 0)
    assert rep.mean_delta_sse == 0.0
    assert all(r.sse_bkm == r.sse_kmpp for r in rep.runs)


def test_reports_are_reproducible_and_worker_independent(tmp_path):
    camp = parse_campaign(SPEC)
    a = run_campaign(camp, workers=1)
    b = run_campaign(camp, workers=1)
    c = run_campaign(camp, workers=2)
    assert runs_csv(a) == runs_csv(b) == runs_csv(c)
    assert summary_csv(a) == summary_csv(c)
    files = write_reports(a, tmp_path / "out")
    assert set(files) == {"runs", "summary", "timing", "table"}
    assert files["runs"].read_bytes() == runs_csv(a).encode()
    lines = files["runs"].read_text().splitlines()
    assert lines[0].startswith("problem,run,rng_seed")
    assert len(lines) == 1 + 3 + 2


def test_table_has_one_row_per_problem():
    reports = run_campaign(parse_campaign(SPEC))
    table = format_table(reports).splitlines()
    assert len(table) == 2 + 2
    assert table[2].startswith("square") and table[3].startswith("grid")
