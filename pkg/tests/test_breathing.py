import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from breathing_kmeans.breathing import (
    BreathingConfig,
    bkm_fit,
    breathe_in,
    breathe_out,
    plan_deletions,
)
from breathing_kmeans.datagen import gen_gaussian_mixture, gen_uniform_square
from breathing_kmeans.geometry import centroid_distances, centroid_stats, mean_quantization_distance, sse
from breathing_kmeans.seeding import SeedConfig, seed_and_fit


# breathe in ---------------------------------------------------------------


def test_breathe_in_copies_highest_error_centroid():
    C = breathe_in([0.0, 1.0, 5.0], [0.0, 5.0], 1, rng=0)
    assert C.shape == (3, 1)
    np.testing.assert_array_equal(C[:2].ravel(), [0, 5])
    bound = 0.01 * np.sqrt(1 / 3) / 2
    assert 0 < abs(C[2, 0]) <= bound


def test_breathe_in_error_ties_use_lowest_index():
    X = np.array([[-1.0, 0], [1.0, 0], [9.0, 0], [11.0, 0], [19.0, 0], [21.0, 0]])
    C = np.array([[0.0, 0], [10.0, 0], [20.0, 0]])
    grown = breathe_in(X, C, 2, rng=1)
    # all errors are 2; copies come from centroids 0 and 1
    np.testing.assert_allclose(grown[3:], C[:2], atol=0.02)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 4), st.integers(1, 5))
def test_breathe_in_offsets_are_bounded(seed, d, m):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(60, d))
    C = X[:8]
    grown = breathe_in(X, C, m, 0.01, rng)
    assert grown.shape == (8 + m, d)
    np.testing.assert_array_equal(grown[:8], C)
    scale = 0.01 * mean_quantization_distance(X, C)
    # each copy sits within half a scaled unit cube of some original centroid
    for new in grown[8:]:
        off = np.abs(C - new).max(axis=1).min()
        assert 0 < off <= scale / 2
        assert np.linalg.norm(C - new, axis=1).min() <= scale * np.sqrt(d) / 2


def test_breathe_in_independent_offsets_per_copy():
    X = np.random.default_rng(0).normal(size=(100, 2))
    C = X[:4]
    top = np.argsort(-centroid_stats(X, C).error, kind="stable")[:3]
    offsets = breathe_in(X, C, 3, rng=5)[4:] - C[top]
    assert len({tuple(o) for o in offsets.tolist()}) == 3


def test_breathe_in_zero_error_still_separates_copies():
    X = np.array([[0.0], [1.0], [2.0]])
    grown = breathe_in(X, X, 1, rng=0)
    assert grown[3, 0] != grown[0, 0]
    assert abs(grown[3, 0] - grown[0, 0]) < 1e-6


def test_breathe_in_validates_m():
    with pytest.raises(ValueError):
        breathe_in([0.0, 1.0, 2.0], [0.0, 2.0], 0)
    with pytest.raises(ValueError):
        breathe_in([0.0, 1.0, 2.0], [0.0, 2.0], 3)


# breathe out --------------------------------------------------------------


def test_breathe_out_keeps_one_centroid_per_pair():
    X = np.array([0.0, 0.1, 10.0, 10.1])
    reduced = breathe_out(X, X, 2, 1.1)
    assert reduced.shape == (2, 1)
    assert (reduced[0, 0] < 1) and (reduced[1, 0] > 9)


def test_breathe_out_hand_simulation_exact():
    # binary-exact pairs: equal utilities 1/64, kappa = 1.1 * 0.125
    X = np.array([0.0, 0.125, 10.0, 10.125])
    plan = plan_deletions(X, X, 2, 1.1)
    assert plan.kappa == pytest.approx(0.1375)
    assert plan.deleted == (0, 2)
    # second freeze still allowed: |F| + m = 1 + 2 < 4
    assert plan.frozen == {1, 3}
    assert not plan.guard_fired
    np.testing.assert_array_equal(breathe_out(X, X, 2, 1.1).ravel(), [0.125, 10.125])


def test_breathe_out_minimal_case():
    X = np.array([0.0, 1.0, 2.0, 10.0])
    C = np.array([1.0, 10.0])
    # utilities: centroid 0 -> 99 + 81 + 63 = 243, centroid 1 -> 81
    np.testing.assert_array_equal(centroid_stats(X, C).utility, [243, 81])
    np.testing.assert_array_equal(breathe_out(X, C, 1).ravel(), [1.0])


def test_breathe_out_equal_utilities_use_lowest_index():
    X = np.array([0.0, 4.0])
    out = breathe_out(X, X, 1)
    np.testing.assert_array_equal(out.ravel(), [4.0])


def test_breathe_out_keeps_order_of_survivors():
    X = np.random.default_rng(2).normal(size=(200, 2))
    C = X[:10]
    out = breathe_out(X, C, 3)
    positions = [int(np.flatnonzero((C == row).all(axis=1))[0]) for row in out]
    assert positions == sorted(positions)


def test_duplicate_pair_is_not_deleted_together():
    rng = np.random.default_rng(0)
    # small dense cluster A coded by a coincident pair, big cluster B with spread centroids
    A = rng.normal(scale=0.05, size=(50, 2))
    B = rng.normal(scale=1.0, size=(400, 2)) + [20, 0]
    X = np.vstack([A, B])
    C = np.vstack([[[0.0, 0.0], [0.0, 0.0]], B[:6]])
    plan = plan_deletions(X, C, 2, 1.1)
    assert len({0, 1} & set(plan.deleted)) == 1
    # plain lowest-utility selection would take both zero-utility twins
    utility = centroid_stats(X, C).utility
    assert utility[0] == utility[1] == 0.0
    assert set(np.argsort(utility, kind="stable")[:2].tolist()) == {0, 1}


def test_breathe_out_validates_m():
    with pytest.raises(ValueError):
        breathe_out([0.0, 1.0], [0.0, 1.0], 2)
    with pytest.raises(ValueError):
        breathe_out([0.0, 1.0], [0.0, 1.0], 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(3, 14), st.integers(1, 3), st.integers(1, 3), st.floats(0.2, 3.0))
def test_deleted_centroids_are_not_neighbors_unless_guard_fired(seed, k, m, d, theta):
    m = min(m, k - 1)
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(80, d))
    C = rng.normal(size=(k, d))
    plan = plan_deletions(X, C, m, theta)
    assert len(plan.deleted) == m
    assert len(set(plan.deleted)) == m
    assert plan.frozen.isdisjoint(plan.deleted)
    dist = centroid_distances(C)
    close_pairs = [
        (a, b) for i, a in enumerate(plan.deleted) for b in plan.deleted[i + 1 :] if dist[a, b] < plan.kappa
    ]
    if close_pairs:
        assert plan.guard_fired


# full algorithm -----------------------------------------------------------


def test_config_validation():
    for bad in [dict(m0=-1), dict(theta=0), dict(tol=-1), dict(epsilon=0)]:
        with pytest.raises(ValueError):
            BreathingConfig(**bad)


def test_m0_zero_reduces_to_seeding():
    X = gen_uniform_square(400, 3)
    cfg = BreathingConfig(m0=0, seed=SeedConfig(rng_seed=17))
    fit = bkm_fit(X, 20, cfg)
    ref = seed_and_fit(X, 20, cfg.seed, cfg.lloyd)
    assert fit.sse == ref.sse
    np.testing.assert_array_equal(fit.codebook, ref.codebook)
    assert fit.breathing_cycles == 0


def test_k_one_returns_seeding():
    X = gen_uniform_square(100, 1)
    cfg = BreathingConfig(seed=SeedConfig(rng_seed=3))
    fit = bkm_fit(X, 1, cfg)
    ref = seed_and_fit(X, 1, cfg.seed, cfg.lloyd)
    np.testing.assert_array_equal(fit.codebook, ref.codebook)
    assert fit.sse == ref.sse == fit.seeding_sse
    assert fit.breathing_cycles == 0


def test_k_equal_n_has_no_room_to_breathe():
    X = np.arange(6.0).reshape(-1, 1)
    fit = bkm_fit(X, 6)
    assert fit.sse == 0.0
    assert fit.breathing_cycles == 0


def test_invalid_k():
    with pytest.raises(ValueError):
        bkm_fit(np.zeros((3, 1)), 4)
    with pytest.raises(ValueError):
        bkm_fit(np.zeros((3, 1)), 0)


def test_uses_given_seeding():
    X = gen_uniform_square(300, 2)
    seeding = seed_and_fit(X, 15, SeedConfig(rng_seed=1))
    fit = bkm_fit(X, 15, BreathingConfig(rng_seed=4), seeding=seeding)
    assert fit.seeding_sse == seeding.sse
    assert fit.sse <= seeding.sse
    with pytest.raises(ValueError):
        bkm_fit(X, 14, seeding=seeding)


def test_improves_uniform_square():
    X = gen_uniform_square(1000, 0)
    fit = bkm_fit(X, 100, BreathingConfig(rng_seed=1, seed=SeedConfig(rng_seed=1)))
    assert fit.sse < fit.seeding_sse
    assert fit.sse == pytest.approx(sse(X, fit.codebook), rel=1e-12)
    assert fit.codebook.shape == (100, 2)
    assert fit.breathing_cycles >= 5


def test_history_has_one_entry_per_cycle_and_m_schedule():
    X = gen_uniform_square(500, 5)
    fit = bkm_fit(X, 40, BreathingConfig(m0=3, rng_seed=2, seed=SeedConfig(rng_seed=2)))
    assert len(fit.sse_history) == fit.breathing_cycles + 1
    # exactly m0 non-improving cycles end the loop
    best = fit.sse_history[0]
    failures = 0
    for value in fit.sse_history[1:]:
        if value < best * (1 - 1e-4):
            best = value
        else:
            failures += 1
    assert failures == 3
    assert best == fit.sse


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 12), st.integers(0, 4))
def test_never_worse_than_seeding(seed, k, m0):
    rng = np.random.default_rng(seed)
    centers = rng.random((4, 2)) * 10
    X = gen_gaussian_mixture(centers, 120, 0.5, rng)
    fit = bkm_fit(X, k, BreathingConfig(m0=m0, rng_seed=seed, seed=SeedConfig(rng_seed=seed, n_init=2)))
    assert fit.sse <= fit.seeding_sse
    assert fit.codebook.shape == (k, 2)
    assert fit.breathing_cycles < 50 * max(m0, 1)


def test_deterministic_given_seed():
    X = gen_uniform_square(400, 8)
    cfg = BreathingConfig(rng_seed=21, seed=SeedConfig(rng_seed=21, n_init=3))
    a = bkm_fit(X, 25, cfg)
    b = bkm_fit(X, 25, cfg)
    assert a.codebook.tobytes() == b.codebook.tobytes()
    assert a.sse_history == b.sse_history


def test_guard_fires_when_everything_is_a_neighbor():
    # four equally spaced centroids with a huge freezing range: freezing stops at |F| + m = k
    X = np.array([0.0, 1.0, 2.0, 3.0])
    plan = plan_deletions(X, X, 2, 10.0)
    assert plan.guard_fired
    assert plan.frozen == {1, 2}
    assert plan.deleted == (0, 3)
