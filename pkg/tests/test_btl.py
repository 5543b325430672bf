import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from btl_helpers import reverse_frequencies
from btlres.btl import (
    BadDeltaError,
    BadSkewnessError,
    ComparisonTally,
    DimensionMismatchError,
    WeightVector,
    bernoulli_variance_scale,
    chernoff_deviation_bound,
    edge_win_probabilities,
    empirical_frequencies,
    log_ratios,
    sample_weights,
    simulate_comparisons,
    win_probability,
)
from btlres.generators import FamilySpec, generate, generate_connected
from btlres.graph import build_graph


def test_sample_weights_degenerate():
    np.testing.assert_array_equal(sample_weights(17, 1.0, seed=3).w, 1.0)


def test_sample_weights_uniform_logs():
    w = sample_weights(1000, 10.0, seed=7)
    ks = stats.kstest(np.log(w.w), stats.uniform(loc=0, scale=math.log(10)).cdf)
    assert ks.statistic < 0.05


@given(st.integers(2, 200), st.floats(1.0, 1e4), st.integers(0, 2**32))
def test_sample_weights_skewness(n, b, seed):
    w = sample_weights(n, b, seed)
    assert w.skewness <= b * (1 + 1e-12)
    assert (w.w > 0).all()


def test_sample_weights_bad_b():
    with pytest.raises(BadSkewnessError):
        sample_weights(3, 0.5, seed=0)
    with pytest.raises(BadSkewnessError):
        WeightVector(np.array([1.0, 3.0]), 2.0)


def test_win_probability():
    assert win_probability(WeightVector(np.array([2.0, 2.0]), 1), 0, 1) == 0.5
    assert win_probability(WeightVector(np.array([3.0, 1.0]), 3), 0, 1) == 0.75
    assert win_probability(WeightVector(np.array([10.0, 1.0]), 10), 0, 1) == pytest.approx(10 / 11)
    w = WeightVector(np.array([1.7, 0.4]), 5)
    assert win_probability(w, 0, 1) + win_probability(w, 1, 0) == pytest.approx(1.0)


def test_variance_scale_examples():
    assert bernoulli_variance_scale(1.0) == 4.0
    v = bernoulli_variance_scale(3.0)
    assert v == pytest.approx(16 / 3)
    assert 1 / v == pytest.approx(0.75 * 0.25)


@given(st.floats(1e-3, 1e3))
def test_variance_scale_properties(rho):
    v = bernoulli_variance_scale(rho)
    assert v == pytest.approx(bernoulli_variance_scale(1 / rho))
    p = rho / (1 + rho)
    assert 1 / v == pytest.approx(p * (1 - p))
    b = max(rho, 1 / rho)
    assert v <= 4 * b * (1 + 1e-12)


def test_simulate_balanced():
    g = build_graph(2, [(0, 1)])
    w = WeightVector(np.ones(2), 1)
    for seed in range(20):
        t = simulate_comparisons(g, w, 10_000, seed)
        assert 0.47 <= t.wins[0] / 10_000 <= 0.53


def test_simulate_deterministic():
    g = generate(FamilySpec("grid2d", 25))
    w = sample_weights(25, 5, seed=1)
    a = simulate_comparisons(g, w, 50, seed=9)
    b = simulate_comparisons(g, w, 50, seed=9)
    np.testing.assert_array_equal(a.wins, b.wins)
    assert not np.array_equal(a.wins, simulate_comparisons(g, w, 50, seed=10).wins)


def test_simulate_extreme_pair():
    g = build_graph(2, [(0, 1)])
    w = WeightVector(np.array([1e6, 1.0]), 1e6)
    for seed in range(20):
        assert simulate_comparisons(g, w, 100, seed).wins[0] >= 99


def test_simulate_distribution():
    # wins ~ Binomial(k, p): chi-square against the exact pmf
    g = build_graph(2, [(0, 1)])
    w = WeightVector(np.array([3.0, 1.0]), 3)
    k = 12
    draws = np.array([simulate_comparisons(g, w, k, s).wins[0] for s in range(4000)])
    observed = np.bincount(draws, minlength=k + 1)
    expected = stats.binom.pmf(np.arange(k + 1), k, 0.75) * draws.size
    keep = expected > 5
    chi2 = ((observed[keep] - expected[keep]) ** 2 / expected[keep]).sum()
    assert stats.chi2.sf(chi2, keep.sum() - 1) > 1e-3


def test_simulate_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        simulate_comparisons(build_graph(3, [(0, 1), (1, 2)]), WeightVector(np.ones(2), 1), 5, 0)


def test_empirical_frequencies_half_win():
    f = empirical_frequencies(ComparisonTally(10, np.array([0, 10, 7])))
    np.testing.assert_allclose(f.f, [0.05, 0.95, 0.7])
    assert f.corrected_edges == frozenset({0, 1})
    assert ((f.f > 0) & (f.f < 1)).all()


def test_log_ratios_examples():
    f = empirical_frequencies(ComparisonTally(10, np.array([5, 0])))
    lr = log_ratios(f)
    assert lr[0] == 0.0
    assert lr[1] == pytest.approx(math.log(1 / 19))
    assert lr[1] == pytest.approx(-2.944, abs=1e-3)
    assert log_ratios(np.array([0.75]))[0] == pytest.approx(math.log(3))


@given(st.integers(1, 500).flatmap(lambda k: st.tuples(st.just(k), st.lists(st.integers(0, k), min_size=1, max_size=20))))
def test_log_ratio_antisymmetry(case):
    k, wins = case
    t = ComparisonTally(k, np.array(wins))
    fwd = log_ratios(empirical_frequencies(t))
    rev = log_ratios(reverse_frequencies(t))
    np.testing.assert_array_equal(fwd, -rev)


def test_chernoff_examples():
    assert chernoff_deviation_bound(100, 1000, 4.0, 0.01) == pytest.approx(math.sqrt(math.log(1e4) / 4000))
    assert chernoff_deviation_bound(100, 1000, 4.0, 0.01) == pytest.approx(0.0480, abs=5e-5)
    a = chernoff_deviation_bound(50, 200, 5.0, 0.1)
    assert chernoff_deviation_bound(50, 400, 5.0, 0.1) == pytest.approx(a / math.sqrt(2))
    assert chernoff_deviation_bound(50, 200, 6.0, 0.1) < a


@pytest.mark.parametrize("delta", [0.0, 0.5, 1.0, -0.1])
def test_chernoff_bad_delta(delta):
    with pytest.raises(BadDeltaError):
        chernoff_deviation_bound(10, 10, 4.0, delta)


def test_frequencies_consistent_at_large_k():
    g, _ = generate_connected(FamilySpec("erdos_renyi", 30, p=0.2, seed=5))
    k, delta = 100_000, 0.01
    hits = 0
    for trial in range(100):
        w = sample_weights(g.n, 10, seed=trial)
        p = edge_win_probabilities(g, w)
        t = simulate_comparisons(g, w, k, seed=1000 + trial)
        v = bernoulli_variance_scale(p / (1 - p))
        dev = np.abs(t.wins / k - p)
        hits += (dev <= 3 * chernoff_deviation_bound(g.n, k, v, delta)).all()
    assert hits >= 95


def test_correction_rarely_fires_at_balanced_p():
    g = generate(FamilySpec("line", 11))
    w = WeightVector(np.ones(11), 1)
    empty = sum(not empirical_frequencies(simulate_comparisons(g, w, 20, s)).corrected_edges
                for s in range(1000))
    # P(any of 10 edges unanimous) = 10 * 2 * 2**-20 per trial
    assert empty >= 998
