import math
import time

import numpy as np
import pytest
from scipy import stats

from macroforge import _consts
from macroforge.sampling import DynamicWeightedSampler, sampler_new, BufferedUniforms, run_stream, sector_stream
from macroforge.sampling.kernels import match_sector, level_range
from macroforge.utils.status_exception import SamplerError, EmptyDistributionError


def draw_counts(sampler, rng, n_draws):
    counts = np.zeros(sampler.n, dtype=np.int64)
    uniforms = BufferedUniforms(rng)
    for _ in range(n_draws):
        counts[sampler.sample(uniforms)] += 1
    return counts


def chi_square(counts, weights):
    weights = np.asarray(weights, dtype=float)
    mask = weights > 0
    expected = counts.sum() * weights[mask] / weights.sum()
    return float(((counts[mask] - expected) ** 2 / expected).sum()), int(mask.sum()) - 1


def test_single_weight():
    s = sampler_new([1.0])
    assert s.total() == 1.0
    assert s.sample(np.random.default_rng(0)) == 0


def test_two_levels():
    s = sampler_new([1.0, 3.0])
    assert s.total() == 4.0
    assert s.levels() == [0, 1]


def test_all_zero_is_empty():
    s = sampler_new([0.0, 0.0])
    assert s.total() == 0.0
    assert s.levels() == []
    with pytest.raises(EmptyDistributionError):
        s.sample(np.random.default_rng(0))
    with pytest.raises(EmptyDistributionError):
        s.argmax()


@pytest.mark.parametrize('weights, index', [([1.0, -1.0], 1), ([0.5, math.inf], 1), ([math.nan], 0)])
def test_invalid_weights(weights, index):
    with pytest.raises(SamplerError, match=f'index {index}'):
        sampler_new(weights)


def test_empty_weights():
    with pytest.raises(SamplerError):
        sampler_new([])


def test_update_arithmetic():
    s = sampler_new([1.0, 3.0])
    s.update(0, 3.0)
    assert s.total() == 6.0
    s.update(1, 0.0)
    assert s.total() == 3.0
    assert s.levels() == [1]


def test_update_to_zero_leaves_only_remaining_mass():
    s = sampler_new([1.0, 3.0])
    s.update(1, 0.0)
    assert s.total() == 1.0
    rng = np.random.default_rng(3)
    assert {s.sample(rng) for _ in range(1000)} == {0}


def test_update_rejects_bad_input():
    s = sampler_new([1.0, 3.0])
    with pytest.raises(SamplerError):
        s.update(2, 1.0)
    with pytest.raises(SamplerError):
        s.update(-1, 1.0)
    with pytest.raises(SamplerError):
        s.update(0, -0.5)
    with pytest.raises(SamplerError):
        s.update(0, math.nan)


def test_zero_weight_items_belong_to_no_level():
    s = sampler_new([0.0, 2.0, 0.0, 0.75])
    assert s.levels() == [-1, 1]
    s.update(0, 5.0)
    assert s.levels() == [-1, 1, 2]
    s.update(3, 0.0)
    assert s.levels() == [1, 2]


def test_argmax_ties_to_lowest_index():
    s = sampler_new([1.0, 3.0, 3.0, 2.0])
    assert s.argmax() == 1
    s.update(1, 0.5)
    assert s.argmax() == 2


def test_frequency_of_heavier_item():
    counts = draw_counts(sampler_new([1.0, 3.0]), np.random.default_rng(12345), 100_000)
    assert 0.74 <= counts[1] / counts.sum() <= 0.76


def test_uniform_weights_chi_square():
    counts = draw_counts(sampler_new([5.0, 5.0, 5.0, 5.0]), np.random.default_rng(2024), 100_000)
    statistic, dof = chi_square(counts, [5.0] * 4)
    assert dof == 3
    assert statistic < stats.chi2.ppf(0.999, dof)


@pytest.mark.slow
def test_random_weight_vectors_chi_square():
    """
    40 chi-square tests (20 weight vectors, fresh and after updates) at a
    family-wise 99.9% level: each test uses the Bonferroni quantile 1 - 0.001 / 40.
    """
    rng = np.random.default_rng(7)
    quantile = 1 - 0.001 / 40
    for trial in range(20):
        n = int(rng.integers(2, 9))
        weights = 2.0 ** rng.uniform(-3.0, 3.0, size=n)

        fresh = sampler_new(weights)
        statistic, dof = chi_square(draw_counts(fresh, rng, 100_000), weights)
        assert statistic < stats.chi2.ppf(quantile, dof), f'fresh sampler, trial {trial}'

        updated = sampler_new(2.0 ** rng.uniform(-3.0, 3.0, size=n))
        current = updated.weights()
        for _ in range(1000):
            i = int(rng.integers(n))
            current[i] = 2.0 ** rng.uniform(-3.0, 3.0)
            updated.update(i, current[i])
            updated.sample(rng)
        statistic, dof = chi_square(draw_counts(updated, rng, 100_000), current)
        assert statistic < stats.chi2.ppf(quantile, dof), f'updated sampler, trial {trial}'


@pytest.mark.slow
def test_total_does_not_drift():
    rng = np.random.default_rng(99)
    n = 10_000
    s = sampler_new(10.0 ** rng.uniform(-3, 3, size=n))
    indices = rng.integers(n, size=1_000_000).tolist()
    values = (10.0 ** rng.uniform(-3, 3, size=1_000_000)).tolist()
    for k, (i, w) in enumerate(zip(indices, values)):
        s.update(i, 0.0 if k % 97 == 0 else w)
    exact = math.fsum(s.weights().tolist())
    assert abs(s.total() - exact) <= 1e-9 * exact


def test_level_membership_matches_weights():
    rng = np.random.default_rng(5)
    s = sampler_new(rng.uniform(0, 4, size=50))
    for _ in range(500):
        s.update(int(rng.integers(50)), float(rng.choice([0.0, rng.uniform(0, 100)])))
    expected = sorted({math.frexp(w)[1] - 1 for w in s.weights() if w > 0})
    assert s.levels() == expected


def test_streams_are_keyed():
    a = run_stream(0, 1).random(5)
    assert np.array_equal(a, run_stream(0, 1).random(5))
    assert not np.array_equal(a, run_stream(0, 2).random(5))
    assert not np.array_equal(sector_stream(0, 1, 1, 0).random(5), sector_stream(0, 1, 1, 1).random(5))


def test_buffered_uniforms_match_generator():
    expected = np.random.default_rng(11).random(10)
    buffered = BufferedUniforms(np.random.default_rng(11), block=10)
    assert np.array_equal([buffered.random() for _ in range(10)], expected)


@pytest.mark.slow
def test_sample_and_update_cost_does_not_grow_with_size():
    def seconds_per_operation(n):
        rng = np.random.default_rng(n)
        s = sampler_new(rng.uniform(0.5, 2.0, size=n))
        uniforms = BufferedUniforms(rng)
        indices = rng.integers(n, size=100_000).tolist()
        values = rng.uniform(0.5, 2.0, size=100_000).tolist()
        t0 = time.perf_counter()
        for i, w in zip(indices, values):
            s.update(i, w)
            s.sample(uniforms)
        return (time.perf_counter() - t0) / 100_000

    small = min(seconds_per_operation(1_000) for _ in range(3))
    large = min(seconds_per_operation(1_000_000) for _ in range(3))
    assert large <= 3 * small


# -- compiled matching ------------------------------------------------------------------------

def first_seller_counts(weights, trials, rng):
    n = len(weights)
    counts = np.zeros(n, dtype=np.int64)
    for _ in range(trials):
        _, sold, _, _, _ = match_sector([0], [1e-6], np.ones(n), np.full(n, 1e6), weights, rng)
        counts[np.flatnonzero(sold)[0]] += 1
    return counts


def test_compiled_matching_first_seller_chi_square():
    weights = [1.0, 2.0, 3.0, 10.0]
    counts = first_seller_counts(weights, 20_000, np.random.default_rng(8))
    statistic, dof = chi_square(counts, weights)
    assert statistic < stats.chi2.ppf(0.999, dof)


def test_compiled_matching_skips_zero_weights():
    counts = first_seller_counts([0.0, 1.0, 0.0], 200, np.random.default_rng(3))
    assert counts.tolist() == [0, 200, 0]


def test_compiled_matching_heaviest_first_in_deterministic_mode():
    spent, sold, revenue, stock, unspent = match_sector(
        [0, 1], [3.0, 3.0], [1.0, 1.0, 1.0], [4.0, 4.0, 2.0], [4.0, 4.0, 2.0], None, deterministic=True)
    # 3 from seller 0, then seller 1 (4.0) outweighs seller 0 (1.0)
    assert sold.tolist() == [3.0, 3.0, 0.0]
    assert spent.tolist() == [3.0, 3.0]
    assert unspent == 0.0


def test_compiled_matching_refills_uniforms(monkeypatch):
    monkeypatch.setattr(_consts._SAMPLER, 'UNIFORM_BLOCK', 8)
    rng = np.random.default_rng(17)
    prices = rng.uniform(0.5, 2.0, size=12)
    stock0 = rng.uniform(1.0, 5.0, size=12)
    budgets = rng.uniform(0.0, 1.0, size=300)
    order = np.arange(300)
    first = match_sector(order, budgets, prices, stock0, stock0 / prices, np.random.default_rng(4))
    second = match_sector(order, budgets, prices, stock0, stock0 / prices, np.random.default_rng(4))
    for a, b in zip(first, second):
        assert np.array_equal(a, b)
    spent, sold, revenue, stock, unspent = first
    assert np.allclose(stock0 - sold, stock, rtol=0, atol=1e-12)
    assert spent.sum() == pytest.approx(revenue.sum(), rel=1e-12)
    assert spent.sum() + unspent == pytest.approx(budgets.sum(), rel=1e-12)


def test_compiled_matching_rejects_bad_weights():
    with pytest.raises(SamplerError):
        match_sector([0], [1.0], [1.0, 1.0], [1.0, 1.0], [1.0, -1.0], np.random.default_rng(0))


def test_level_range_is_capped():
    kmin, n_levels = level_range(np.array([1e-200, 1e200]))
    assert n_levels == _consts._SAMPLER.MAX_LEVELS
    assert kmin + n_levels - 1 == math.frexp(1e200)[1] - 1
    assert level_range(np.array([1.0, 3.0])) == (-41, 43)
