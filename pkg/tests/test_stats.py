import math
import random

import numpy as np
import pytest
from scipy import special

from splitmark.errors import DegenerateSampleError, EmptyInputError
from splitmark.stats import descriptives, ks_normality, wilcoxon_one_sample


def enumerate_two_sided_p(diffs):
    """Independent oracle: literal enumeration of all 2^n sign patterns."""
    diffs = np.asarray(diffs, dtype=float)
    n = diffs.size
    order = np.argsort(np.abs(diffs), kind="stable")
    ranks = np.empty(n)
    sorted_abs = np.abs(diffs)[order]
    i = 0
    while i < n:
        j = i
        while j + 1 < n and sorted_abs[j + 1] == sorted_abs[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    w_obs = ranks[diffs > 0].sum()
    patterns = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    w_all = patterns @ ranks
    tol = 1e-9
    p_low = np.mean(w_all <= w_obs + tol)
    p_high = np.mean(w_all >= w_obs - tol)
    return min(1.0, 2.0 * min(p_low, p_high))


class TestDescriptives:
    def test_constant_pair(self):
        d = descriptives([0.5, 0.5])
        assert d.mean == 0.5
        assert d.sd == 0.0

    def test_extremes_counted(self):
        d = descriptives([0, 1])
        assert d.mean == 0.5
        assert d.count_at_0 == 1
        assert d.count_at_1 == 1

    def test_published_fixture_values(self):
        values = [0.50, 0.00, 1.00, 0.2609, 0.53, 0.25]
        d = descriptives(values)
        assert abs(d.mean - 0.4235) < 1e-3
        assert d.minimum == 0.0
        assert d.maximum == 1.0
        assert (d.count_at_0, d.count_at_1) == (1, 1)

    def test_sd_uses_n_minus_one(self):
        d = descriptives([1.0, 2.0, 3.0])
        assert abs(d.sd - 1.0) < 1e-12

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            descriptives([])


class TestWilcoxon:
    def test_three_values_below(self):
        r = wilcoxon_one_sample([0.1, 0.2, 0.3], 1.0, alpha=0.05)
        assert r.statistic == 0.0
        assert r.p_value == 0.25
        assert not r.reject
        assert r.method == "exact"

    def test_six_values_below(self):
        r = wilcoxon_one_sample([0.11, 0.22, 0.31, 0.45, 0.52, 0.61], 1.0, alpha=0.05)
        assert r.statistic == 0.0
        assert abs(r.p_value - 2 / 64) < 1e-15
        assert r.reject

    def test_all_equal_median_is_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            wilcoxon_one_sample([0.5, 0.5, 0.5], 0.5)

    def test_zero_differences_dropped(self):
        r = wilcoxon_one_sample([1.0, 0.9, 1.1, 0.5], 1.0)
        assert r.n_effective == 3

    def test_empty_values(self):
        with pytest.raises(EmptyInputError):
            wilcoxon_one_sample([], 0.5)

    def test_reject_consistent_with_p(self):
        r = wilcoxon_one_sample([0.1, 0.2, 0.3, 0.6, 0.7], 0.5, alpha=0.5)
        assert r.reject == (r.p_value < 0.5)

    def test_exact_matches_enumeration_with_ties(self):
        rng = random.Random(5)
        for n in range(1, 13):
            for _ in range(4):
                values = [round(rng.uniform(0, 1), 1) for _ in range(n)]
                diffs = [v - 0.5 for v in values if abs(v - 0.5) > 1e-12]
                if not diffs:
                    continue
                r = wilcoxon_one_sample(values, 0.5)
                assert r.method == "exact"
                assert abs(r.p_value - enumerate_two_sided_p(diffs)) < 1e-12

    def test_normal_approx_close_to_exact_at_n20(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            values = rng.uniform(0, 1, size=20)
            exact = wilcoxon_one_sample(values, 0.5, method="exact")
            approx = wilcoxon_one_sample(values, 0.5, method="normal_approx")
            assert abs(exact.p_value - approx.p_value) <= 0.02

    def test_large_sample_uses_normal_approx(self):
        rng = np.random.default_rng(3)
        r = wilcoxon_one_sample(rng.uniform(0, 1, size=40), 0.5)
        assert r.method == "normal_approx"

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            wilcoxon_one_sample([0.1], 0.5, method="bayes")


class TestKsNormality:
    def test_constant_sample_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            ks_normality([1.0, 1.0, 1.0, 1.0])

    def test_too_small_sample(self):
        with pytest.raises(DegenerateSampleError):
            ks_normality([1.0, 2.0])

    def test_plotting_position_quantiles_not_rejected(self):
        n = 8
        values = [special.ndtri((i - 0.5) / n) for i in range(1, n + 1)]
        # independent D evaluation at the jump points
        mean = sum(values) / n
        sd = math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))
        d_direct = 0.0
        for i, v in enumerate(sorted(values), start=1):
            cdf = special.ndtr((v - mean) / sd)
            d_direct = max(d_direct, abs(i / n - cdf), abs(cdf - (i - 1) / n))
        r = ks_normality(values, mode="asymptotic")
        assert abs(r.statistic - d_direct) < 1e-12
        assert r.statistic < 0.12
        assert not r.reject
        mc = ks_normality(values, mode="monte_carlo", rng=1, replicates=2000)
        assert not mc.reject

    def test_two_point_sample_rejected_monte_carlo(self):
        values = [0.0] * 10 + [1.0] * 10
        r = ks_normality(values, mode="monte_carlo", rng=7, replicates=10000)
        assert r.reject
        assert r.p_value < 0.01

    def test_asymptotic_p_is_kolmogorov_sf(self):
        rng = np.random.default_rng(2)
        values = rng.normal(size=30)
        r = ks_normality(values, mode="asymptotic")
        assert abs(r.p_value - special.kolmogorov(math.sqrt(30) * r.statistic)) < 1e-15

    def test_monte_carlo_reproducible_with_seed(self):
        values = list(np.random.default_rng(4).normal(size=15))
        a = ks_normality(values, mode="monte_carlo", rng=123, replicates=500)
        b = ks_normality(values, mode="monte_carlo", rng=123, replicates=500)
        assert a.p_value == b.p_value

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            ks_normality([0.1, 0.2, 0.3], mode="bootstrap")


def test_ks_monte_carlo_rejection_rate_near_alpha():
    # calibration on true-normal data: rate should sit near 0.05
    rng = np.random.default_rng(20)
    trials = 1000
    rejections = 0
    for _ in range(trials):
        sample = rng.standard_normal(25)
        mc_seed = int(rng.integers(0, 2**32))
        r = ks_normality(sample, alpha=0.05, mode="monte_carlo", rng=mc_seed, replicates=400)
        rejections += int(r.reject)
    rate = rejections / trials
    assert 0.02 <= rate <= 0.09
