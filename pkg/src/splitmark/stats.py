"""Corpus-level descriptive and nonparametric statistics.

The one-sample Wilcoxon signed-rank test is exact for small samples: the
null distribution of W+ over all 2^n equally likely sign assignments is
built by dynamic programming over the (doubled, hence integral) ranks,
which is equivalent to full sign enumeration.  Larger samples fall back
to the normal approximation with tie-corrected variance and a 0.5
continuity correction.

Normality is checked with a one-sample Kolmogorov-Smirnov statistic
against a normal with estimated mean/sd.  Because parameters are
estimated, the asymptotic Kolmogorov p-value is conservative; the
monte_carlo mode re-estimates parameters per replicate and gives a
calibrated (Lilliefors-style) p-value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import special, stats as sp_stats

from .errors import DegenerateSampleError, EmptyInputError

# Differences this close to the hypothesized median are treated as zero
# and dropped before ranking.
ZERO_TOL = 1e-12

# Largest n for which the exact signed-rank distribution is used
# (2^20 sign patterns; keeps 20-painting subrange tests exact).
EXACT_MAX_N = 20

DEFAULT_KS_REPLICATES = 2000


@dataclass(frozen=True)
class Descriptives:
    n: int
    mean: float
    sd: float
    minimum: float
    maximum: float
    count_at_0: int
    count_at_1: int


@dataclass(frozen=True)
class TestReport:
    test: str
    n_effective: int
    statistic: float
    p_value: float
    alpha: float
    reject: bool
    method: str


def descriptives(values: Sequence[float] | Iterable[float]) -> Descriptives:
    """Sample mean/sd (n-1 denominator), extremes, and exact counts at 0 and 1."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise EmptyInputError("descriptives needs at least one value")
    sd = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return Descriptives(
        n=int(arr.size),
        mean=float(arr.mean()),
        sd=sd,
        minimum=float(arr.min()),
        maximum=float(arr.max()),
        count_at_0=int(np.sum(arr == 0.0)),
        count_at_1=int(np.sum(arr == 1.0)),
    )


def _signed_rank_counts(doubled_ranks: np.ndarray) -> np.ndarray:
    """Count sign assignments per doubled-W+ value.

    counts[s] is the number of the 2^n sign patterns whose positive-rank
    sum (doubled) equals s.  Average ranks are half-integers, so doubling
    keeps the support integral and the convolution exact.
    """
    total = int(doubled_ranks.sum())
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for dr in doubled_ranks:
        dr = int(dr)
        shifted = np.zeros_like(counts)
        shifted[dr:] = counts[: total + 1 - dr]
        counts += shifted
    return counts


def wilcoxon_one_sample(
    values: Sequence[float],
    hypothesized_median: float,
    alpha: float = 0.05,
    method: str = "auto",
) -> TestReport:
    """Two-sided one-sample Wilcoxon signed-rank test.

    Differences equal to the hypothesized median (within ZERO_TOL) are
    dropped; absolute differences are ranked with average ranks on ties;
    the statistic is W+, the sum of positive-sign ranks.  With
    method="auto" the p-value is exact for n_effective <= EXACT_MAX_N and
    a continuity-corrected normal approximation above that; "exact" and
    "normal_approx" force one path.

    Raises DegenerateSampleError when every value equals the median.
    """
    if method not in ("auto", "exact", "normal_approx"):
        raise ValueError(f"unknown method {method!r}")
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise EmptyInputError("wilcoxon needs at least one value")
    diffs = arr - hypothesized_median
    diffs = diffs[np.abs(diffs) > ZERO_TOL]
    n = int(diffs.size)
    if n == 0:
        raise DegenerateSampleError(
            f"all values equal the hypothesized median {hypothesized_median}"
        )

    ranks = sp_stats.rankdata(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())

    if method == "exact" or (method == "auto" and n <= EXACT_MAX_N):
        doubled = np.rint(2.0 * ranks).astype(np.int64)
        counts = _signed_rank_counts(doubled)
        w2 = int(round(2.0 * w_plus))
        total = float(2**n)
        p_low = float(counts[: w2 + 1].sum()) / total
        p_high = float(counts[w2:].sum()) / total
        p = min(1.0, 2.0 * min(p_low, p_high))
        used = "exact"
    else:
        mean = n * (n + 1) / 4.0
        _, tie_counts = np.unique(ranks, return_counts=True)
        variance = n * (n + 1) * (2 * n + 1) / 24.0 - float(
            ((tie_counts**3 - tie_counts) / 48.0).sum()
        )
        sd = math.sqrt(variance)
        d = w_plus - mean
        if d > 0:
            z = (d - 0.5) / sd
        elif d < 0:
            z = (d + 0.5) / sd
        else:
            z = 0.0
        p = min(1.0, 2.0 * float(special.ndtr(-abs(z))))
        used = "normal_approx"

    return TestReport(
        test="wilcoxon_one_sample",
        n_effective=n,
        statistic=w_plus,
        p_value=p,
        alpha=alpha,
        reject=p < alpha,
        method=used,
    )


def _ks_statistic(sorted_values: np.ndarray, mean: float, sd: float) -> float:
    n = sorted_values.size
    cdf = special.ndtr((sorted_values - mean) / sd)
    steps = np.arange(n + 1) / n
    d_plus = float(np.max(steps[1:] - cdf))
    d_minus = float(np.max(cdf - steps[:-1]))
    return max(d_plus, d_minus)


def ks_normality(
    values: Sequence[float],
    alpha: float = 0.05,
    mode: str = "asymptotic",
    rng: np.random.Generator | int | None = None,
    replicates: int = DEFAULT_KS_REPLICATES,
) -> TestReport:
    """One-sample KS test against a normal with sample mean and sd.

    mode="asymptotic" uses the Kolmogorov limiting distribution (ignores
    that the parameters were estimated, hence conservative);
    mode="monte_carlo" simulates the null with per-replicate re-estimation.
    Pass a seeded generator (or seed) for reproducible Monte-Carlo p-values.
    """
    if mode not in ("asymptotic", "monte_carlo"):
        raise ValueError(f"unknown mode {mode!r}")
    arr = np.sort(np.asarray(values, dtype=float))
    n = int(arr.size)
    if n < 3:
        raise DegenerateSampleError(f"KS needs at least 3 values, got {n}")
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1))
    if sd <= 0.0:
        raise DegenerateSampleError("sample is constant; normality is undecidable")
    d_obs = _ks_statistic(arr, mean, sd)

    if mode == "asymptotic":
        p = float(special.kolmogorov(math.sqrt(n) * d_obs))
    else:
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        draws = np.sort(rng.standard_normal((replicates, n)), axis=1)
        means = draws.mean(axis=1, keepdims=True)
        sds = draws.std(axis=1, ddof=1, keepdims=True)
        cdf = special.ndtr((draws - means) / sds)
        steps = np.arange(n + 1) / n
        d_plus = (steps[1:] - cdf).max(axis=1)
        d_minus = (cdf - steps[:-1]).max(axis=1)
        d_rep = np.maximum(d_plus, d_minus)
        p = (1.0 + float(np.sum(d_rep >= d_obs - 1e-12))) / (replicates + 1.0)

    return TestReport(
        test="ks_normality",
        n_effective=n,
        statistic=d_obs,
        p_value=p,
        alpha=alpha,
        reject=p < alpha,
        method=mode,
    )
