"""Monte Carlo surveys for checking the estimator's bias and variance.

Every uniform draw is addressed by ``(seed, stream, trial, respondent)``.
Streams are Philox counter-based generators keyed from ``(seed, *stream_tag)``
and the draw for respondent ``r`` of trial ``k`` sits at counter position
``k * n + r``.  Any chunking or thread schedule therefore reproduces the
sequential result bit for bit, and two mechanisms can share the same
truthful population while using independent randomization coins.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from rrdp.estimator import SurveyOutcome, estimator_variance, mle_coefficients
from rrdp.mechanism import DesignMatrix, randomize_array

TRUTH_STREAM = (0,)
_DOUBLES_PER_BLOCK = 4  # Philox-4x64 yields four 64-bit words per counter step
_CHUNK = 1 << 21


def coin_stream(index: int = 0) -> tuple[int, int]:
    """Stream tag for the randomization coins of the ``index``-th mechanism."""
    return (1, index)


def uniform_block(seed: int, stream: tuple[int, ...], start: int, count: int) -> np.ndarray:
    """Uniform [0, 1) draws at positions ``start .. start + count - 1`` of a stream."""
    key = np.random.SeedSequence([seed, *stream]).generate_state(2, dtype=np.uint64)
    bitgen = np.random.Philox(key=key)
    bitgen.advance(start // _DOUBLES_PER_BLOCK)
    gen = np.random.Generator(bitgen)
    skip = start % _DOUBLES_PER_BLOCK
    if skip:
        gen.random(skip)
    return gen.random(count)


@dataclasses.dataclass(frozen=True)
class SimulationConfig:
    pi_true: float
    n: int
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.pi_true <= 1.0):
            raise ValueError(f"pi_true must lie in [0, 1], got {self.pi_true!r}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclasses.dataclass(frozen=True)
class MonteCarloReport:
    mean_estimate: float
    empirical_variance: float
    theoretical_variance: float
    z_score_bias: float
    trials: int


def _reports(P: DesignMatrix, cfg: SimulationConfig, coin: tuple[int, int], start: int, count: int):
    truths = uniform_block(cfg.seed, TRUTH_STREAM, start, count) < cfg.pi_true
    coins = uniform_block(cfg.seed, coin, start, count)
    return randomize_array(P, truths, coins)


def simulate_survey(
    P: DesignMatrix, cfg: SimulationConfig, trial: int = 0, coin: tuple[int, int] = coin_stream(0)
) -> SurveyOutcome:
    """Run one survey of ``cfg.n`` respondents and return the tally of 1-answers."""
    reports = _reports(P, cfg, coin, trial * cfg.n, cfg.n)
    return SurveyOutcome(cfg.n, int(reports.sum()))


def simulate_counts(
    P: DesignMatrix, cfg: SimulationConfig, coin: tuple[int, int] = coin_stream(0), workers: int = 1
) -> np.ndarray:
    """Tally of 1-answers for each of ``cfg.trials`` independent surveys.

    Entry ``k`` equals ``simulate_survey(P, cfg, k).count_ones``.
    """
    n = cfg.n
    per_chunk = max(1, _CHUNK // n)
    bounds = [(a, min(a + per_chunk, cfg.trials)) for a in range(0, cfg.trials, per_chunk)]

    def run(bound):
        a, b = bound
        reports = _reports(P, cfg, coin, a * n, (b - a) * n)
        return reports.reshape(b - a, n).sum(axis=1, dtype=np.int64)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    return np.concatenate(parts)


def summarize_counts(P: DesignMatrix, cfg: SimulationConfig, counts: np.ndarray) -> MonteCarloReport:
    """Reduce per-trial tallies to a :class:`MonteCarloReport`.

    The estimate is affine in the tally, so the moments are computed from
    exact integer sums of ``N`` and ``N**2``; the result does not depend on
    the order of the trials.
    """
    trials = len(counts)
    if trials < 2:
        raise ValueError("at least two trials are needed for a sample variance")
    a, b = mle_coefficients(P, cfg.n)
    counts = np.asarray(counts, dtype=np.int64)
    s1 = int(counts.sum())
    s2 = int(np.dot(counts, counts))
    mean_count = Fraction(s1, trials)
    var_count = Fraction(trials * s2 - s1 * s1, trials * (trials - 1))
    mean = a + b * float(mean_count)
    emp_var = b * b * float(var_count)
    theo = estimator_variance(P, cfg.pi_true, cfg.n)
    diff = mean - cfg.pi_true
    if theo > 0:
        z = diff * math.sqrt(trials / theo)
    else:
        z = 0.0 if diff == 0 else math.copysign(math.inf, diff)
    return MonteCarloReport(mean, emp_var, theo, z, trials)


def monte_carlo(P: DesignMatrix, cfg: SimulationConfig, workers: int = 1) -> MonteCarloReport:
    """Run ``cfg.trials`` surveys and compare the MLE's spread with the closed form."""
    mle_coefficients(P, cfg.n)  # fail fast on a degenerate mechanism
    return summarize_counts(P, cfg, simulate_counts(P, cfg, workers=workers))


def compare_mechanisms(
    mechanisms: Sequence[DesignMatrix], cfg: SimulationConfig, workers: int = 1
) -> list[MonteCarloReport]:
    """Monte Carlo reports for several mechanisms on one shared truthful population.

    The truthful answers are common to all mechanisms; each mechanism gets
    its own coin stream, so differences between reports are paired.
    """
    for P in mechanisms:
        mle_coefficients(P, cfg.n)
    return [
        summarize_counts(P, cfg, simulate_counts(P, cfg, coin_stream(k), workers))
        for k, P in enumerate(mechanisms)
    ]
