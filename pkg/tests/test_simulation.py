import math

import numpy as np
import pytest

import rrdp.simulation as simulation
from _oracles import binomial_pmf
from rrdp import (
    DegenerateMechanism,
    DesignMatrix,
    PrivacyParams,
    SimulationConfig,
    compare_mechanisms,
    estimator_variance,
    monte_carlo,
    optimal_relaxed,
    optimal_strict,
    simulate_counts,
    simulate_survey,
)
from rrdp.estimator import mle_coefficients
from rrdp.simulation import coin_stream, uniform_block

E05 = math.exp(0.5)
ITEM1_CORNER = DesignMatrix((E05 + 0.1) / (E05 + 1), (E05 + 0.1) / (E05 + 1))


def test_config_validation():
    with pytest.raises(ValueError):
        SimulationConfig(1.5, 10)
    with pytest.raises(ValueError):
        SimulationConfig(0.5, 0)
    with pytest.raises(ValueError):
        SimulationConfig(0.5, 10, trials=0)
    with pytest.raises(ValueError):
        SimulationConfig(0.5, 10, seed=-1)
    SimulationConfig(0.5, 10, seed=2**64 - 1)


class TestStreams:
    def test_random_access(self):
        whole = uniform_block(7, (1, 0), 0, 100)
        for start in (0, 1, 3, 4, 5, 63):
            np.testing.assert_array_equal(uniform_block(7, (1, 0), start, 20), whole[start : start + 20])

    def test_streams_differ(self):
        assert not np.array_equal(uniform_block(7, (0,), 0, 10), uniform_block(7, (1, 0), 0, 10))
        assert not np.array_equal(uniform_block(7, (1, 0), 0, 10), uniform_block(7, (1, 1), 0, 10))
        assert not np.array_equal(uniform_block(7, (0,), 0, 10), uniform_block(8, (0,), 0, 10))


class TestSimulateSurvey:
    def test_no_signal(self):
        for seed in range(5):
            assert simulate_survey(DesignMatrix(1, 1), SimulationConfig(0.0, 37, seed=seed)).count_ones == 0

    def test_always_flip(self):
        assert simulate_survey(DesignMatrix(0, 0), SimulationConfig(1.0, 10, seed=3)).count_ones == 0

    def test_large_survey_frequency(self):
        n = 10**6
        N = simulate_survey(DesignMatrix(0.75, 0.75), SimulationConfig(0.5, n, seed=12)).count_ones
        assert abs(N / n - 0.5) <= 4 * math.sqrt(0.25 / n)

    def test_matches_batched_counts(self):
        P = DesignMatrix(0.7, 0.8)
        cfg = SimulationConfig(0.4, 13, trials=50, seed=99)
        counts = simulate_counts(P, cfg)
        assert [simulate_survey(P, cfg, k).count_ones for k in range(50)] == counts.tolist()

    def test_tally_follows_binomial_law(self):
        P = DesignMatrix(0.75, 0.65)
        cfg = SimulationConfig(0.3, 40, trials=10**4, seed=2718)
        counts = simulate_counts(P, cfg)
        q = 0.3 * 0.65 + 0.7 * 0.25
        pmf = np.array(binomial_pmf(40, q))
        # Ten bins of roughly equal probability mass.
        edges = np.searchsorted(np.cumsum(pmf), np.linspace(0.1, 0.9, 9))
        bins = np.split(np.arange(41), edges + 1)
        for b in bins:
            if len(b) == 0:
                continue
            p = pmf[b].sum()
            observed = np.isin(counts, b).mean()
            se = math.sqrt(p * (1 - p) / cfg.trials)
            assert abs(observed - p) <= 5 * se


class TestDeterminism:
    def test_chunking_and_threads(self, monkeypatch):
        P = DesignMatrix(0.9, 0.6)
        cfg = SimulationConfig(0.35, 7, trials=5000, seed=31)
        reference = simulate_counts(P, cfg)
        monkeypatch.setattr(simulation, "_CHUNK", 61)
        np.testing.assert_array_equal(simulate_counts(P, cfg), reference)
        np.testing.assert_array_equal(simulate_counts(P, cfg, workers=4), reference)

    def test_reports_identical(self):
        P = DesignMatrix(0.8, 0.7)
        cfg = SimulationConfig(0.2, 25, trials=2000, seed=5)
        assert monte_carlo(P, cfg) == monte_carlo(P, cfg, workers=3)


class TestMonteCarlo:
    def test_direct_questioning(self):
        rep = monte_carlo(DesignMatrix(1, 1), SimulationConfig(0.3, 100, 10**4, seed=101))
        assert abs(rep.z_score_bias) <= 4
        assert rep.theoretical_variance == pytest.approx(0.0021)
        assert rep.empirical_variance == pytest.approx(0.0021, rel=0.10)

    def test_strict_optimum(self):
        P = optimal_strict(1.0)
        rep = monte_carlo(P, SimulationConfig(0.25, 500, 10**4, seed=102))
        assert abs(rep.z_score_bias) <= 4
        assert rep.empirical_variance == pytest.approx(estimator_variance(P, 0.25, 500), rel=0.10)

    def test_zero_signal_mean(self):
        rep = monte_carlo(DesignMatrix(1, 1), SimulationConfig(0.0, 100, 10, seed=7))
        assert rep.mean_estimate == 0.0 and rep.z_score_bias == 0.0

    def test_degenerate(self):
        with pytest.raises(DegenerateMechanism):
            monte_carlo(DesignMatrix(0.4, 0.6), SimulationConfig(0.3, 10, 100))

    def test_needs_two_trials(self):
        with pytest.raises(ValueError):
            monte_carlo(DesignMatrix(1, 1), SimulationConfig(0.3, 10, 1))

    @pytest.mark.parametrize("pi", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize(
        "P",
        [ITEM1_CORNER, DesignMatrix(1.0, 0.1), DesignMatrix(1.0, 0.4), DesignMatrix(1 / 3, 1.0)],
        ids=["item1-corner", "item1-edge", "item2-edge", "item3-edge"],
    )
    def test_unbiased_and_variance_band(self, P, pi):
        rep = monte_carlo(P, SimulationConfig(pi, 100, 10**4, seed=404))
        assert abs(rep.z_score_bias) <= 4
        assert 0.9 <= rep.empirical_variance / rep.theoretical_variance <= 1.1


class TestCompare:
    def test_same_mechanism_twice(self):
        P = DesignMatrix(0.8, 0.9)
        a, b = compare_mechanisms([P, P], SimulationConfig(0.3, 20, 500, seed=1))
        assert a.theoretical_variance == b.theoretical_variance

    def test_first_entry_matches_monte_carlo(self):
        P = DesignMatrix(0.8, 0.9)
        cfg = SimulationConfig(0.3, 20, 500, seed=1)
        assert compare_mechanisms([P, DesignMatrix(1, 1)], cfg)[0] == monte_carlo(P, cfg)

    def test_shared_truths(self):
        # With identity mechanisms the reports are the truths themselves.
        cfg = SimulationConfig(0.4, 30, 200, seed=77)
        a = simulate_counts(DesignMatrix(1, 1), cfg, coin_stream(0))
        b = simulate_counts(DesignMatrix(1, 1), cfg, coin_stream(1))
        np.testing.assert_array_equal(a, b)

    def test_rejects_degenerate_entry(self):
        with pytest.raises(DegenerateMechanism):
            compare_mechanisms([DesignMatrix(1, 1), DesignMatrix(0.5, 0.5)], SimulationConfig(0.3, 5, 10))

    @pytest.mark.slow
    def test_item1_ordering(self):
        mechanisms = [ITEM1_CORNER, DesignMatrix(1.0, 0.1)]
        cfg = SimulationConfig(0.25, 1, 4 * 10**6, seed=2016)
        reports = compare_mechanisms(mechanisms, cfg)
        assert reports[0].empirical_variance < reports[1].empirical_variance
        # Paired standard error of the difference of sample variances.
        est = []
        for k, P in enumerate(mechanisms):
            a, b = mle_coefficients(P, 1)
            est.append(a + b * simulate_counts(P, cfg, coin_stream(k)))
        d = (est[0] - est[0].mean()) ** 2 - (est[1] - est[1].mean()) ** 2
        se = d.std(ddof=1) / math.sqrt(cfg.trials)
        assert reports[1].empirical_variance - reports[0].empirical_variance > 4 * se

    @pytest.mark.slow
    def test_item3_ordering(self):
        priv = PrivacyParams(0.5, 1 / 3)
        best = optimal_relaxed(priv, 0.9).mechanism
        c = priv.corner_value
        mechanisms = [best, DesignMatrix(c, c), DesignMatrix(1.0, 1 / 3)]
        reports = compare_mechanisms(mechanisms, SimulationConfig(0.9, 1, 10**6, seed=2017))
        v = [r.empirical_variance for r in reports]
        assert v[0] < v[1] < v[2]
        for r in reports:
            assert r.empirical_variance == pytest.approx(r.theoretical_variance, rel=0.01)
