import math

import numpy as np
import pandas
import pytest

from fusetree.bench import BenchConfig
from fusetree.bench import BenchMetrics
from fusetree.bench import BiasMetrics
from fusetree.bench import Comparison
from fusetree.bench import ReplicateResult
from fusetree.bench import calibrateCensoring
from fusetree.bench import cutoffModel
from fusetree.bench import getModel
from fusetree.bench import runComparison
from fusetree.bench import selectionFlags
from fusetree.bench import selectionFrequencies
from fusetree.bench import selectionModel
from fusetree.bench import selectionScenarios
from fusetree.bench import selectionSplits
from fusetree.bench import simulate
from fusetree.bench import usedVariables
from fusetree.cache import getCache
from fusetree.error import ConfigError

class TestModels:
    def test_comparison_tags(self):
        assert sorted(Comparison) == list("ABCDEFG")
        assert getModel(tag = "c") is Comparison["C"]

    def test_unknown_tag(self):
        with pytest.raises(ConfigError):
            getModel(tag = "Z")

    def test_hazards(self):
        z = np.array([
            [1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 0.9, 0.0, 0.0, 0.0, 0.0, 0.0],
        ])

        assert list(Comparison["A"].hazards(covariates = z)) == pytest.approx([math.exp(-1.0)] * 3)
        assert list(Comparison["C"].hazards(covariates = z)) == pytest.approx([math.exp(2.0), math.exp(-1.0), math.exp(-1.0)])
        assert list(Comparison["B"].hazards(covariates = z)) == pytest.approx([math.exp(2.0), math.exp(1.0), math.exp(0.0)])

    def test_non_proportional_model_has_no_hazard(self):
        with pytest.raises(ValueError):
            Comparison["G"].hazards(covariates = np.zeros((1, 7)))

    def test_draws_follow_schema(self):
        z = Comparison["A"].covariates(n = 500, generator = np.random.default_rng(0))

        assert z.shape == (500, 7)
        assert set(np.unique(z[:, 0])) <= {0.0, 1.0}
        assert set(np.unique(z[:, 2])) <= {0.0, 1.0, 2.0, 3.0, 4.0}
        assert np.all((z[:, 1] >= 0.0) & (z[:, 1] <= 1.0))

    def test_cutoff_model(self):
        model = cutoffModel(beta0 = 1.0, beta1 = -1.0)

        assert list(model.hazards(covariates = np.array([[0.4], [0.6]]))) == pytest.approx([1.0, math.e])
        assert model.important == frozenset({"z"})
        assert cutoffModel(beta1 = 0.0).important == frozenset()

    def test_selection_model(self):
        model = selectionModel(betas = [1.0, 0.0, 0.0, 0.0, -1.0])

        assert model.important == frozenset({"z1", "z5"})

        z = np.array([[1.0, 0.3, 0.9, 0.9, 2.0]])

        assert list(selectionSplits(z = z)[0]) == [1.0, 1.0, 0.0, 0.0, 1.0]
        assert model.hazards(covariates = z)[0] == pytest.approx(math.exp(-1.0))

    def test_selection_model_needs_five_effects(self):
        with pytest.raises(ValueError):
            selectionModel(betas = [1.0, 2.0])

class TestCensoring:
    def test_hits_target(self):
        model = Comparison["B"]

        rate = calibrateCensoring(model = model, target = 0.5, size = 20000, useCache = False)

        data = simulate(model = model, n = 20000, rate = rate, seed = 1)

        assert 1.0 - data.statuses.mean() == pytest.approx(0.5, abs = 0.02)

    def test_no_censoring(self):
        assert calibrateCensoring(model = Comparison["A"], target = 0.0) == 0.0

        data = simulate(model = Comparison["A"], n = 50, rate = 0.0, seed = 0)

        assert data.statuses.sum() == 50

    def test_bad_target(self):
        with pytest.raises(ConfigError):
            calibrateCensoring(model = Comparison["A"], target = 1.0)

    def test_rate_is_cached(self):
        rate = calibrateCensoring(model = Comparison["A"], target = 0.3, size = 5000)

        assert len(getCache(namespace = "censoring").keys()) == 1
        assert calibrateCensoring(model = Comparison["A"], target = 0.3, size = 5000) == rate

class TestSimulate:
    def test_reproducible(self):
        first = simulate(model = Comparison["C"], n = 100, rate = 0.5, seed = 3)
        second = simulate(model = Comparison["C"], n = 100, rate = 0.5, seed = 3)

        assert np.array_equal(first.times, second.times)
        assert np.array_equal(first.covariates, second.covariates)

    def test_labels_differ(self):
        train = simulate(model = Comparison["C"], n = 100, rate = 0.5, seed = 3, label = "train")
        test = simulate(model = Comparison["C"], n = 100, rate = 0.5, seed = 3, label = "test")

        assert not np.array_equal(train.times, test.times)

    def test_accelerated_model(self):
        data = simulate(model = Comparison["G"], n = 200, rate = 0.2, seed = 0)

        assert np.all(data.times > 0.0)
        assert data.schema.names == ["z1", "z2", "z3", "z4", "z5", "z6", "z7"]

class TestMetrics:
    def test_selection_flags(self):
        assert selectionFlags(used = ["z1"], important = ["z1", "z2"]) == (True, False, False)
        assert selectionFlags(used = ["z1", "z2", "z5"], important = ["z1", "z2"]) == (False, True, False)
        assert selectionFlags(used = ["z2", "z1"], important = ["z1", "z2"]) == (True, True, True)
        assert selectionFlags(used = [], important = []) == (True, True, True)

    def test_used_variables(self, fourLeafTree):
        assert usedVariables(tree = fourLeafTree) == frozenset({"z"})

    def test_bench_metrics_skip_failures(self):
        results = [
            ReplicateResult(model = "A", replicate = 0, size = 1, leaves = 3, important = [], deviance = 10.0, concordance = 0.5),
            ReplicateResult(model = "A", replicate = 1, size = 2, leaves = 5, used = ["z3"], important = [], deviance = 12.0, concordance = math.nan),
            ReplicateResult(model = "A", replicate = 2, important = [], error = "singular"),
        ]

        metrics = BenchMetrics(model = "A", results = results)

        assert metrics.replicates == 2
        assert metrics.failures == 1
        assert metrics.sizeMean == pytest.approx(1.5)
        assert metrics.devianceSd == pytest.approx(math.sqrt(2.0))
        assert metrics.concordanceMean == pytest.approx(0.5)
        assert metrics.accurate == pytest.approx(0.5)

        assert results[2].toRow()["error"] == "singular"

    def test_bias_metrics(self):
        frame = pandas.DataFrame({
            "truth_beta": [0.0, 0.0, 0.0],
            "raw_beta": [1.0, 2.0, 3.0],
            "corrected_beta": [0.0, 0.0, 0.0],
            "truth_sd": [1.0, 1.0, 1.0],
            "raw_sd": [1.0, 1.0, 1.0],
            "corrected_sd": [1.0, 1.0, 1.0],
        })

        beta, sd = BiasMetrics(model = "C", frame = frame).toRows()

        assert beta["estimate"] == "beta"
        assert beta["raw_bias"] == pytest.approx(2.0)
        assert beta["raw_mse"] == pytest.approx(14.0 / 3.0)
        assert beta["raw_mad"] == pytest.approx(1.0)
        assert beta["corrected_bias"] == 0.0
        assert sd["raw_mse"] == 0.0

    def test_bias_metrics_empty(self):
        frame = pandas.DataFrame(columns = ["truth_beta", "raw_beta", "corrected_beta", "truth_sd", "raw_sd", "corrected_sd"])

        rows = BiasMetrics(model = "A", frame = frame).toRows()

        assert math.isnan(rows[0]["raw_bias"])

class TestConfig:
    def test_models(self):
        assert BenchConfig(models = "a, c").models == ["A", "C"]

    def test_unknown_model(self):
        with pytest.raises(ConfigError):
            BenchConfig(models = "A,Q")

    def test_unknown_study(self):
        with pytest.raises(ConfigError):
            BenchConfig(study = "power")

    def test_small_size(self):
        with pytest.raises(ConfigError):
            BenchConfig(size = 5)

    def test_bad_censoring(self):
        with pytest.raises(ConfigError):
            BenchConfig(censoring = 1.0)

class TestHarness:
    def test_scenarios(self):
        scenarios = selectionScenarios()

        assert len(scenarios) == 18
        assert scenarios[0] == ("null", 0.0, [0.0] * 5)
        assert scenarios[-1][0] == "balanced"

    def test_frequencies(self):
        selections = pandas.DataFrame({
            "scenario": ["null"] * 4,
            "effect": [0.0] * 4,
            "method": ["gs", "gs", "iv", "iv"],
            "replicate": [0, 1, 0, 1],
            "variable": ["z5", "z5", "z1", ""],
        })

        frequencies = selectionFrequencies(selections = selections, replicates = 2).set_index("method")

        assert list(frequencies.columns[-5:]) == ["z1", "z2", "z3", "z4", "z5"]
        assert frequencies.loc["gs", "z5"] == 1.0
        assert frequencies.loc["iv", "z1"] == 0.5
        assert frequencies.loc["iv", "z5"] == 0.0

    def test_tiny_comparison(self, smallPipeline):
        config = BenchConfig(models = "A", size = 150, testSize = 100, replicates = 2)

        summary, raw = runComparison(config = config, pipeline = smallPipeline, seed = 0)

        assert list(summary["model"]) == ["A"]
        assert len(raw) == 2
        assert summary["replicates"].iloc[0] + summary["failures"].iloc[0] == 2
