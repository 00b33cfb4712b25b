import itertools
import math

import numpy as np
import pytest

from fusetree.data import Covariate
from fusetree.data import Dataset
from fusetree.data import Schema
from fusetree.error import ConfigError
from fusetree.error import DegenerateSplitError
from fusetree.split import SplitConfig
from fusetree.split import SplitSpec
from fusetree.split import bestSplit
from fusetree.split import bestSplitForVariable
from fusetree.split import goldenMaximize
from fusetree.split import greedySearch
from fusetree.split import ivSplit
from fusetree.split import splitStatistic
from fusetree.split import sssSearch
from fusetree.split import subsetSearch
from fusetree.survival import logrankStatistic

@pytest.fixture
def levelData() -> Dataset:
    """240 records over a four-level nominal covariate"""

    schema = Schema(covariates = [Covariate(name = "grade", kind = Covariate.Kind.Nominal, levels = ["I", "II", "III", "IV"])])

    generator = np.random.default_rng(17)

    codes = generator.integers(0, 4, size = 240)

    eventTimes = generator.exponential(1.0 / np.exp(np.array([0.0, 1.2, 0.1, 1.0])[codes]))
    censorTimes = generator.exponential(3.0, size = 240)

    return Dataset(
        schema = schema,
        times = np.minimum(eventTimes, censorTimes),
        statuses = (eventTimes <= censorTimes).astype(int),
        covariates = codes.reshape(-1, 1)
    )

def admissible(left: np.ndarray, statuses: np.ndarray, config: SplitConfig) -> bool:
    right = ~left

    return (
        (left.sum() >= config.minChildSize) and (right.sum() >= config.minChildSize) and
        (statuses[left].sum() >= config.minChildEvents) and (statuses[right].sum() >= config.minChildEvents)
    )

class TestGolden:
    def test_finds_interior_maximum(self):
        x, fx = goldenMaximize(f = lambda x: -(x - 0.3) ** 2, lower = 0.0, upper = 1.0, tolerance = 1e-8)

        assert x == pytest.approx(0.3, abs = 1e-6)
        assert fx == pytest.approx(0.0, abs = 1e-10)

    def test_monotone_returns_end(self):
        x, _ = goldenMaximize(f = lambda x: x, lower = 0.0, upper = 2.0, tolerance = 1e-6)

        assert x == 2.0

    def test_nan_is_worst(self):
        x, _ = goldenMaximize(f = lambda x: math.nan if x > 0.9 else -(x - 0.6) ** 2, lower = 0.0, upper = 1.0, tolerance = 1e-6)

        assert x == pytest.approx(0.6, abs = 1e-4)

class TestSplitSpec:
    def test_needs_one_rule(self):
        with pytest.raises(ValueError):
            SplitSpec(variable = 0)

        with pytest.raises(ValueError):
            SplitSpec(variable = 0, cutoff = 1.0, subset = [0])

    def test_threshold_sends_equal_left(self):
        assert list(SplitSpec(variable = 0, cutoff = 0.5).goesLeft([0.4, 0.5, 0.6])) == [True, True, False]

    def test_unseen_levels_go_right(self):
        assert list(SplitSpec(variable = 0, subset = [0, 2]).goesLeft([0, 1, 2, 7])) == [True, False, True, False]

    def test_dict_uses_names(self, mixedSchema):
        spec = SplitSpec(variable = 2, subset = [0, 2])

        data = spec.toDict(schema = mixedSchema)

        assert data["var"] == "site"
        assert data["subset"] == ["north", "east"]
        assert SplitSpec.makeFromDict(data = data, schema = mixedSchema) == spec

    def test_dict_unknown_variable(self, mixedSchema):
        with pytest.raises(ConfigError):
            SplitSpec.makeFromDict(data = {"var": "weight", "kind": "threshold", "cutoff": 1.0}, schema = mixedSchema)

    def test_describe(self, mixedSchema):
        assert SplitSpec(variable = 0, cutoff = 50.0).describe(schema = mixedSchema) == "age <= 50"

class TestConfig:
    def test_rejects_bad_method(self):
        with pytest.raises(ConfigError):
            SplitConfig(method = "random")

    def test_rejects_bad_shape(self):
        with pytest.raises(ConfigError):
            SplitConfig(shape = 0.0)

    def test_copy(self):
        config = SplitConfig(shape = 10.0).copy(method = SplitConfig.Method.Greedy)

        assert config.shape == 10.0
        assert config.method == SplitConfig.Method.Greedy

class TestGreedy:
    def test_matches_exhaustive_midpoints(self, cutoffData):
        config = SplitConfig()

        result = greedySearch(node = cutoffData, variable = 0, config = config)

        z = cutoffData.column(0)
        values = np.unique(z)

        best = -np.inf

        for cutoff in (values[:-1] + values[1:]) / 2.0:
            left = z <= cutoff

            if not admissible(left = left, statuses = cutoffData.statuses, config = config):
                continue

            try:
                best = max(best, logrankStatistic(membership = left.astype(float), times = cutoffData.times, statuses = cutoffData.statuses))

            except DegenerateSplitError:
                continue

        assert result.feasible
        assert result.statistic == pytest.approx(best, rel = 1e-10)
        assert result.statistic == pytest.approx(splitStatistic(node = cutoffData, spec = result.spec), rel = 1e-10)

    def test_finds_true_cutoff(self, cutoffData):
        result = greedySearch(node = cutoffData, variable = 0, config = SplitConfig())

        assert result.spec.cutoff == pytest.approx(0.5, abs = 0.1)
        assert result.method == SplitConfig.Method.Greedy

    def test_constant_covariate(self, cutoffData):
        constant = Dataset(
            schema = cutoffData.schema,
            times = cutoffData.times,
            statuses = cutoffData.statuses,
            covariates = np.ones((len(cutoffData), 1))
        )

        assert not greedySearch(node = constant, variable = 0, config = SplitConfig()).feasible

    def test_child_minima(self, cutoffData):
        small = cutoffData.subset(index = np.arange(30))

        assert not greedySearch(node = small, variable = 0, config = SplitConfig(minChildSize = 20)).feasible

class TestSigmoid:
    def test_finds_true_cutoff(self, cutoffData):
        result = sssSearch(node = cutoffData, variable = 0, config = SplitConfig())

        assert result.feasible
        assert result.method == SplitConfig.Method.Sigmoid
        assert result.spec.cutoff == pytest.approx(0.5, abs = 0.1)

    def test_reports_hard_statistic(self, cutoffData):
        result = sssSearch(node = cutoffData, variable = 0, config = SplitConfig())

        assert result.statistic == pytest.approx(splitStatistic(node = cutoffData, spec = result.spec), rel = 1e-10)

    def test_never_beats_exhaustive(self, cutoffData):
        greedy = greedySearch(node = cutoffData, variable = 0, config = SplitConfig())

        for shape in [5.0, 50.0, 5000.0]:
            result = sssSearch(node = cutoffData, variable = 0, config = SplitConfig(shape = shape))

            assert result.statistic <= greedy.statistic * (1.0 + 1e-10)

    def test_few_values_fall_back(self, cutoffData):
        binary = Dataset(
            schema = cutoffData.schema,
            times = cutoffData.times,
            statuses = cutoffData.statuses,
            covariates = (cutoffData.column(0) <= 0.5).astype(float).reshape(-1, 1)
        )

        result = sssSearch(node = binary, variable = 0, config = SplitConfig())

        assert result.method == SplitConfig.Method.Greedy
        assert result.spec.cutoff == pytest.approx(0.5)

    def test_auto_switch(self, cutoffData):
        assert bestSplitForVariable(node = cutoffData, variable = 0, config = SplitConfig()).method == SplitConfig.Method.Sigmoid
        assert bestSplitForVariable(node = cutoffData, variable = 0, config = SplitConfig(switch = 1000)).method == SplitConfig.Method.Greedy
        assert bestSplitForVariable(node = cutoffData, variable = 0, config = SplitConfig(method = SplitConfig.Method.Greedy)).method == SplitConfig.Method.Greedy

class TestSubset:
    def test_matches_brute_force(self, levelData):
        config = SplitConfig(minChildSize = 5, minChildEvents = 1)

        result = subsetSearch(node = levelData, variable = 0, config = config)

        codes = levelData.column(0).astype(int)

        best = -np.inf

        for size in range(1, 4):
            for rest in itertools.combinations([1, 2, 3], size - 1):
                left = np.isin(codes, (0,) + rest)

                if admissible(left = left, statuses = levelData.statuses, config = config):
                    best = max(best, logrankStatistic(membership = left.astype(float), times = levelData.times, statuses = levelData.statuses))

        assert result.statistic == pytest.approx(best, rel = 1e-10)
        assert 0 in result.spec.subset

    def test_groups_similar_levels(self, levelData):
        result = subsetSearch(node = levelData, variable = 0, config = SplitConfig(minChildSize = 5, minChildEvents = 1))

        assert result.spec.subset == frozenset({0, 2})

    def test_many_levels_are_ordered(self, levelData):
        config = SplitConfig(minChildSize = 5, minChildEvents = 1, maxSubsetLevels = 2)

        result = subsetSearch(node = levelData, variable = 0, config = config)

        assert result.feasible
        assert 0 in result.spec.subset
        assert result.statistic == pytest.approx(splitStatistic(node = levelData, spec = result.spec), rel = 1e-10)

    def test_ordered_ties_go_to_the_median(self):
        grade = Covariate(name = "grade", kind = Covariate.Kind.Nominal, levels = ["I", "II", "III", "IV"])
        score = Covariate(name = "score", kind = Covariate.Kind.Continuous)

        # Every level holds the same records, so every cutoff scores zero
        codes = np.repeat(np.arange(4.0), 10)
        times = np.tile(np.arange(1.0, 11.0), 4)
        statuses = np.ones(40, dtype = int)

        config = SplitConfig(minChildSize = 5, minChildEvents = 1, maxSubsetLevels = 2)

        nominal = Dataset(schema = Schema(covariates = [grade]), times = times, statuses = statuses, covariates = codes.reshape(-1, 1))
        ordered = Dataset(schema = Schema(covariates = [score]), times = times, statuses = statuses, covariates = codes.reshape(-1, 1))

        assert subsetSearch(node = nominal, variable = 0, config = config).spec.subset == frozenset({0, 1})
        assert greedySearch(node = ordered, variable = 0, config = config).spec.cutoff == 1.5

class TestBestSplit:
    def test_ignores_noise(self, mixedData):
        result = bestSplit(node = mixedData, config = SplitConfig())

        assert result.feasible
        assert result.variable != 1

    def test_restricted_variables(self, mixedData):
        result = bestSplit(node = mixedData, config = SplitConfig(), variables = [1])

        assert result.variable == 1

    def test_degenerate_statistic_is_nan(self, cutoffData):
        assert math.isnan(splitStatistic(node = cutoffData, spec = SplitSpec(variable = 0, cutoff = 2.0)))

class TestIntersectedValidation:
    def test_resample_sizes(self, mixedData):
        result = ivSplit(node = mixedData, config = SplitConfig(), seed = 3)

        assert result.feasible
        assert result.context is not None
        assert len(result.context.training) == len(mixedData)
        assert len(result.context.validation) == len(mixedData)
        assert set(result.context.validated) <= set(result.context.candidates)

    def test_chooses_best_validated(self, mixedData):
        result = ivSplit(node = mixedData, config = SplitConfig(), seed = 3)

        validated = result.context.validated

        assert validated[result.variable] == max(validated.values())

    def test_reproducible(self, mixedData):
        first = ivSplit(node = mixedData, config = SplitConfig(), seed = 4)
        second = ivSplit(node = mixedData, config = SplitConfig(), seed = 4)

        assert first.spec == second.spec
        assert first.context.training == second.context.training

    def test_small_node_searches_plainly(self, mixedData):
        small = mixedData.subset(index = np.arange(25))

        result = ivSplit(node = small, config = SplitConfig(minChildSize = 5, minChildEvents = 1), seed = 0)

        assert result.context is None

    def test_single_covariate_searches_plainly(self, cutoffData):
        result = ivSplit(node = cutoffData, config = SplitConfig(), seed = 0)

        assert result.context is None
        assert result.feasible
