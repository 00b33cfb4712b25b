import math

import numpy as np
import pytest

from fusetree.data import Covariate
from fusetree.data import Dataset
from fusetree.data import Schema
from fusetree.error import ConfigError
from fusetree.fusion import Grouping
from fusetree.fusion import shear
from fusetree.inference import BbcConfig
from fusetree.inference import BbcReport
from fusetree.inference import GroupSummary
from fusetree.inference import Replicate
from fusetree.inference import bootstrapBiasCorrect
from fusetree.inference import confidenceIntervals
from fusetree.inference import groupSummaries
from fusetree.inference import recordGroups
from fusetree.split import SplitSpec
from fusetree.tree import Tree
from fusetree.tree import TreeNode

@pytest.fixture
def halves() -> Grouping:
    return Grouping(leafToGroup = {4: 1, 5: 1, 6: 2, 7: 2})

class TestConfig:
    def test_rejects_bad_direction(self):
        with pytest.raises(ConfigError):
            BbcConfig(direction = "multiply")

    def test_rejects_negative_replicates(self):
        with pytest.raises(ConfigError):
            BbcConfig(replicates = -1)

    def test_rejects_bad_level(self):
        with pytest.raises(ConfigError):
            BbcConfig(level = 1.0)

class TestGroupSummaries:
    def test_identical_groups(self):
        schema = Schema(covariates = [Covariate(name = "flag", kind = Covariate.Kind.Binary)])

        data = Dataset(
            schema = schema,
            times = np.tile(np.arange(1.0, 10.0), 2),
            statuses = np.ones(18, dtype = int),
            covariates = np.repeat([0.0, 1.0], 9)
        )

        tree = Tree(nodes = [
            TreeNode(id = 1, depth = 0, size = 18, events = 18, split = SplitSpec(variable = 0, cutoff = 0.5), statistic = 0.0),
            TreeNode(id = 2, depth = 1, size = 9, events = 9, group = 1),
            TreeNode(id = 3, depth = 1, size = 9, events = 9, group = 2),
        ], schema = schema)

        summary = groupSummaries(data = data, tree = tree)

        assert summary.beta[1] == pytest.approx(0.0, abs = 1e-8)
        assert summary.p[1] == pytest.approx(1.0, abs = 1e-6)
        assert summary.medians == [5.0, 5.0]

    def test_halves(self, fourLeafTree, cutoffData, halves):
        summary = groupSummaries(data = cutoffData, tree = fourLeafTree, grouping = halves)

        assert len(summary) == 2
        assert summary.sizes.sum() == len(cutoffData)
        assert summary.events.sum() == cutoffData.eventCount
        assert summary.beta[0] == 0.0
        assert summary.beta[1] == pytest.approx(2.0, abs = 0.5)
        assert summary.p[1] < 1e-6

    def test_bounds_contain_estimate(self, fourLeafTree, cutoffData, halves):
        summary = groupSummaries(data = cutoffData, tree = fourLeafTree, grouping = halves, level = 0.9)

        lower, upper = summary.bounds

        assert lower[1] < summary.beta[1] < upper[1]
        assert upper[1] - lower[1] == pytest.approx(2.0 * 1.6448536 * summary.se[1], rel = 1e-6)

    def test_dict_round_trip(self, fourLeafTree, cutoffData, halves):
        summary = groupSummaries(data = cutoffData, tree = fourLeafTree, grouping = halves)

        loaded = GroupSummary.makeFromDict(data = summary.toDict())

        assert np.allclose(loaded.beta, summary.beta)
        assert list(loaded.sizes) == list(summary.sizes)
        assert loaded.level == summary.level

    def test_invalid_dict(self):
        with pytest.raises(ConfigError):
            GroupSummary.makeFromDict(data = {"groups": [{"group": 1}]})

    def test_record_groups_from_sheared_tree(self, fourLeafTree, cutoffData, halves):
        sheared = shear(tree = fourLeafTree, grouping = halves)

        assert np.array_equal(
            recordGroups(data = cutoffData, tree = sheared),
            recordGroups(data = cutoffData, tree = fourLeafTree, grouping = halves)
        )

class TestReplicate:
    def test_weights_carry_differences(self):
        replicate = Replicate(table = [[3.0, 1.0], [0.0, 2.0]], betaDifferences = [0.0, 0.4], sdDifferences = [0.0, 2.0])

        assert replicate.weights.tolist() == [[0.75, 0.25], [0.0, 1.0]]
        assert list(replicate.betaBias) == pytest.approx([0.1, 0.4])
        assert list(replicate.sdBias) == pytest.approx([0.5, 2.0])
        assert replicate.groupCount == 2

class TestBbcReport:
    def summary(self) -> GroupSummary:
        return GroupSummary(sizes = [50, 50], events = [30, 40], beta = [0.0, 1.0], se = [float("nan"), 0.2], medians = [None, 2.0])

    def test_reference_stays_put(self):
        replicate = Replicate(table = [[3.0, 1.0], [0.0, 2.0]], betaDifferences = [0.0, 0.4], sdDifferences = [0.0, 2.0])

        report = BbcReport(summary = self.summary(), size = 100, replicates = [replicate], draws = 1)

        assert report.betaBias[0] == 0.0
        assert report.beta[0] == 0.0
        assert report.beta[1] == pytest.approx(1.4)
        assert report.rawSd[1] == pytest.approx(2.0)
        assert report.sd[1] == pytest.approx(4.0)
        assert report.se[1] == pytest.approx(0.4)

    def test_subtract(self):
        replicate = Replicate(table = [[1.0, 0.0], [0.0, 1.0]], betaDifferences = [0.0, 0.4], sdDifferences = [0.0, 0.0])

        report = BbcReport(summary = self.summary(), size = 100, replicates = [replicate], draws = 1, direction = BbcConfig.Direction.Subtract)

        assert report.beta[1] == pytest.approx(0.6)

    def test_corrected_summary(self):
        replicate = Replicate(table = [[1.0, 0.0], [0.0, 1.0]], betaDifferences = [0.0, 0.4], sdDifferences = [0.0, 0.0])

        corrected = BbcReport(summary = self.summary(), size = 100, replicates = [replicate], draws = 1).corrected()

        assert corrected.corrected
        assert corrected.beta[1] == pytest.approx(1.4)
        assert corrected.toRows()[1]["corrected"] == 1

class TestBootstrap:
    def test_single_group_is_untouched(self, fourLeafTree, cutoffData, smallPipeline):
        report = bootstrapBiasCorrect(
            data = cutoffData,
            tree = fourLeafTree,
            grouping = Grouping.single(tree = fourLeafTree),
            config = smallPipeline,
            replicates = 5
        )

        assert report.draws == 0
        assert report.replicates == []
        assert list(report.beta) == [0.0]

    def test_replicates(self, fourLeafTree, cutoffData, smallPipeline, halves):
        report = bootstrapBiasCorrect(data = cutoffData, tree = fourLeafTree, grouping = halves, config = smallPipeline, replicates = 3, seed = 1)

        assert 0 < len(report.replicates) <= 3
        assert report.draws <= 9
        assert report.betaBias[0] == 0.0
        assert all(replicate.table.sum() == len(cutoffData) for replicate in report.replicates)
        assert all(count >= 2 for count in report.groupCounts)

    def test_directions_mirror(self, fourLeafTree, cutoffData, smallPipeline, halves):
        args = dict(data = cutoffData, tree = fourLeafTree, grouping = halves, config = smallPipeline, replicates = 3, seed = 2)

        added = bootstrapBiasCorrect(direction = BbcConfig.Direction.Add, **args)
        subtracted = bootstrapBiasCorrect(direction = BbcConfig.Direction.Subtract, **args)

        assert np.allclose(added.beta - added.summary.beta, -(subtracted.beta - subtracted.summary.beta))

    def test_reproducible(self, fourLeafTree, cutoffData, smallPipeline, halves):
        args = dict(data = cutoffData, tree = fourLeafTree, grouping = halves, config = smallPipeline, replicates = 3, seed = 4)

        assert np.allclose(bootstrapBiasCorrect(**args).betaBias, bootstrapBiasCorrect(**args).betaBias)

class TestConfidenceIntervals:
    def test_summary_intervals(self):
        summary = GroupSummary(sizes = [10, 10], events = [5, 5], beta = [0.0, 1.0], se = [float("nan"), 0.5], medians = [None, None])

        intervals = confidenceIntervals(report = summary, level = 0.95)

        assert intervals[1]["lower"] == pytest.approx(1.0 - 1.959964 * 0.5, rel = 1e-6)
        assert intervals[1]["hr_upper"] == pytest.approx(math.exp(1.0 + 1.959964 * 0.5), rel = 1e-6)
        assert intervals[1]["hr"] == pytest.approx(math.e)
