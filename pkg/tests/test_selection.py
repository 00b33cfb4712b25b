import math

import numpy as np
import pytest

from fusetree.data import stratifiedSplit
from fusetree.error import ConfigError
from fusetree.fusion import FusionConfig
from fusetree.fusion import fusionPath
from fusetree.selection import PipelineConfig
from fusetree.selection import SelectConfig
from fusetree.selection import SelectionReport
from fusetree.selection import growInitial
from fusetree.selection import patternDeviance
from fusetree.selection import select
from fusetree.selection import selectCv
from fusetree.selection import selectIc
from fusetree.selection import selectTestSample

def withSelect(pipeline: PipelineConfig, **changes) -> PipelineConfig:
    return PipelineConfig(
        split = pipeline.split,
        grow = pipeline.grow,
        fusion = pipeline.fusion,
        select = pipeline.select.copy(**changes),
        threads = pipeline.threads
    )

class TestConfig:
    def test_rejects_bad_mode(self):
        with pytest.raises(ConfigError):
            SelectConfig(mode = "loo")

    def test_rejects_one_fold(self):
        with pytest.raises(ConfigError):
            SelectConfig(folds = 1)

    def test_rejects_bad_fraction(self):
        with pytest.raises(ConfigError):
            SelectConfig(testFraction = 0.0)

    def test_jobs(self):
        assert PipelineConfig(threads = 0).jobs == -1
        assert PipelineConfig(threads = 3).jobs == 3

class TestReport:
    def test_criteria(self):
        report = SelectionReport(criterion = "bic", lambdas = [1.0, 0.5, 0.0], groupCounts = [1, 2, 3], deviances = [100.0, 90.0, 88.0], eventCount = 50)

        assert list(report.aic) == pytest.approx([102.0, 94.0, 94.0])
        assert list(report.bic) == pytest.approx([100.0 + math.log(50), 90.0 + 2.0 * math.log(50), 88.0 + 3.0 * math.log(50)])
        assert report.chosen == 1

    def test_ties_take_largest_penalty(self):
        report = SelectionReport(criterion = "aic", lambdas = [1.0, 0.5, 0.0], groupCounts = [1, 2, 3], deviances = [100.0, 90.0, 88.0], eventCount = 50)

        assert report.chosen == 1

    def test_non_finite_never_chosen(self):
        report = SelectionReport(criterion = "test", lambdas = [1.0, 0.0], groupCounts = [1, 2], deviances = [float("nan"), 50.0], eventCount = 10)

        assert report.chosen == 1

    def test_fold_standard_error(self):
        folds = np.array([[10.0, 8.0], [12.0, 9.0], [14.0, 13.0]])

        report = SelectionReport(
            criterion = "cv",
            lambdas = [1.0, 0.0],
            groupCounts = [1, 2],
            deviances = folds.sum(axis = 0),
            eventCount = 30,
            foldDeviances = folds
        )

        assert list(report.foldStandardError) == pytest.approx([math.sqrt(3.0) * 2.0, math.sqrt(3.0) * np.std([8.0, 9.0, 13.0], ddof = 1)])

        rows = report.toRows()

        assert "se" in rows[0]
        assert rows[1]["chosen"] == 1

    def test_rows_without_folds(self):
        report = SelectionReport(criterion = "test", lambdas = [1.0, 0.0], groupCounts = [1, 2], deviances = [5.0, 4.0], eventCount = 10)

        assert "se" not in report.toRows()[0]
        assert report.foldStandardError is None

class TestGrowInitial:
    def test_pre_depth(self, mixedData, smallPipeline):
        config = PipelineConfig(
            split = smallPipeline.split,
            grow = smallPipeline.grow.copy(maxDepth = 3),
            fusion = FusionConfig(preDepth = 1),
            select = smallPipeline.select
        )

        assert growInitial(data = mixedData, config = config, seed = 0).depth <= 1

class TestDeviance:
    def test_adds_over_records(self, cutoffData, fourLeafTree):
        pattern = fusionPath(tree = fourLeafTree, data = cutoffData, config = FusionConfig(lambdaCount = 10)).patterns[-1]

        whole = patternDeviance(pattern = pattern, tree = fourLeafTree, data = cutoffData)

        first = patternDeviance(pattern = pattern, tree = fourLeafTree, data = cutoffData.subset(index = np.arange(100)))
        rest = patternDeviance(pattern = pattern, tree = fourLeafTree, data = cutoffData.subset(index = np.arange(100, len(cutoffData))))

        assert whole == pytest.approx(first + rest)

class TestSelectors:
    def test_test_sample(self, cutoffData, smallPipeline):
        train, test = stratifiedSplit(data = cutoffData, fraction = 1.0 / 3.0, seed = 0)

        selection = selectTestSample(train = cutoffData.subset(index = train), test = cutoffData.subset(index = test), config = smallPipeline, seed = 0)

        assert len(selection.report) == len(selection.path.patterns)
        assert selection.report.criterion == SelectConfig.Mode.TestSample
        assert selection.groupCount >= 2
        assert all(group is not None for group in selection.tree.leafGroups().values())
        assert len(selection.data) == len(train)

    def test_select_dispatches_test_sample(self, cutoffData, smallPipeline):
        selection = select(data = cutoffData, config = smallPipeline, seed = 0)

        assert selection.report.criterion == SelectConfig.Mode.TestSample
        assert len(selection.data) < len(cutoffData)

    def test_cross_validation(self, cutoffData, smallPipeline):
        selection = selectCv(data = cutoffData, config = withSelect(smallPipeline, mode = SelectConfig.Mode.CrossValidation), seed = 1)

        report = selection.report

        assert report.foldDeviances.shape == (3, len(report))
        assert list(report.deviances) == pytest.approx(list(report.foldDeviances.sum(axis = 0)))
        assert report.chosen == int(np.argmin(report.deviances))
        assert len(selection.data) == len(cutoffData)
        assert len(report.clamped) == 3

    def test_one_se_prefers_larger_penalty(self, cutoffData, smallPipeline):
        plain = selectCv(data = cutoffData, config = withSelect(smallPipeline, mode = SelectConfig.Mode.CrossValidation), seed = 1)
        oneSe = selectCv(data = cutoffData, config = withSelect(smallPipeline, mode = SelectConfig.Mode.CrossValidation, oneSe = True), seed = 1)

        assert oneSe.report.chosen <= plain.report.chosen
        assert oneSe.report.oneSe

        limit = plain.report.deviances[plain.report.chosen] + plain.report.foldStandardError[plain.report.chosen]

        assert oneSe.report.deviances[oneSe.report.chosen] <= limit

    def test_workers_do_not_change_result(self, cutoffData, smallPipeline):
        config = withSelect(smallPipeline, mode = SelectConfig.Mode.CrossValidation)

        serial = selectCv(data = cutoffData, config = config, seed = 2)

        parallel = selectCv(
            data = cutoffData,
            config = PipelineConfig(split = config.split, grow = config.grow, fusion = config.fusion, select = config.select, threads = 2),
            seed = 2
        )

        assert np.allclose(serial.report.foldDeviances, parallel.report.foldDeviances)
        assert serial.grouping == parallel.grouping

    def test_information_criteria(self, cutoffData, smallPipeline):
        aic = selectIc(data = cutoffData, criterion = SelectConfig.Mode.Aic, config = smallPipeline, seed = 3)
        bic = selectIc(data = cutoffData, criterion = SelectConfig.Mode.Bic, config = smallPipeline, seed = 3)

        assert aic.report.chosen == int(np.argmin(aic.report.aic))
        assert bic.report.chosen == int(np.argmin(bic.report.bic))
        assert bic.groupCount <= aic.groupCount

    def test_unknown_criterion(self, cutoffData, smallPipeline):
        with pytest.raises(ValueError):
            selectIc(data = cutoffData, criterion = "hqc", config = smallPipeline, seed = 0)

    def test_reproducible(self, mixedData, smallPipeline):
        first = select(data = mixedData, config = smallPipeline, seed = 9)
        second = select(data = mixedData, config = smallPipeline, seed = 9)

        assert first.grouping == second.grouping
        assert np.allclose(first.report.deviances, second.report.deviances)
