"""
Monte-Carlo reproduction of the method's headline behaviour

These run the bench studies at desk scale and take minutes, so they only run
with '-m slow'.
"""

import pandas
import pytest

from fusetree.bench import BenchConfig
from fusetree.bench import runBiasStudy
from fusetree.bench import runComparison
from fusetree.bench import runSplitStudy
from fusetree.cache import DirectoryVariable
from fusetree.inference import BbcConfig
from fusetree.selection import PipelineConfig

pytestmark = pytest.mark.slow

Variables = ["z1", "z2", "z3", "z4", "z5"]

@pytest.fixture(scope = "module")
def studyCache(tmp_path_factory):
    with pytest.MonkeyPatch.context() as patch:
        patch.setenv(DirectoryVariable, str(tmp_path_factory.mktemp("studycache")))

        yield

@pytest.fixture(scope = "module")
def splitReports(studyCache) -> dict:
    return runSplitStudy(config = BenchConfig(study = "split", splitSize = 200, replicates = 500), seed = 1)

@pytest.fixture(scope = "module")
def comparison(studyCache) -> pandas.DataFrame:
    summary, _ = runComparison(config = BenchConfig(models = "A,B,C,D", size = 600, replicates = 50), seed = 2)

    return summary.set_index("model")

@pytest.fixture(scope = "module")
def bias(studyCache) -> pandas.DataFrame:
    summary, _ = runBiasStudy(
        config = BenchConfig(study = "bias", models = "C,E", size = 600, truthSize = 20000, replicates = 50),
        bbc = BbcConfig(replicates = 20),
        seed = 3
    )

    return summary[summary["estimate"] == "beta"].set_index("model")

def frequencyGap(row: pandas.Series) -> float:
    return float(row[Variables].max() - row[Variables].min())

class TestCutoffs:
    def test_sigmoid_recovers_cutoff_at_least_as_well(self, splitReports):
        mse = splitReports["cutoff_mse"]

        greedy = float(mse.loc[mse["method"] == "gs", "mse"].iloc[0])
        sigmoid = float(mse.loc[(mse["method"] == "sss") & (mse["shape"] == 50.0), "mse"].iloc[0])

        assert sigmoid <= greedy
        assert greedy < 0.02
        assert sigmoid < 0.02

    def test_sigmoid_avoids_end_cuts(self, splitReports):
        summary = splitReports["ecp_summary"].set_index("method")

        assert summary.loc["sss", "central"] >= summary.loc["gs", "central"] + 0.10

class TestVariableSelection:
    def test_null_frequencies(self, splitReports):
        frequencies = splitReports["selection_frequency"]

        null = frequencies[frequencies["scenario"] == "null"].set_index("method")

        for variable in Variables:
            assert 0.12 <= null.loc["iv", variable] <= 0.28

        assert null.loc["gs", "z5"] > 0.30

    def test_balanced_frequencies(self, splitReports):
        frequencies = splitReports["selection_frequency"]

        balanced = frequencies[frequencies["scenario"] == "balanced"].set_index("method")

        assert frequencyGap(row = balanced.loc["iv"]) < frequencyGap(row = balanced.loc["gs"])

class TestComparison:
    def test_null_model(self, comparison):
        assert comparison.loc["A", "size_mean"] <= 1.3
        assert comparison.loc["A", "accurate"] >= 0.85

    def test_two_group_model(self, comparison):
        assert 1.9 <= comparison.loc["C", "size_mean"] <= 2.6
        assert comparison.loc["C", "accurate"] >= 0.80

    def test_larger_models(self, comparison):
        assert 2.0 <= comparison.loc["D", "size_mean"] <= 3.2
        assert 3.2 <= comparison.loc["B", "size_mean"] <= 4.4

class TestBiasCorrection:
    def test_correction_shrinks_bias(self, bias):
        raw = bias.loc["C", "raw_bias"]

        assert raw > 0.10
        assert abs(bias.loc["C", "corrected_bias"]) < raw / 2.0

    def test_correction_shrinks_error(self, bias):
        for model in ["C", "E"]:
            assert bias.loc[model, "corrected_mse"] < bias.loc[model, "raw_mse"]

class TestReproducibility:
    def test_workers_do_not_change_studies(self, studyCache):
        config = BenchConfig(study = "split", splitSize = 100, replicates = 4)

        serial = runSplitStudy(config = config, pipeline = PipelineConfig(threads = 1), seed = 5)
        parallel = runSplitStudy(config = config, pipeline = PipelineConfig(threads = 3), seed = 5)

        for name, frame in serial.items():
            pandas.testing.assert_frame_equal(frame, parallel[name])
