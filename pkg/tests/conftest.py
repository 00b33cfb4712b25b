"""
Shared fixtures for the fusetree tests
"""

import numpy as np
import pytest

from fusetree.bench import cutoffModel
from fusetree.bench import simulate
from fusetree.data import Covariate
from fusetree.data import Dataset
from fusetree.data import Schema
from fusetree.fusion import FusionConfig
from fusetree.selection import PipelineConfig
from fusetree.selection import SelectConfig
from fusetree.split import SplitConfig
from fusetree.split import SplitSpec
from fusetree.tree import GrowConfig
from fusetree.tree import Tree
from fusetree.tree import TreeNode

@pytest.fixture(autouse = True)
def isolatedCache(tmp_path, monkeypatch):
    """Keeps every test's cache out of the package directory"""

    monkeypatch.setenv("FUSETREE_CACHE", str(tmp_path / "cache"))

    return tmp_path / "cache"

@pytest.fixture
def cutoffData() -> Dataset:
    """300 records with a strong effect below z = 0.5"""

    return simulate(model = cutoffModel(beta1 = -2.0), n = 300, rate = 0.5, seed = 7)

@pytest.fixture
def mixedSchema() -> Schema:
    return Schema(covariates = [
        Covariate(name = "age", kind = Covariate.Kind.Continuous),
        Covariate(name = "treated", kind = Covariate.Kind.Binary),
        Covariate(name = "site", kind = Covariate.Kind.Nominal, levels = ["north", "south", "east"]),
    ])

@pytest.fixture
def mixedData(mixedSchema) -> Dataset:
    """200 records whose hazard depends on age and site"""

    generator = np.random.default_rng(11)

    n = 200

    covariates = np.column_stack([
        generator.uniform(20.0, 80.0, size = n),
        generator.integers(0, 2, size = n),
        generator.integers(0, 3, size = n),
    ])

    hazards = np.exp(-1.0 + 1.5 * (covariates[:, 0] > 50.0) + 1.0 * (covariates[:, 2] == 1))

    eventTimes = generator.exponential(1.0 / hazards)
    censorTimes = generator.exponential(2.0, size = n)

    return Dataset(
        schema = mixedSchema,
        times = np.minimum(eventTimes, censorTimes),
        statuses = (eventTimes <= censorTimes).astype(int),
        covariates = covariates
    )

@pytest.fixture
def smallPipeline() -> PipelineConfig:
    """Quick pipeline settings for end-to-end tests"""

    return PipelineConfig(
        split = SplitConfig(),
        grow = GrowConfig(maxDepth = 2, mode = GrowConfig.Mode.Plain),
        fusion = FusionConfig(lambdaCount = 20),
        select = SelectConfig(mode = SelectConfig.Mode.TestSample, folds = 3),
        threads = 1
    )

@pytest.fixture
def fourLeafTree(cutoffData) -> Tree:
    """A hand-built depth 2 tree on z with leaves 4 to 7"""

    leaves = {4: (0.0, 0.25), 5: (0.25, 0.5), 6: (0.5, 0.75), 7: (0.75, 1.0)}

    z = cutoffData.column(0)

    def counts(low: float, high: float) -> tuple:
        mask = (z > low) & (z <= high) if low > 0.0 else z <= high

        return int(mask.sum()), int(cutoffData.statuses[mask].sum())

    nodes = [
        TreeNode(id = 1, depth = 0, size = len(cutoffData), events = cutoffData.eventCount, split = SplitSpec(variable = 0, cutoff = 0.5), statistic = 1.0),
        TreeNode(id = 2, depth = 1, size = counts(0.0, 0.5)[0], events = counts(0.0, 0.5)[1], split = SplitSpec(variable = 0, cutoff = 0.25), statistic = 1.0),
        TreeNode(id = 3, depth = 1, size = counts(0.5, 1.0)[0], events = counts(0.5, 1.0)[1], split = SplitSpec(variable = 0, cutoff = 0.75), statistic = 1.0),
    ]

    for id, (low, high) in leaves.items():
        size, events = counts(low, high)

        nodes.append(TreeNode(id = id, depth = 2, size = size, events = events))

    return Tree(nodes = nodes, schema = cutoffData.schema)
