"""
Choosing the fusion penalty

Every selector grows an initial tree, computes its fusion path and scores
each distinct grouping on the path by a deviance: on a held-out test sample,
summed over cross-validation folds, or in-sample with an AIC or BIC
complexity penalty. The chosen grouping always comes from the path of the
tree grown on all of the training data; fold trees only score.
"""

import logging
import typing

import joblib
import numpy as np

from fusetree.data import Dataset
from fusetree.data import SampleIndex
from fusetree.data import deriveSeed
from fusetree.data import stratifiedPartition
from fusetree.data import stratifiedSplit
from fusetree.fusion import FusionPath
from fusetree.fusion import FusionPattern
from fusetree.fusion import Grouping
from fusetree.fusion import fusionPath
from fusetree.fusion import shear
from fusetree.survival import deviance
from fusetree.tree import Tree
from fusetree.tree import grow

from .config import PipelineConfig
from .config import SelectConfig
from .report import SelectionReport

class Selection:
    """A selected model
    """

    def __init__(
        self,
        data: Dataset,
        initial: Tree,
        path: FusionPath,
        pattern: FusionPattern,
        report: SelectionReport,
        config: PipelineConfig,
        seed: int
    ) -> None:
        """Creates a new selection

        :param self:
            Self
        :param data:
            The records the model was fitted on
        :param initial:
            The initial tree
        :param path:
            The initial tree's fusion path
        :param pattern:
            The chosen pattern
        :param report:
            How every candidate scored
        :param config:
            The pipeline settings
        :param seed:
            The random seed

        :return none:
        """

        self.data = data
        self.initial = initial
        self.path = path
        self.pattern = pattern
        self.report = report
        self.config = config
        self.seed = int(seed)

        self.tree = shear(tree = initial, grouping = pattern.grouping)

    @property
    def grouping(self) -> Grouping:
        return self.pattern.grouping

    @property
    def groupCount(self) -> int:
        return self.pattern.groupCount

def growInitial(data: Dataset, config: PipelineConfig, seed: int, mode: str = None) -> Tree:
    """Grows a tree ready for fusion

    :param data:
        The training records
    :param config:
        The pipeline settings
    :param seed:
        The random seed
    :param mode:
        'iv' or 'plain', overriding the growth settings' mode

    :return Tree:
        The tree, cut to the fusion pre-depth if one is set
    """

    tree = grow(data = data, growConfig = config.grow, splitConfig = config.split, seed = seed, mode = mode)

    if (config.fusion.preDepth is not None) and (tree.depth > config.fusion.preDepth):
        tree = tree.shrink(depth = config.fusion.preDepth)

    return tree

def patternDeviance(pattern: FusionPattern, tree: Tree, data: Dataset) -> float:
    """Scores a pattern on records

    :param pattern:
        The pattern, with its training fit
    :param tree:
        The tree the pattern groups
    :param data:
        The records to score

    :return float:
        The deviance of the records under the pattern's relaxed fit
    """

    return deviance(
        baseline = pattern.baseline,
        beta = pattern.relaxed[1:],
        design = pattern.design(leafIds = tree.routeAll(data = data)),
        times = data.times,
        statuses = data.statuses
    )

def selectTestSample(train: Dataset, test: Dataset, config: PipelineConfig, seed: int) -> Selection:
    """Selects a grouping by its deviance on a test sample

    :param train:
        The training records
    :param test:
        The test records
    :param config:
        The pipeline settings
    :param seed:
        The random seed

    :raise DataError:
        Either sample has no events

    :return Selection:
        The selected model, BIC penalties using the test event count
    """

    logger = logging.getLogger(__name__)

    tree = growInitial(data = train, config = config, seed = seed)

    path = fusionPath(tree = tree, data = train, config = config.fusion)

    deviances = [patternDeviance(pattern = pattern, tree = tree, data = test) for pattern in path.patterns]

    report = SelectionReport(
        criterion = SelectConfig.Mode.TestSample,
        lambdas = [pattern.penalty for pattern in path.patterns],
        groupCounts = [pattern.groupCount for pattern in path.patterns],
        deviances = deviances,
        eventCount = test.eventCount
    )

    logger.info(f"Test-sample selection chose {path.patterns[report.chosen].groupCount} groups out of {len(tree.leaves)} leaves")

    return Selection(
        data = train,
        initial = tree,
        path = path,
        pattern = path.patterns[report.chosen],
        report = report,
        config = config,
        seed = seed
    )

def _scoreFold(
    data: Dataset,
    held: SampleIndex,
    lambdas: typing.List[float],
    grid: np.ndarray,
    config: PipelineConfig,
    seed: int
) -> typing.Tuple[np.ndarray, bool]:
    """Scores the candidate penalties on one fold

    :param data:
        All the records
    :param held:
        The fold's held-out rows
    :param lambdas:
        The candidates' penalties
    :param grid:
        The shared penalty grid
    :param config:
        The pipeline settings
    :param seed:
        The fold's seed

    :return np.ndarray:
        Each candidate's validated deviance on the fold
    :return bool:
        Whether the fold path started above the shared grid
    """

    mask = np.ones(len(data), dtype = bool)
    mask[held.indices] = False

    train = data.subset(index = np.flatnonzero(mask))
    validation = data.subset(index = held)

    tree = growInitial(data = train, config = config, seed = seed, mode = config.select.foldMode)

    path = fusionPath(tree = tree, data = train, config = config.fusion, lambdas = grid)

    deviances = np.array([
        patternDeviance(pattern = path.patternAt(penalty = penalty), tree = tree, data = validation)
        for penalty in lambdas
    ])

    return deviances, path.clamped

def selectCv(data: Dataset, config: PipelineConfig, seed: int, folds: int = None) -> Selection:
    """Selects a grouping by cross-validated deviance

    Every fold tree is fused on the full data's penalty grid, and each
    candidate penalty takes the fold pattern in force at it.

    :param data:
        The records
    :param config:
        The pipeline settings
    :param seed:
        The random seed
    :param folds:
        The fold count, overriding the selection settings

    :return Selection:
        The selected model
    """

    logger = logging.getLogger(__name__)

    if folds is None:
        folds = config.select.folds

    tree = growInitial(data = data, config = config, seed = seed)

    path = fusionPath(tree = tree, data = data, config = config.fusion)

    lambdas = [pattern.penalty for pattern in path.patterns]

    parts = stratifiedPartition(data = data, parts = folds, seed = deriveSeed(seed, "cv"), strict = False)

    results = joblib.Parallel(n_jobs = config.jobs)(
        joblib.delayed(_scoreFold)(
            data = data,
            held = part,
            lambdas = lambdas,
            grid = path.lambdas,
            config = config,
            seed = deriveSeed(seed, "fold", v)
        )
        for v, part in enumerate(parts)
    )

    foldDeviances = np.array([deviances for deviances, _ in results])
    clamped = [bool(clamped) for _, clamped in results]

    if any(clamped):
        logger.warning(f"Fold paths {[v for v, c in enumerate(clamped) if c]} started above the shared penalty grid")

    totals = foldDeviances.sum(axis = 0)

    report = SelectionReport(
        criterion = SelectConfig.Mode.CrossValidation,
        lambdas = lambdas,
        groupCounts = [pattern.groupCount for pattern in path.patterns],
        deviances = totals,
        eventCount = data.eventCount,
        foldDeviances = foldDeviances,
        clamped = clamped,
        oneSe = config.select.oneSe
    )

    if config.select.oneSe and (report.foldStandardError is not None):
        best = report.chosen

        limit = totals[best] + report.foldStandardError[best]

        # The first candidate within the limit has the largest penalty
        report.chosen = int(np.flatnonzero(totals <= limit)[0])

    logger.info(f"{folds}-fold selection chose {path.patterns[report.chosen].groupCount} groups out of {len(tree.leaves)} leaves")

    return Selection(
        data = data,
        initial = tree,
        path = path,
        pattern = path.patterns[report.chosen],
        report = report,
        config = config,
        seed = seed
    )

def selectIc(data: Dataset, criterion: str, config: PipelineConfig, seed: int) -> Selection:
    """Selects a grouping by an information criterion

    :param data:
        The records
    :param criterion:
        'aic' for a penalty of 2 per group, 'bic' for the log of the event
        count per group
    :param config:
        The pipeline settings
    :param seed:
        The random seed

    :raise ValueError:
        Unknown criterion

    :return Selection:
        The selected model
    """

    if criterion not in (SelectConfig.Mode.Aic, SelectConfig.Mode.Bic):
        raise ValueError(f"Unknown information criterion '{criterion}'")

    tree = growInitial(data = data, config = config, seed = seed)

    path = fusionPath(tree = tree, data = data, config = config.fusion)

    report = SelectionReport(
        criterion = criterion,
        lambdas = [pattern.penalty for pattern in path.patterns],
        groupCounts = [pattern.groupCount for pattern in path.patterns],
        deviances = [patternDeviance(pattern = pattern, tree = tree, data = data) for pattern in path.patterns],
        eventCount = data.eventCount
    )

    return Selection(
        data = data,
        initial = tree,
        path = path,
        pattern = path.patterns[report.chosen],
        report = report,
        config = config,
        seed = seed
    )

def select(data: Dataset, config: PipelineConfig, seed: int) -> Selection:
    """Runs the configured selector

    :param data:
        The records
    :param config:
        The pipeline settings
    :param seed:
        The random seed

    :return Selection:
        The selected model
    """

    mode = config.select.mode

    if mode == SelectConfig.Mode.TestSample:
        train, test = stratifiedSplit(data = data, fraction = config.select.testFraction, seed = seed)

        return selectTestSample(
            train = data.subset(index = train),
            test = data.subset(index = test),
            config = config,
            seed = seed
        )

    if mode == SelectConfig.Mode.CrossValidation:
        return selectCv(data = data, config = config, seed = seed)

    return selectIc(data = data, criterion = mode, config = config, seed = seed)
