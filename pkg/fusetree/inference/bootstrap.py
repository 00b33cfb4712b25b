"""
Bootstrap bias correction

Group estimates from a tree chosen on the same data are biased away from 0.
Each bootstrap replicate grows a tree of the final tree's depth on the
resample, fuses it to the final group count (or the fewest groups above it)
and measures, per bootstrap group, how far the resample's estimate lies from
the full data's estimate under the same grouping. A contingency table of the
final groups against the bootstrap groups, over every original record,
carries those differences back to the final groups.
"""

import logging
import typing

import joblib
import numpy as np
import scipy.stats

from fusetree.data import Dataset
from fusetree.data import deriveSeed
from fusetree.data import stratifiedBootstrap
from fusetree.error import NumericalError
from fusetree.fusion import Grouping
from fusetree.fusion import fusionPath
from fusetree.selection import PipelineConfig
from fusetree.tree import GrowConfig
from fusetree.tree import Tree
from fusetree.tree import grow

from .config import BbcConfig
from .summary import GroupSummary
from .summary import groupFit
from .summary import groupSummaries
from .summary import recordGroups

class Replicate:
    """One bootstrap replicate's contribution
    """

    def __init__(self, table: np.ndarray, betaDifferences: np.ndarray, sdDifferences: np.ndarray) -> None:
        """Creates a new replicate

        :param self:
            Self
        :param table:
            The K x K_b counts of records by final and bootstrap group
        :param betaDifferences:
            Each bootstrap group's resample minus full-data log hazard ratio
        :param sdDifferences:
            The same for the sqrt(n)-scaled standard deviations

        :return none:
        """

        self.table = np.asarray(table, dtype = float)
        self.betaDifferences = np.asarray(betaDifferences, dtype = float)
        self.sdDifferences = np.asarray(sdDifferences, dtype = float)

    @property
    def groupCount(self) -> int:
        return self.table.shape[1]

    @property
    def weights(self) -> np.ndarray:
        return self.table / self.table.sum(axis = 1, keepdims = True)

    @property
    def betaBias(self) -> np.ndarray:
        return self.weights @ self.betaDifferences

    @property
    def sdBias(self) -> np.ndarray:
        return self.weights @ self.sdDifferences

class BbcReport:
    """Bias-corrected group estimates
    """

    def __init__(
        self,
        summary: GroupSummary,
        size: int,
        replicates: typing.List[Replicate],
        draws: int,
        direction: str = BbcConfig.Direction.Add
    ) -> None:
        """Creates a new report

        :param self:
            Self
        :param summary:
            The uncorrected group summary
        :param size:
            The record count
        :param replicates:
            The replicates used
        :param draws:
            How many replicates were drawn, including failed ones
        :param direction:
            'add' or 'subtract'

        :return none:
        """

        self.summary = summary
        self.size = int(size)
        self.replicates = list(replicates)
        self.draws = int(draws)
        self.direction = direction

        count = len(summary)

        if len(self.replicates) > 0:
            self.betaBias = np.mean([replicate.betaBias for replicate in self.replicates], axis = 0)
            self.sdBias = np.mean([replicate.sdBias for replicate in self.replicates], axis = 0)
        else:
            self.betaBias = np.zeros(count)
            self.sdBias = np.zeros(count)

        # The reference group stays at 0
        self.betaBias[0] = 0.0
        self.sdBias[0] = 0.0

        sign = 1.0 if direction == BbcConfig.Direction.Add else -1.0

        self.rawSd = summary.se * np.sqrt(self.size)

        self.beta = summary.beta + sign * self.betaBias
        self.sd = self.rawSd + sign * self.sdBias

    @property
    def se(self) -> np.ndarray:
        return self.sd / np.sqrt(self.size)

    @property
    def groupCounts(self) -> typing.List[int]:
        return [replicate.groupCount for replicate in self.replicates]

    def corrected(self) -> GroupSummary:
        """Gets the corrected estimates as a group summary

        :param self:
            Self

        :return GroupSummary:
            The summary
        """

        return GroupSummary(
            sizes = self.summary.sizes,
            events = self.summary.events,
            beta = self.beta,
            se = self.se,
            medians = self.summary.medians,
            level = self.summary.level,
            diverged = self.summary.diverged,
            corrected = True
        )

    def toRows(self) -> typing.List[dict]:
        rows = []

        for k in range(len(self.beta)):
            rows.append({
                "group": k + 1,
                "beta": self.summary.beta[k],
                "beta_bias": self.betaBias[k],
                "beta_corrected": self.beta[k],
                "sd": self.rawSd[k],
                "sd_bias": self.sdBias[k],
                "sd_corrected": self.sd[k],
                "se_corrected": self.se[k],
            })

        return rows

    def toDict(self) -> dict:
        return {
            "replicates": len(self.replicates),
            "draws": self.draws,
            "direction": self.direction,
            "group_counts": self.groupCounts,
            "groups": self.toRows(),
        }

def _replicate(data: Dataset, groups: np.ndarray, count: int, depth: int, config: PipelineConfig, seed: int) -> typing.Optional[Replicate]:
    """Runs one bootstrap replicate

    :param data:
        The records
    :param groups:
        Each record's final group
    :param count:
        The final group count
    :param depth:
        The final tree's depth
    :param config:
        The pipeline settings
    :param seed:
        The replicate's seed

    :return None:
        The replicate can't be used
    :return Replicate:
        The replicate
    """

    logger = logging.getLogger(__name__)

    drawn = stratifiedBootstrap(pool = data.allRows(), data = data, m = len(data), seed = seed)

    resample = data.subset(index = drawn)

    tree = grow(
        data = resample,
        growConfig = config.grow.copy(maxDepth = depth),
        splitConfig = config.split,
        seed = seed,
        mode = GrowConfig.Mode.Plain
    )

    try:
        path = fusionPath(tree = tree, data = resample, config = config.fusion)

    except NumericalError as ex:
        logger.debug(f"Replicate fusion path failed: {ex}")

        return None

    pattern = path.patternWithGroups(count = count)

    if pattern is None:
        logger.debug(f"Replicate tree has {len(tree.leaves)} leaves, too few for {count} groups")

        return None

    resampleFit = groupFit(groups = recordGroups(data = resample, tree = tree, grouping = pattern.grouping), count = pattern.groupCount, data = resample)

    bootstrapGroups = recordGroups(data = data, tree = tree, grouping = pattern.grouping)

    if data.statuses[bootstrapGroups == 1].sum() < 1:
        logger.debug("Replicate's reference group has no events in the full data")

        return None

    fullFit = groupFit(groups = bootstrapGroups, count = pattern.groupCount, data = data)

    if resampleFit.diverged or fullFit.diverged:
        logger.debug("Replicate fit diverged")

        return None

    scale = np.sqrt(len(data))

    betaDifferences = np.concatenate([[0.0], resampleFit.coefficients - fullFit.coefficients])
    sdDifferences = np.concatenate([[0.0], scale * (resampleFit.standardErrors - fullFit.standardErrors)])

    table = np.zeros((count, pattern.groupCount))

    np.add.at(table, (groups - 1, bootstrapGroups - 1), 1.0)

    return Replicate(table = table, betaDifferences = betaDifferences, sdDifferences = sdDifferences)

def bootstrapBiasCorrect(
    data: Dataset,
    tree: Tree,
    grouping: Grouping = None,
    config: PipelineConfig = None,
    replicates: int = 25,
    seed: int = 0,
    direction: str = BbcConfig.Direction.Add,
    level: float = 0.95
) -> BbcReport:
    """Corrects group estimates for selection bias

    Replicates that can't reach the final group count are redrawn, up to
    three times the wanted number of draws in all.

    :param data:
        The records
    :param tree:
        The final tree
    :param grouping:
        The grouping of the tree's leaves; the leaves' own groups if not
        given
    :param config:
        The pipeline settings bootstrap trees are grown and fused with
    :param replicates:
        How many replicates to average
    :param seed:
        The random seed
    :param direction:
        'add' applies the averaged differences, 'subtract' removes them
    :param level:
        The confidence level of the summaries

    :return BbcReport:
        The report
    """

    logger = logging.getLogger(__name__)

    if config is None:
        config = PipelineConfig()

    summary = groupSummaries(data = data, tree = tree, grouping = grouping, level = level)

    count = len(summary)

    if (count < 2) or (replicates < 1):
        return BbcReport(summary = summary, size = len(data), replicates = [], draws = 0, direction = direction)

    groups = recordGroups(data = data, tree = tree, grouping = grouping)

    used = []
    draws = 0

    # Draws run in batches so the kept replicates don't depend on scheduling
    while (len(used) < replicates) and (draws < 3 * replicates):
        batch = range(draws, min(draws + replicates - len(used), 3 * replicates))

        results = joblib.Parallel(n_jobs = config.jobs)(
            joblib.delayed(_replicate)(
                data = data,
                groups = groups,
                count = count,
                depth = tree.depth,
                config = config,
                seed = deriveSeed(seed, "bbc", b)
            )
            for b in batch
        )

        draws = batch.stop

        used.extend(result for result in results if result is not None)

    if len(used) < replicates:
        logger.warning(f"Only {len(used)} of {replicates} bootstrap replicates succeeded in {draws} draws")

    logger.info(f"Bias corrected {count} groups with {len(used)} replicates")

    return BbcReport(summary = summary, size = len(data), replicates = used[:replicates], draws = draws, direction = direction)

def confidenceIntervals(report: typing.Union[BbcReport, GroupSummary], level: float = 0.95) -> typing.List[dict]:
    """Builds normal confidence intervals

    :param report:
        Corrected estimates, or a plain summary
    :param level:
        The confidence level

    :return typing.List[dict]:
        Per group, the estimate with its log hazard ratio and hazard ratio
        bounds
    """

    beta, se = report.beta, report.se

    quantile = scipy.stats.norm.ppf(0.5 + level / 2.0)

    intervals = []

    for k in range(len(beta)):
        lower = beta[k] - quantile * se[k]
        upper = beta[k] + quantile * se[k]

        intervals.append({
            "group": k + 1,
            "beta": beta[k],
            "lower": lower,
            "upper": upper,
            "hr": np.exp(beta[k]),
            "hr_lower": np.exp(lower),
            "hr_upper": np.exp(upper),
        })

    return intervals
