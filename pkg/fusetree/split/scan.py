"""
Grouped risk counts for split searches

Every candidate split of one covariate sends whole groups of records (the
records sharing a distinct value, or a nominal level) to one side, so the
searches aggregate at-risk and death counts per group once and build every
candidate's left-hand counts from those.
"""

import typing

import numpy as np

from fusetree.data import Dataset
from fusetree.error import DataError
from fusetree.survival import RiskTable
from fusetree.survival import buildRiskTable
from fusetree.survival import logrankFromCounts

from .config import SplitConfig

class GroupedCounts:
    """Per-group risk counts for one node
    """

    def __init__(self, node: Dataset, groups: np.ndarray, groupCount: int, table: RiskTable) -> None:
        """Creates new grouped counts

        :param self:
            Self
        :param node:
            The node's records
        :param groups:
            Each record's group, 0 to groupCount - 1
        :param groupCount:
            How many groups there are
        :param table:
            The node's risk table

        :return none:
        """

        times = node.times
        statuses = node.statuses

        D = len(table)

        # Records with T >= t_k are at risk at t_k, so a record counts at every
        # event time before its own position
        positions = np.searchsorted(table.eventTimes, times, side = "right")

        histogram = np.zeros((groupCount, D + 1))

        np.add.at(histogram, (groups, positions), 1.0)

        self.atRisk = np.cumsum(histogram[:, ::-1], axis = 1)[:, ::-1][:, 1:]

        self.deaths = np.zeros((groupCount, D))

        events = statuses == 1

        np.add.at(self.deaths, (groups[events], np.searchsorted(table.eventTimes, times[events])), 1.0)

        self.sizes = np.bincount(groups, minlength = groupCount).astype(float)
        self.events = np.bincount(groups, weights = events.astype(float), minlength = groupCount)

        self.table = table
        self.size = float(len(times))
        self.eventCount = float(events.sum())

    def evaluate(self, left: np.ndarray, config: SplitConfig) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Evaluates candidate splits given as left-group indicator rows

        :param self:
            Self
        :param left:
            A J x G 0/1 matrix, row j marking the groups candidate j sends left
        :param config:
            The split settings

        :return np.ndarray:
            Each candidate's statistic, NaN when inadmissible or degenerate
        :return np.ndarray:
            Whether each candidate meets the child minima
        """

        left = np.atleast_2d(np.asarray(left, dtype = float))

        leftSizes = left @ self.sizes
        leftEvents = left @ self.events

        admissible = (
            (leftSizes >= config.minChildSize) &
            (self.size - leftSizes >= config.minChildSize) &
            (leftEvents >= config.minChildEvents) &
            (self.eventCount - leftEvents >= config.minChildEvents)
        )

        statistics = np.full(len(left), np.nan)

        if np.any(admissible):
            statistics[admissible] = logrankFromCounts(
                leftAtRisk = left[admissible] @ self.atRisk,
                leftDeaths = left[admissible] @ self.deaths,
                table = self.table
            )

        return statistics, admissible

    def evaluateOrdered(self, config: SplitConfig) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Evaluates every split of ordered groups into a prefix and a suffix

        :param self:
            Self
        :param config:
            The split settings

        :return np.ndarray:
            For j = 0 .. G - 2, the statistic of sending groups 0 .. j left
        :return np.ndarray:
            Whether each candidate meets the child minima
        """

        G = len(self.sizes)

        prefixes = np.tril(np.ones((G - 1, G)), k = 0)

        return self.evaluate(left = prefixes, config = config)

def nodeTable(node: Dataset) -> typing.Optional[RiskTable]:
    """Gets a node's risk table

    :param node:
        The node's records

    :return None:
        The node has no events
    :return RiskTable:
        The risk table
    """

    try:
        return buildRiskTable(times = node.times, statuses = node.statuses)

    except DataError:
        return None
