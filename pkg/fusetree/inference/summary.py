"""
Group summaries

A Cox model on group dummies, the lowest-hazard group 1 being the
reference, gives each group's log hazard ratio with Wald statistics.
Kaplan-Meier medians are reported alongside as description.
"""

import logging
import typing

import numpy as np
import scipy.stats

from fusetree.data import Dataset
from fusetree.error import ConfigError
from fusetree.fusion import Grouping
from fusetree.survival import CoxFit
from fusetree.survival import coxFit
from fusetree.survival import kaplanMeier
from fusetree.tree import Tree
from fusetree.tree import indicatorMatrix

def recordGroups(data: Dataset, tree: Tree, grouping: Grouping = None) -> np.ndarray:
    """Gets each record's group

    :param data:
        The records
    :param tree:
        The tree
    :param grouping:
        The grouping of the tree's leaves; the leaves' own groups if not
        given

    :return np.ndarray:
        The group ids
    """

    if grouping is None:
        grouping = Grouping(leafToGroup = tree.leafGroups())

    return grouping.groupsOf(leafIds = tree.routeAll(data = data))

def groupFit(groups: np.ndarray, count: int, data: Dataset) -> CoxFit:
    return coxFit(
        design = indicatorMatrix(labels = groups, categories = list(range(1, count + 1))),
        times = data.times,
        statuses = data.statuses
    )

class GroupSummary:
    """Per-group log hazard ratios
    """

    def __init__(
        self,
        sizes: np.ndarray,
        events: np.ndarray,
        beta: np.ndarray,
        se: np.ndarray,
        medians: typing.List[typing.Optional[float]],
        level: float = 0.95,
        diverged: bool = False,
        corrected: bool = False
    ) -> None:
        """Creates a new summary

        :param self:
            Self
        :param sizes:
            Each group's record count
        :param events:
            Each group's event count
        :param beta:
            Each group's log hazard ratio, group 1's 0 first
        :param se:
            Each group's standard error, NaN for group 1
        :param medians:
            Each group's Kaplan-Meier median, None where not reached
        :param level:
            The confidence level
        :param diverged:
            Whether a coefficient ran off
        :param corrected:
            Whether the estimates are bias corrected

        :return none:
        """

        self.sizes = np.asarray(sizes, dtype = int)
        self.events = np.asarray(events, dtype = int)
        self.beta = np.asarray(beta, dtype = float)
        self.se = np.asarray(se, dtype = float)
        self.medians = list(medians)
        self.level = float(level)
        self.diverged = bool(diverged)
        self.corrected = bool(corrected)

    def __len__(self) -> int:
        return len(self.beta)

    @property
    def hazardRatios(self) -> np.ndarray:
        return np.exp(self.beta)

    @property
    def z(self) -> np.ndarray:
        with np.errstate(divide = "ignore", invalid = "ignore"):
            return np.where(self.se > 0.0, self.beta / self.se, np.nan)

    @property
    def p(self) -> np.ndarray:
        return 2.0 * scipy.stats.norm.sf(np.abs(self.z))

    @property
    def bounds(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Gets normal confidence bounds of the log hazard ratios

        :param self:
            Self

        :return np.ndarray:
            The lower bounds
        :return np.ndarray:
            The upper bounds
        """

        quantile = scipy.stats.norm.ppf(0.5 + self.level / 2.0)

        return self.beta - quantile * self.se, self.beta + quantile * self.se

    def toRows(self) -> typing.List[dict]:
        lower, upper = self.bounds

        rows = []

        for k in range(len(self)):
            rows.append({
                "group": k + 1,
                "n": int(self.sizes[k]),
                "events": int(self.events[k]),
                "beta": self.beta[k],
                "hr": self.hazardRatios[k],
                "se": self.se[k],
                "z": self.z[k],
                "p": self.p[k],
                "lower": lower[k],
                "upper": upper[k],
                "hr_lower": np.exp(lower[k]),
                "hr_upper": np.exp(upper[k]),
                "median": self.medians[k],
                "corrected": int(self.corrected),
            })

        return rows

    def toDict(self) -> dict:
        return {
            "level": self.level,
            "diverged": self.diverged,
            "corrected": self.corrected,
            "groups": self.toRows(),
        }

    @staticmethod
    def makeFromDict(data: dict) -> "GroupSummary":
        """Creates a summary from a dictionary

        :param data:
            The dictionary, as toDict() makes it

        :raise ConfigError:
            Invalid summary

        :return GroupSummary:
            The summary
        """

        try:
            groups = sorted(data["groups"], key = lambda row: row["group"])

            return GroupSummary(
                sizes = [row["n"] for row in groups],
                events = [row["events"] for row in groups],
                beta = [row["beta"] for row in groups],
                se = [row["se"] if row["se"] is not None else np.nan for row in groups],
                medians = [row["median"] for row in groups],
                level = data.get("level", 0.95),
                diverged = data.get("diverged", False),
                corrected = data.get("corrected", False)
            )

        except (KeyError, TypeError) as ex:
            raise ConfigError(f"Invalid group summary: {ex}")

def groupSummaries(data: Dataset, tree: Tree, grouping: Grouping = None, level: float = 0.95) -> GroupSummary:
    """Summarizes a grouping's hazards

    :param data:
        The records
    :param tree:
        The tree
    :param grouping:
        The grouping of the tree's leaves; the leaves' own groups if not
        given
    :param level:
        The confidence level

    :return GroupSummary:
        The summary; a lone reference row for a single group
    """

    logger = logging.getLogger(__name__)

    groups = recordGroups(data = data, tree = tree, grouping = grouping)

    if grouping is None:
        count = max(group for group in tree.leafGroups().values() if group is not None)
    else:
        count = grouping.count

    sizes = [int(np.sum(groups == k)) for k in range(1, count + 1)]
    events = [int(data.statuses[groups == k].sum()) for k in range(1, count + 1)]

    medians = []

    for k in range(1, count + 1):
        mask = groups == k

        medians.append(kaplanMeier(times = data.times[mask], statuses = data.statuses[mask]).median() if np.any(mask) else None)

    fit = groupFit(groups = groups, count = count, data = data)

    if fit.diverged:
        logger.warning("A group coefficient diverged; its estimate sits at the cap")

    return GroupSummary(
        sizes = sizes,
        events = events,
        beta = np.concatenate([[0.0], fit.coefficients]),
        se = np.concatenate([[np.nan], fit.standardErrors]),
        medians = medians,
        level = level,
        diverged = fit.diverged
    )
