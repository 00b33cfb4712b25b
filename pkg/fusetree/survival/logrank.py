"""
The two-sample logrank statistic

Group membership is given per record as a weight in [0, 1]: hard 0/1
memberships give the classical statistic, sigmoid memberships give its
smoothed surrogate. Both use

    Q = {sum_k w_k (d_kL - E_kL)}^2 / sum_k w_k^2 V_kL

with E_kL = Y_kL d_k / Y_k and
V_kL = d_k (Y_k - d_k) Y_kL (Y_k - Y_kL) / (Y_k^2 (Y_k - 1)).
Event times with a single record at risk carry no information and are
skipped.
"""

import typing

import numpy as np

from fusetree.error import DegenerateSplitError

from .riskTable import RiskTable
from .riskTable import buildRiskTable

VarianceFloor = 1e-12
"""Variance sums at or below this are treated as degenerate"""

def riskIndicators(times: np.ndarray, statuses: np.ndarray, table: RiskTable) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Gets per-record at-risk and death indicators for each event time

    :param times:
        The observed times
    :param statuses:
        The event indicators
    :param table:
        The risk table of the same records

    :return np.ndarray:
        An n x D matrix, 1 where record i is at risk at event time k
    :return np.ndarray:
        An n x D matrix, 1 where record i died at event time k
    """

    times = np.asarray(times, dtype = float)

    atRisk = (times[:, None] >= table.eventTimes[None, :]).astype(float)
    deaths = ((times[:, None] == table.eventTimes[None, :]) & (np.asarray(statuses)[:, None] == 1)).astype(float)

    return atRisk, deaths

def logrankFromCounts(
    leftAtRisk: np.ndarray,
    leftDeaths: np.ndarray,
    table: RiskTable,
    weights: typing.Optional[np.ndarray] = None
) -> np.ndarray:
    """Computes logrank statistics from left-group counts

    The counts may be a single row or a stack of rows, one per candidate
    split, and may be fractional.

    :param leftAtRisk:
        Y_kL per event time, shape (D,) or (J, D)
    :param leftDeaths:
        d_kL per event time, same shape
    :param table:
        The node's risk table
    :param weights:
        The per-event-time weights w_k, all 1 if not given

    :return np.ndarray:
        The statistics, NaN where the variance is degenerate
    """

    if weights is None:
        weights = np.ones(len(table))

    weights = np.asarray(weights, dtype = float)

    informative = table.atRisk > 1.0

    Y = table.atRisk[informative]
    d = table.deaths[informative]
    w = weights[informative]

    YL = np.atleast_2d(leftAtRisk)[:, informative]
    dL = np.atleast_2d(leftDeaths)[:, informative]

    expected = YL * d / Y
    variance = d * (Y - d) * YL * (Y - YL) / (Y * Y * (Y - 1.0))

    numerator = ((dL - expected) * w).sum(axis = 1) ** 2
    denominator = (variance * w * w).sum(axis = 1)

    statistics = np.full(len(numerator), np.nan)

    valid = denominator > VarianceFloor

    statistics[valid] = numerator[valid] / denominator[valid]

    if np.ndim(leftAtRisk) == 1:
        return statistics[0]

    return statistics

def logrankStatistic(
    membership: np.ndarray,
    times: np.ndarray,
    statuses: np.ndarray,
    weights: typing.Optional[np.ndarray] = None
) -> float:
    """Computes the logrank statistic for a (possibly soft) two-group split

    :param membership:
        Per-record left-group membership weights in [0, 1]
    :param times:
        The observed times
    :param statuses:
        The event indicators
    :param weights:
        The per-event-time weights, all 1 if not given

    :raise ValueError:
        Invalid memberships or weights
    :raise DegenerateSplitError:
        The split has zero variance

    :return float:
        The statistic
    """

    membership = np.asarray(membership, dtype = float)

    if np.any((membership < 0.0) | (membership > 1.0)):
        raise ValueError("Memberships must lie in [0, 1]")

    table = buildRiskTable(times = times, statuses = statuses)

    if weights is not None:
        weights = np.asarray(weights, dtype = float)

        if (len(weights) != len(table)) or np.any(weights < 0.0) or not np.any(weights > 0.0):
            raise ValueError("Logrank weights must be non-negative, not all zero, one per event time")

    atRisk, deaths = riskIndicators(times = times, statuses = statuses, table = table)

    statistic = logrankFromCounts(
        leftAtRisk = membership @ atRisk,
        leftDeaths = membership @ deaths,
        table = table,
        weights = weights
    )

    if np.isnan(statistic):
        raise DegenerateSplitError("Logrank variance is zero; the split is degenerate")

    return float(statistic)
