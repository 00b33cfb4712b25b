"""
Best-split searches for one node

Ordered covariates are searched greedily over every midpoint between
consecutive distinct values, or through the smooth sigmoid surrogate of the
logrank statistic. Nominal covariates have their level subsets enumerated.
Every search reports the hard logrank statistic of the rule it returns, so
results from different searches compare directly.
"""

import itertools
import logging
import typing

import numpy as np
import scipy.special

from fusetree.data import Dataset
from fusetree.error import DataError
from fusetree.error import DegenerateSplitError
from fusetree.survival import logrankFromCounts
from fusetree.survival import logrankStatistic
from fusetree.survival import riskIndicators

from .config import SplitConfig
from .golden import goldenMaximize
from .scan import GroupedCounts
from .scan import nodeTable
from .spec import SplitResult
from .spec import SplitSpec

TieTolerance = 1e-12
"""The relative difference below which two statistics tie"""

def _ties(statistics: np.ndarray) -> np.ndarray:
    """Gets the candidates tied for the largest statistic

    :param statistics:
        The statistics, NaN for inadmissible candidates

    :return np.ndarray:
        The indices of the tied maxima
    """

    best = np.nanmax(statistics)

    return np.flatnonzero(statistics >= best - TieTolerance * max(abs(best), 1.0))

def _nearestMedian(statistics: np.ndarray, cutoffs: np.ndarray, z: np.ndarray) -> int:
    """Picks the best ordered cutoff, ties going nearest the median of z

    Remaining ties go to the smaller cutoff.

    :param statistics:
        The statistics, NaN for inadmissible cutoffs
    :param cutoffs:
        The cutoffs
    :param z:
        The node's values of the searched variable

    :return int:
        The chosen cutoff's index
    """

    tied = _ties(statistics = statistics)

    if len(tied) < 2:
        return int(tied[0])

    distances = np.abs(cutoffs[tied] - np.median(z))

    # Sort on distance first, then cutoff
    return int(tied[np.lexsort((cutoffs[tied], distances))[0]])

def greedySearch(node: Dataset, variable: int, config: SplitConfig) -> SplitResult:
    """Finds the best threshold split by evaluating every admissible cutoff

    Ties go to the cutoff nearest the node's median of the variable, then to
    the smaller cutoff.

    :param node:
        The node's records
    :param variable:
        The ordered covariate's schema index
    :param config:
        The split settings

    :return SplitResult:
        The best split, or an infeasible result
    """

    z = node.column(variable)

    values, groups = np.unique(z, return_inverse = True)

    table = nodeTable(node = node)

    if (len(values) < 2) or (table is None):
        return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Greedy)

    counts = GroupedCounts(node = node, groups = groups, groupCount = len(values), table = table)

    statistics, _ = counts.evaluateOrdered(config = config)

    if np.all(np.isnan(statistics)):
        return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Greedy)

    cutoffs = (values[:-1] + values[1:]) / 2.0

    best = _nearestMedian(statistics = statistics, cutoffs = cutoffs, z = z)

    return SplitResult(
        spec = SplitSpec(variable = variable, cutoff = cutoffs[best]),
        statistic = statistics[best],
        method = SplitConfig.Method.Greedy
    )

def sssSearch(node: Dataset, variable: int, config: SplitConfig) -> SplitResult:
    """Finds the best threshold split with the smooth sigmoid surrogate

    The variable is scaled to [0, 1] over the node. The surrogate statistic,
    built from sigmoid memberships expit(a (c - z)), is scanned on a quantile
    grid spanning the admissible cutoffs, then refined by golden-section
    search within the best grid point's neighbours. The returned cutoff is
    moved to the nearest admissible midpoint if it lands in an inadmissible
    gap. Variables with two or fewer distinct values are searched greedily.

    :param node:
        The node's records
    :param variable:
        The ordered covariate's schema index
    :param config:
        The split settings

    :return SplitResult:
        The best split, or an infeasible result
    """

    z = node.column(variable)

    values, groups = np.unique(z, return_inverse = True)

    if len(values) <= 2:
        return greedySearch(node = node, variable = variable, config = config)

    table = nodeTable(node = node)

    if table is None:
        return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Sigmoid)

    counts = GroupedCounts(node = node, groups = groups, groupCount = len(values), table = table)

    hard, admissible = counts.evaluateOrdered(config = config)

    valid = admissible & ~np.isnan(hard)

    if not np.any(valid):
        return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Sigmoid)

    low = values[0]
    span = values[-1] - values[0]

    u = (z - low) / span
    midpoints = ((values[:-1] + values[1:]) / 2.0 - low) / span

    lower = midpoints[valid][0]
    upper = midpoints[valid][-1]

    atRisk, deaths = riskIndicators(times = node.times, statuses = node.statuses, table = table)

    def surrogate(c: np.ndarray) -> np.ndarray:
        memberships = scipy.special.expit(config.shape * (np.atleast_1d(c)[:, None] - u[None, :]))

        return logrankFromCounts(
            leftAtRisk = memberships @ atRisk,
            leftDeaths = memberships @ deaths,
            table = table
        )

    grid = np.quantile(u, np.linspace(0.0, 1.0, config.gridPoints))
    grid = np.unique(np.concatenate([[lower, upper], np.clip(grid, lower, upper)]))

    gridStatistics = surrogate(grid)

    if np.all(np.isnan(gridStatistics)):
        c = midpoints[valid][np.nanargmax(hard[valid])]

    else:
        b = int(np.nanargmax(gridStatistics))

        c, refined = goldenMaximize(
            f = lambda x: float(surrogate(x)[0]),
            lower = grid[max(b - 1, 0)],
            upper = grid[min(b + 1, len(grid) - 1)],
            tolerance = config.tolerance
        )

        if refined < gridStatistics[b]:
            c = grid[b]

    cutoff = low + c * span

    # The gap the cutoff lands in, as the index of its left value
    gap = int(np.searchsorted(values, cutoff, side = "right")) - 1

    if (gap < 0) or (gap >= len(valid)) or not valid[gap]:
        candidates = np.flatnonzero(valid)

        gap = int(candidates[np.argmin(np.abs(midpoints[candidates] - c))])

        logging.getLogger(__name__).debug(f"Moved sigmoid cutoff {cutoff:.6g} to admissible midpoint of gap {gap}")

        cutoff = (values[gap] + values[gap + 1]) / 2.0

    return SplitResult(
        spec = SplitSpec(variable = variable, cutoff = cutoff),
        statistic = hard[gap],
        method = SplitConfig.Method.Sigmoid
    )

def _canonicalSubset(left: typing.Iterable[int], present: np.ndarray) -> typing.FrozenSet[int]:
    """Normalizes a level subset so it holds the smallest present level

    :param left:
        The left level codes
    :param present:
        The sorted level codes present in the node

    :return typing.FrozenSet[int]:
        The left set, or its complement among the present levels
    """

    left = frozenset(int(code) for code in left)

    if int(present[0]) in left:
        return left

    return frozenset(int(code) for code in present) - left

def subsetSearch(node: Dataset, variable: int, config: SplitConfig) -> SplitResult:
    """Finds the best level-subset split of a nominal covariate

    With L present levels, all 2^(L-1) - 1 subsets holding the smallest
    present level are evaluated. Past maxSubsetLevels levels, the levels are
    instead ordered by their event rate and searched like an ordered
    covariate, with ties broken as in greedy search over the level ranks.

    :param node:
        The node's records
    :param variable:
        The nominal covariate's schema index
    :param config:
        The split settings

    :return SplitResult:
        The best split, or an infeasible result
    """

    codes = node.column(variable).astype(int)

    present, groups = np.unique(codes, return_inverse = True)

    L = len(present)

    table = nodeTable(node = node)

    if (L < 2) or (table is None):
        return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Greedy)

    counts = GroupedCounts(node = node, groups = groups, groupCount = L, table = table)

    if L > config.maxSubsetLevels:
        rates = counts.events / counts.sizes

        # Rank levels by event rate, ties by level code
        order = np.lexsort((present, rates))

        ranks = np.empty(L, dtype = int)
        ranks[order] = np.arange(L)

        ordered = GroupedCounts(node = node, groups = ranks[groups], groupCount = L, table = table)

        statistics, _ = ordered.evaluateOrdered(config = config)

        if np.all(np.isnan(statistics)):
            return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Greedy)

        # Cutoff b sits between ranks b and b + 1
        best = _nearestMedian(statistics = statistics, cutoffs = np.arange(L - 1) + 0.5, z = ranks[groups])

        left = present[order[:best + 1]]

    else:
        # The smallest present level always sits on the left
        masks = np.array(list(itertools.product([0, 1], repeat = L - 1))[:-1], dtype = float)

        candidates = np.hstack([np.ones((len(masks), 1)), masks])

        statistics, _ = counts.evaluate(left = candidates, config = config)

        if np.all(np.isnan(statistics)):
            return SplitResult.infeasible(variable = variable, method = SplitConfig.Method.Greedy)

        best = int(_ties(statistics = statistics)[0])

        left = present[candidates[best] > 0]

    return SplitResult(
        spec = SplitSpec(variable = variable, subset = _canonicalSubset(left = left, present = present)),
        statistic = statistics[best],
        method = SplitConfig.Method.Greedy
    )

def bestSplitForVariable(node: Dataset, variable: int, config: SplitConfig) -> SplitResult:
    """Finds a variable's best split with the search its values call for

    Nominal covariates get subset search. Ordered covariates with at most
    'switch' distinct values in the node are searched greedily, others with
    the sigmoid surrogate, unless the settings force one search.

    :param node:
        The node's records
    :param variable:
        The covariate's schema index
    :param config:
        The split settings

    :return SplitResult:
        The best split, or an infeasible result
    """

    if node.schema[variable].isNominal:
        return subsetSearch(node = node, variable = variable, config = config)

    if config.method == SplitConfig.Method.Greedy:
        return greedySearch(node = node, variable = variable, config = config)

    if config.method == SplitConfig.Method.Sigmoid:
        return sssSearch(node = node, variable = variable, config = config)

    if len(np.unique(node.column(variable))) <= config.switch:
        return greedySearch(node = node, variable = variable, config = config)

    return sssSearch(node = node, variable = variable, config = config)

def bestSplit(node: Dataset, config: SplitConfig, variables: typing.Iterable[int] = None) -> SplitResult:
    """Finds the best split over variables

    Ties go to the lower schema index.

    :param node:
        The node's records
    :param config:
        The split settings
    :param variables:
        The schema indices to consider, all of them if not given

    :return SplitResult:
        The best split, or an infeasible result
    """

    if variables is None:
        variables = range(len(node.schema))

    best = SplitResult.infeasible()

    for variable in variables:
        result = bestSplitForVariable(node = node, variable = variable, config = config)

        if result.feasible and ((not best.feasible) or (result.statistic > best.statistic)):
            best = result

    return best

def splitStatistic(node: Dataset, spec: SplitSpec) -> float:
    """Computes the hard logrank statistic of a fixed rule

    :param node:
        The records to evaluate on
    :param spec:
        The rule

    :return float:
        The statistic, NaN if it is undefined
    """

    try:
        return logrankStatistic(
            membership = spec.goesLeft(node.column(spec.variable)).astype(float),
            times = node.times,
            statuses = node.statuses
        )

    except (DegenerateSplitError, DataError):
        return float("nan")
