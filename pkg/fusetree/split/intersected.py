"""
Variable selection by intersected validation

Greedy searches favour covariates offering many candidate splits. To pick a
node's split variable without that bias, each variable's best split is found
on one resample of the node and frozen, then scored on a second resample
that overlaps the first, and the variable with the best validated statistic
wins. Both resamples have the node's size and keep its event proportion:

1. Partition the node into thirds D1, D2, D3, stratified on status.
2. Training set: D1 plus a bootstrap of size n2 + n3 from D1 + D2.
3. Find every variable's best split on the training set.
4. Validation set: D3, the rows of D2 the training bootstrap missed, and a
   bootstrap from D2 + D3 topping the size back up to n.
5. Score each frozen split on the validation set and keep the best variable.
6. Search that variable again on the whole node.
"""

import logging
import typing

import numpy as np

from fusetree.data import Dataset
from fusetree.data import SampleIndex
from fusetree.data import deriveSeed
from fusetree.data import outOfBag
from fusetree.data import stratifiedBootstrap
from fusetree.data import stratifiedPartition
from fusetree.error import DataError

from .config import SplitConfig
from .search import bestSplit
from .search import bestSplitForVariable
from .search import splitStatistic
from .spec import SplitResult

class IVContext:
    """The resamples and scores behind one intersected-validation split
    """

    def __init__(
        self,
        training: SampleIndex,
        validation: SampleIndex,
        candidates: typing.Dict[int, SplitResult],
        validated: typing.Dict[int, float]
    ) -> None:
        """Creates a new context

        :param self:
            Self
        :param training:
            The training resample's node rows
        :param validation:
            The validation resample's node rows
        :param candidates:
            Each variable's best split on the training resample
        :param validated:
            Each frozen split's statistic on the validation resample

        :return none:
        """

        self.training = training
        self.validation = validation
        self.candidates = candidates
        self.validated = validated

def ivSplit(
    node: Dataset,
    config: SplitConfig,
    seed: int,
    minSize: int = 30,
    minEvents: int = 9
) -> SplitResult:
    """Finds a node's split, choosing its variable by intersected validation

    Nodes smaller than minSize rows or minEvents events, nodes with a single
    covariate, and nodes whose strata can't be split three ways are searched
    plainly instead.

    :param node:
        The node's records
    :param config:
        The split settings
    :param seed:
        The random seed
    :param minSize:
        The fewest rows for validating
    :param minEvents:
        The fewest events for validating

    :return SplitResult:
        The split, with its IVContext attached when validation ran
    """

    logger = logging.getLogger(__name__)

    n = len(node)

    if (n < minSize) or (node.eventCount < minEvents) or (len(node.schema) < 2):
        return bestSplit(node = node, config = config)

    try:
        d1, d2, d3 = stratifiedPartition(data = node, parts = 3, seed = deriveSeed(seed, "iv-partition"))

    except DataError as ex:
        logger.debug(f"Validating a {n}-row node isn't possible ({ex}), searching plainly")

        return bestSplit(node = node, config = config)

    trainingDraw = stratifiedBootstrap(
        pool = d1 + d2,
        data = node,
        m = len(d2) + len(d3),
        seed = deriveSeed(seed, "iv-training")
    )

    training = d1 + trainingDraw

    trainingNode = node.subset(index = training)

    candidates = {}

    for variable in range(len(node.schema)):
        result = bestSplitForVariable(node = trainingNode, variable = variable, config = config)

        if result.feasible:
            candidates[variable] = result

    missed = outOfBag(pool = d2, drawn = trainingDraw)

    validation = d3 + missed

    topUp = n - len(missed) - len(d3)

    if topUp > 0:
        validation = validation + stratifiedBootstrap(
            pool = d2 + d3,
            data = node,
            m = topUp,
            seed = deriveSeed(seed, "iv-validation")
        )

    validationNode = node.subset(index = validation)

    validated = {}

    for variable, result in candidates.items():
        statistic = splitStatistic(node = validationNode, spec = result.spec)

        if not np.isnan(statistic):
            validated[variable] = statistic

    context = IVContext(training = training, validation = validation, candidates = candidates, validated = validated)

    # Best validated statistic first, lower index on ties
    ranking = sorted(validated, key = lambda variable: (-validated[variable], variable))

    for variable in ranking:
        result = bestSplitForVariable(node = node, variable = variable, config = config)

        if result.feasible:
            logger.debug(f"Validation chose variable {variable} (Q' = {validated[variable]:.6g}) among {len(validated)}")

            result.context = context

            return result

    result = SplitResult.infeasible()
    result.context = context

    return result
