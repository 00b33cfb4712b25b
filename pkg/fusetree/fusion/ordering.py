"""
Leaf ordering

Leaves are fused along a chain, so they are first sorted by hazard. A Cox
model on leaf dummies gives each leaf's log-hazard; the lowest-hazard leaf
becomes the reference at 0 and the rest follow in ascending order. Leaves
that can't be told apart are pre-fused into blocks: leaves without events
(whose coefficients would run off to minus infinity) join their nearest
neighbour in Kaplan-Meier order, and neighbours whose estimates tie join
each other. The fusion chain then runs over blocks.
"""

import logging
import typing

import numpy as np

from fusetree.data import Dataset
from fusetree.survival import CoxFit
from fusetree.survival import coxFit
from fusetree.survival import kaplanMeier
from fusetree.tree import Tree
from fusetree.tree import indicatorMatrix

from .config import FusionConfig

TieTolerance = 1e-8
"""Neighbouring estimates closer than this are pre-fused"""

class LeafOrdering:
    """Leaves sorted by hazard, grouped into pre-fused blocks
    """

    def __init__(self, blocks: typing.List[typing.Tuple[int, ...]], beta: np.ndarray, fit: CoxFit = None) -> None:
        """Creates a new leaf ordering

        :param self:
            Self
        :param blocks:
            The pre-fused blocks of leaf ids, reference block first
        :param beta:
            Each block's estimated log-hazard relative to the reference
        :param fit:
            The Cox fit the estimates came from

        :return none:
        """

        self.blocks = [tuple(block) for block in blocks]
        self.beta = np.asarray(beta, dtype = float)
        self.fit = fit

    @property
    def leaves(self) -> typing.List[int]:
        return [leaf for block in self.blocks for leaf in block]

    @property
    def reference(self) -> int:
        return self.blocks[0][0]

    def blockOf(self) -> typing.Dict[int, int]:
        """Gets each leaf's block index

        :param self:
            Self

        :return typing.Dict[int, int]:
            The block index of every leaf
        """

        return {leaf: k for k, block in enumerate(self.blocks) for leaf in block}

    def blockLabels(self, leafIds: np.ndarray) -> np.ndarray:
        """Maps leaf ids to block indices

        :param self:
            Self
        :param leafIds:
            The leaf ids

        :return np.ndarray:
            The block indices
        """

        blockOf = self.blockOf()

        return np.array([blockOf[int(leaf)] for leaf in leafIds], dtype = int)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return ", ".join(f"{list(block)}: {beta:.4g}" for block, beta in zip(self.blocks, self.beta))

def _survivalKey(times: np.ndarray, statuses: np.ndarray) -> typing.Tuple[float, float]:
    """Gets a sort key for how long a block's records live

    :param times:
        The block's times
    :param statuses:
        The block's event indicators

    :return float:
        The median survival, infinite if never reached
    :return float:
        The survival at the last observed time
    """

    curve = kaplanMeier(times = times, statuses = statuses)

    median = curve.median()

    return (median if median is not None else np.inf, float(curve(times.max())))

def _mergeNeighbour(blocks: typing.List[typing.List[int]], target: int, keys: typing.List[tuple]) -> typing.List[typing.List[int]]:
    """Merges a block into its nearest neighbour by survival

    :param blocks:
        The blocks, in survival order
    :param target:
        The block to merge
    :param keys:
        The blocks' survival keys

    :return typing.List[typing.List[int]]:
        The blocks, with the target merged
    """

    neighbours = [k for k in (target - 1, target + 1) if 0 <= k < len(blocks)]

    nearest = min(neighbours, key = lambda k: (abs(keys[k][1] - keys[target][1]), k))

    merged = [list(block) for block in blocks]
    merged[nearest] = sorted(merged[nearest] + merged[target])

    del merged[target]

    return merged

def sortLeaves(tree: Tree, data: Dataset, sortBy: str = FusionConfig.SortBy.Mple) -> LeafOrdering:
    """Sorts a tree's leaves by hazard

    :param tree:
        The tree
    :param data:
        The records the tree was grown on
    :param sortBy:
        'mple' to sort by the Cox estimates, 'median' to sort by descending
        Kaplan-Meier median survival

    :return LeafOrdering:
        The ordering
    """

    logger = logging.getLogger(__name__)

    labels = tree.routeAll(data = data)

    def keysOf(blocks: typing.List[typing.List[int]]) -> typing.List[tuple]:
        keys = []

        for block in blocks:
            mask = np.isin(labels, block)

            keys.append(_survivalKey(times = data.times[mask], statuses = data.statuses[mask]))

        return keys

    def surviving(blocks: typing.List[typing.List[int]]) -> typing.List[typing.List[int]]:
        keys = keysOf(blocks = blocks)

        # Longest-lived first, leaf id breaking ties
        order = sorted(range(len(blocks)), key = lambda k: (-keys[k][0], -keys[k][1], blocks[k][0]))

        return [blocks[k] for k in order], [keys[k] for k in order]

    blocks = [[leaf] for leaf in tree.leaves if np.any(labels == leaf)]

    # Pre-fuse blocks without events
    while len(blocks) > 1:
        blocks, keys = surviving(blocks = blocks)

        empty = [k for k, block in enumerate(blocks) if data.statuses[np.isin(labels, block)].sum() < 1]

        if len(empty) < 1:
            break

        logger.debug(f"Pre-fusing event-free leaves {blocks[empty[0]]}")

        blocks = _mergeNeighbour(blocks = blocks, target = empty[0], keys = keys)

    # Leaves no record reaches ride along with the reference block
    unreached = [leaf for leaf in tree.leaves if not np.any(labels == leaf)]

    fit = None

    while True:
        if len(blocks) < 2:
            return LeafOrdering(blocks = [sorted(sum(blocks, []) + unreached)], beta = np.zeros(1), fit = fit)

        # Fitting in survival order puts the longest-lived block at the
        # reference, so a diverged coefficient points at its own block
        blocks, keys = surviving(blocks = blocks)

        blockOf = {leaf: k for k, block in enumerate(blocks) for leaf in block}

        design = indicatorMatrix(labels = np.array([blockOf[int(leaf)] for leaf in labels]), categories = list(range(len(blocks))))

        fit = coxFit(design = design, times = data.times, statuses = data.statuses)

        if not fit.diverged:
            break

        capped = np.flatnonzero(np.abs(fit.coefficients) >= np.max(np.abs(fit.coefficients)) - 1e-12)

        logger.warning(f"Leaf blocks {[blocks[k + 1] for k in capped]} diverged, pre-fusing with a neighbour")

        blocks = _mergeNeighbour(blocks = blocks, target = int(capped[0]) + 1, keys = keys)

    beta = np.concatenate([[0.0], fit.coefficients])

    if sortBy == FusionConfig.SortBy.Median:
        sortedBlocks, _ = surviving(blocks = blocks)

        order = [blocks.index(block) for block in sortedBlocks]

    else:
        order = sorted(range(len(blocks)), key = lambda k: (beta[k], min(blocks[k])))

    blocks = [blocks[k] for k in order]
    beta = beta[order] - beta[order[0]]

    # Pre-fuse neighbours that tie
    merged = [sorted(list(blocks[0]) + unreached)]
    mergedBeta = [beta[0]]

    for block, value in zip(blocks[1:], beta[1:]):
        if abs(value - mergedBeta[-1]) < TieTolerance:
            merged[-1] = sorted(merged[-1] + list(block))
        else:
            merged.append(list(block))
            mergedBeta.append(value)

    ordering = LeafOrdering(blocks = merged, beta = np.array(mergedBeta), fit = fit)

    logger.debug(f"Sorted leaves: {ordering}")

    return ordering
