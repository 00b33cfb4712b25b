"""
Fusion paths

A tree's sorted leaf blocks are fused by a lasso on the transformed design.
Each penalty's solution maps back to block coefficients, and blocks with
equal coefficients form a group; the reference block's group is the one at
0. Penalties giving the same grouping are collapsed to the smallest of
them, and each distinct grouping gets an unpenalized ("relaxed") Cox refit
with its own Breslow baseline hazard.
"""

import logging
import typing

import numpy as np

from fusetree.data import Dataset
from fusetree.survival import BaselineHazard
from fusetree.survival import CoxFit
from fusetree.survival import PartialLikelihood
from fusetree.survival import breslowHazard
from fusetree.survival import coxFit
from fusetree.tree import Tree
from fusetree.tree import indicatorMatrix

from .config import FusionConfig
from .lasso import coxLassoPath
from .ordering import LeafOrdering
from .ordering import sortLeaves
from .shear import Grouping
from .transform import FusionTransform

ZeroTolerance = 1e-8
"""Lasso coefficients smaller than this count as zero"""

EqualTolerance = 1e-10
"""Block coefficients closer than this share a group"""

class PathPoint:
    """One penalty's lasso solution
    """

    def __init__(self, penalty: float, gamma: np.ndarray, beta: np.ndarray, key: typing.Tuple[int, ...]) -> None:
        """Creates a new path point

        :param self:
            Self
        :param penalty:
            The penalty
        :param gamma:
            The lasso coefficients, small ones zeroed
        :param beta:
            The block coefficients, the reference's 0 first
        :param key:
            Each block's group label, labels numbered by first appearance

        :return none:
        """

        self.penalty = float(penalty)
        self.gamma = gamma
        self.beta = beta
        self.key = key

class FusionPattern:
    """A distinct grouping of leaves along a fusion path
    """

    def __init__(
        self,
        penalty: float,
        point: PathPoint,
        grouping: Grouping,
        relaxed: np.ndarray,
        baseline: BaselineHazard,
        fit: CoxFit
    ) -> None:
        """Creates a new pattern

        :param self:
            Self
        :param penalty:
            The smallest penalty giving the grouping
        :param point:
            The path point at that penalty
        :param grouping:
            The leaf grouping, group 1 having the lowest hazard
        :param relaxed:
            The relaxed refit's log-hazard of each group, group 1's 0 first
        :param baseline:
            The relaxed refit's baseline hazard, for group 1
        :param fit:
            The relaxed Cox fit

        :return none:
        """

        self.penalty = penalty
        self.point = point
        self.grouping = grouping
        self.relaxed = relaxed
        self.baseline = baseline
        self.fit = fit

    @property
    def groupCount(self) -> int:
        return self.grouping.count

    def design(self, leafIds: np.ndarray) -> np.ndarray:
        """Builds the group design for routed records

        :param self:
            Self
        :param leafIds:
            The records' leaves

        :return np.ndarray:
            The n x (K - 1) group dummies, group 1 the reference
        """

        return indicatorMatrix(
            labels = self.grouping.groupsOf(leafIds = leafIds),
            categories = list(range(1, self.groupCount + 1))
        )

    def toDict(self) -> dict:
        return {
            "lambda": self.penalty,
            "group_count": self.groupCount,
            "leaf_to_group": {str(leaf): group for leaf, group in sorted(self.grouping.leafToGroup.items())},
            "relaxed_betas": [float(value) for value in self.relaxed],
        }

class FusionPath:
    """A tree's fusion path
    """

    def __init__(
        self,
        tree: Tree,
        ordering: LeafOrdering,
        transform: typing.Optional[FusionTransform],
        points: typing.List[PathPoint],
        patterns: typing.List[FusionPattern],
        lambdaMax: float,
        clamped: bool = False,
        likelihood: PartialLikelihood = None,
        size: int = 0
    ) -> None:
        """Creates a new fusion path

        :param self:
            Self
        :param tree:
            The fused tree
        :param ordering:
            The tree's leaf ordering
        :param transform:
            The change of variables, if there is more than one block
        :param points:
            The solved path points, penalties descending
        :param patterns:
            The distinct groupings, penalties descending
        :param lambdaMax:
            The data's largest useful penalty
        :param clamped:
            Whether a supplied penalty grid started below lambdaMax
        :param likelihood:
            The block-design partial likelihood
        :param size:
            The training record count

        :return none:
        """

        self.tree = tree
        self.ordering = ordering
        self.transform = transform
        self.points = points
        self.patterns = patterns
        self.lambdaMax = lambdaMax
        self.clamped = clamped

        self._likelihood = likelihood
        self._size = size

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([point.penalty for point in self.points])

    def __len__(self) -> int:
        return len(self.patterns)

    def patternAt(self, penalty: float) -> FusionPattern:
        """Gets the grouping in force at a penalty

        The path point with the nearest penalty decides, so paths solved on a
        shared grid answer exactly and others answer approximately.

        :param self:
            Self
        :param penalty:
            The penalty

        :return FusionPattern:
            The pattern
        """

        lambdas = self.lambdas

        point = self.points[int(np.argmin(np.abs(lambdas - penalty)))]

        for pattern in self.patterns:
            if pattern.point.key == point.key:
                return pattern

        raise KeyError(f"No pattern for lambda {penalty}")

    def patternWithGroups(self, count: int) -> typing.Optional[FusionPattern]:
        """Gets the pattern with a group count, or the fewest groups above it

        :param self:
            Self
        :param count:
            The wanted group count

        :return None:
            No pattern has that many groups
        :return FusionPattern:
            The pattern, largest penalty first among equals
        """

        candidates = [pattern for pattern in self.patterns if pattern.groupCount >= count]

        if len(candidates) < 1:
            return None

        return min(candidates, key = lambda pattern: (pattern.groupCount, -pattern.penalty))

    def fusedObjective(self, beta: np.ndarray, penalty: float) -> float:
        """Evaluates -(2/n) L(b) + lambda sum_k w_k |b_k - b_{k-1}|

        :param self:
            Self
        :param beta:
            The non-reference block coefficients
        :param penalty:
            The penalty

        :return float:
            The objective
        """

        value = self._likelihood.evaluate(beta = beta, derivatives = False)[0]

        return -2.0 / self._size * value + penalty * self.transform.penalty(beta = beta)

    def lassoObjective(self, gamma: np.ndarray, penalty: float) -> float:
        """Evaluates -(2/n) L(g) + lambda ||g||_1 on the transformed design

        :param self:
            Self
        :param gamma:
            The lasso coefficients
        :param penalty:
            The penalty

        :return float:
            The objective
        """

        value = self._likelihood.evaluate(beta = self.transform.toBeta(gamma = gamma), derivatives = False)[0]

        return -2.0 / self._size * value + penalty * float(np.abs(gamma).sum())

    def toDict(self) -> dict:
        return {
            "lambda_max": self.lambdaMax,
            "clamped": self.clamped,
            "patterns": [pattern.toDict() for pattern in self.patterns],
        }

def _groupKey(beta: np.ndarray) -> typing.Tuple[int, ...]:
    """Labels blocks by equal coefficients

    :param beta:
        The block coefficients

    :return typing.Tuple[int, ...]:
        Each block's label, labels numbered by first appearance
    """

    labels = []
    values = []

    for value in beta:
        for label, existing in enumerate(values):
            if abs(value - existing) <= EqualTolerance:
                labels.append(label)
                break

        else:
            labels.append(len(values))
            values.append(value)

    return tuple(labels)

def relaxedPattern(
    ordering: LeafOrdering,
    key: typing.Tuple[int, ...],
    leafIds: np.ndarray,
    data: Dataset,
    penalty: float = 0.0,
    point: PathPoint = None
) -> FusionPattern:
    """Refits a grouping without penalty

    Groups are renumbered by ascending refit log-hazard, ties going to the
    group holding the smaller leaf id.

    :param ordering:
        The leaf ordering the key labels
    :param key:
        Each block's group label
    :param leafIds:
        Each record's leaf
    :param data:
        The records
    :param penalty:
        The pattern's penalty
    :param point:
        The pattern's path point

    :return FusionPattern:
        The refit pattern
    """

    blockLabels = ordering.blockLabels(leafIds = leafIds)

    labels = np.asarray(key)[blockLabels]

    count = max(key) + 1

    fit = coxFit(design = indicatorMatrix(labels = labels, categories = list(range(count))), times = data.times, statuses = data.statuses)

    beta = np.concatenate([[0.0], fit.coefficients])

    smallestLeaf = [min(leaf for k, block in enumerate(ordering.blocks) if key[k] == label for leaf in block) for label in range(count)]

    order = sorted(range(count), key = lambda label: (beta[label], smallestLeaf[label]))

    groupOf = {label: rank + 1 for rank, label in enumerate(order)}

    relaxed = beta[order] - beta[order[0]]

    grouping = Grouping(leafToGroup = {
        leaf: groupOf[key[k]] for k, block in enumerate(ordering.blocks) for leaf in block
    })

    groups = grouping.groupsOf(leafIds = leafIds)

    baseline = breslowHazard(
        beta = relaxed[1:],
        design = indicatorMatrix(labels = groups, categories = list(range(1, count + 1))),
        times = data.times,
        statuses = data.statuses
    )

    return FusionPattern(penalty = penalty, point = point, grouping = grouping, relaxed = relaxed, baseline = baseline, fit = fit)

def fusionPath(tree: Tree, data: Dataset, config: FusionConfig = None, lambdas: np.ndarray = None) -> FusionPath:
    """Computes a tree's fusion path

    :param tree:
        The tree
    :param data:
        The records the tree was grown on
    :param config:
        The fusion settings
    :param lambdas:
        A shared penalty grid to solve on; the data's own grid if not given

    :return FusionPath:
        The path, whose patterns always include the unfused grouping at
        lambda 0 and, on the data's own grid, the single group
    """

    logger = logging.getLogger(__name__)

    if config is None:
        config = FusionConfig()

    leafIds = tree.routeAll(data = data)

    ordering = sortLeaves(tree = tree, data = data, sortBy = config.sortBy)

    if len(ordering) < 2:
        pattern = relaxedPattern(ordering = ordering, key = (0,), leafIds = leafIds, data = data)

        pattern.point = PathPoint(penalty = 0.0, gamma = np.zeros(0), beta = np.zeros(1), key = (0,))

        return FusionPath(
            tree = tree,
            ordering = ordering,
            transform = None,
            points = [pattern.point],
            patterns = [pattern],
            lambdaMax = 0.0,
            size = len(data)
        )

    transform = FusionTransform(beta = ordering.beta)

    blockDesign = indicatorMatrix(labels = ordering.blockLabels(leafIds = leafIds), categories = list(range(len(ordering))))

    lasso = coxLassoPath(
        design = transform.transformDesign(design = blockDesign),
        times = data.times,
        statuses = data.statuses,
        lambdas = lambdas,
        count = config.lambdaCount,
        ratio = config.lambdaRatio
    )

    points = []

    for penalty, gamma in zip(lasso.lambdas, lasso.gammas):
        gamma = np.where(np.abs(gamma) < ZeroTolerance, 0.0, gamma)

        beta = np.concatenate([[0.0], transform.toBeta(gamma = gamma)])

        points.append(PathPoint(penalty = penalty, gamma = gamma, beta = beta, key = _groupKey(beta = beta)))

    # The penalized endpoints are always part of the path
    unfused = tuple(range(len(ordering)))

    if (len(points) < 1) or (points[-1].penalty > 0.0) or (points[-1].key != unfused):
        mple = ordering.beta

        points.append(PathPoint(
            penalty = 0.0,
            gamma = transform.toGamma(beta = mple[1:]),
            beta = mple,
            key = _groupKey(beta = mple)
        ))

        if (len(points) > 1) and (points[-2].penalty == 0.0):
            del points[-2]

    clamped = (lambdas is not None) and (np.max(lambdas) < lasso.lambdaMax)

    if (lambdas is None) and (points[0].key != tuple([0] * len(ordering))):
        points.insert(0, PathPoint(
            penalty = lasso.lambdaMax,
            gamma = np.zeros(transform.size),
            beta = np.zeros(len(ordering)),
            key = tuple([0] * len(ordering))
        ))

    # Smallest penalty per grouping
    smallest = {}

    for point in points:
        smallest[point.key] = point

    patterns = [
        relaxedPattern(ordering = ordering, key = key, leafIds = leafIds, data = data, penalty = point.penalty, point = point)
        for key, point in smallest.items()
    ]

    patterns.sort(key = lambda pattern: -pattern.penalty)

    logger.debug(f"Fusion path over {len(ordering)} blocks has {len(patterns)} distinct groupings")

    return FusionPath(
        tree = tree,
        ordering = ordering,
        transform = transform,
        points = points,
        patterns = patterns,
        lambdaMax = lasso.lambdaMax,
        clamped = bool(clamped),
        likelihood = PartialLikelihood(design = blockDesign, times = data.times, statuses = data.statuses),
        size = len(data)
    )
