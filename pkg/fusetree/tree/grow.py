"""
Growing initial trees
"""

import logging

import numpy as np

from fusetree.data import Dataset
from fusetree.data import SampleIndex
from fusetree.data import deriveSeed
from fusetree.split import SplitConfig
from fusetree.split import bestSplit
from fusetree.split import ivSplit

from .config import GrowConfig
from .tree import Tree
from .tree import TreeNode

def grow(
    data: Dataset,
    growConfig: GrowConfig,
    splitConfig: SplitConfig,
    seed: int,
    mode: str = None
) -> Tree:
    """Grows a tree by recursive logrank splitting

    A node stays a leaf when it is at the maximum depth, has fewer than the
    minimum records or events, or has no admissible split. Each node's
    randomness comes from a seed derived from its id, so the tree doesn't
    depend on the order nodes are visited in.

    :param data:
        The training records
    :param growConfig:
        The growth settings
    :param splitConfig:
        The split settings
    :param seed:
        The random seed
    :param mode:
        'iv' or 'plain', overriding the growth settings' mode

    :return Tree:
        The tree; a root-only tree if nothing can be split
    """

    logger = logging.getLogger(__name__)

    if mode is None:
        mode = growConfig.mode

    nodes = []

    pending = [(Tree.Root, 0, data.allRows())]

    while len(pending) > 0:
        id, depth, rows = pending.pop()

        node = data.subset(index = rows)

        treeNode = TreeNode(id = id, depth = depth, size = len(node), events = node.eventCount, rows = rows)

        nodes.append(treeNode)

        if (depth >= growConfig.maxDepth) or (len(node) < growConfig.minNodeSize) or (node.eventCount < growConfig.minNodeEvents):
            continue

        if mode == GrowConfig.Mode.Intersected:
            result = ivSplit(
                node = node,
                config = splitConfig,
                seed = deriveSeed(seed, "node", id),
                minSize = growConfig.ivMinSize,
                minEvents = growConfig.ivMinEvents
            )

        else:
            result = bestSplit(node = node, config = splitConfig)

        if not result.feasible:
            logger.debug(f"Node {id} has no admissible split")

            continue

        left = result.spec.goesLeft(node.column(result.spec.variable))

        treeNode.split = result.spec
        treeNode.statistic = result.statistic

        logger.debug(f"Split node {id} ({len(node)} rows) on {result.spec} with Q = {result.statistic:.6g}")

        pending.append((2 * id + 1, depth + 1, SampleIndex(indices = rows.indices[~left])))
        pending.append((2 * id, depth + 1, SampleIndex(indices = rows.indices[left])))

    tree = Tree(
        nodes = nodes,
        schema = data.schema,
        config = {"grow": growConfig.toDict(), "split": splitConfig.toDict(), "mode": mode, "seed": int(seed)}
    )

    logger.info(f"Grew a tree of {len(tree.leaves)} leaves and depth {tree.depth} from {len(data)} rows")

    return tree
