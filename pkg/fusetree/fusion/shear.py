"""
Groupings and tree shearing
"""

import typing

import numpy as np

from fusetree.tree import Tree
from fusetree.tree import TreeNode

class Grouping:
    """An assignment of a tree's leaves to fused groups
    """

    def __init__(self, leafToGroup: typing.Dict[int, int]) -> None:
        """Creates a new grouping

        :param self:
            Self
        :param leafToGroup:
            Each leaf's group

        :raise ValueError:
            Group ids aren't 1 through the group count

        :return none:
        """

        self.leafToGroup = {int(leaf): int(group) for leaf, group in leafToGroup.items()}

        groups = set(self.leafToGroup.values())

        if groups != set(range(1, len(groups) + 1)):
            raise ValueError(f"Group ids must run from 1 to {len(groups)}, got {sorted(groups)}")

    @property
    def count(self) -> int:
        return len(set(self.leafToGroup.values()))

    def groupOf(self, leaf: int) -> int:
        return self.leafToGroup[int(leaf)]

    def groupsOf(self, leafIds: np.ndarray) -> np.ndarray:
        """Maps leaf ids to group ids

        :param self:
            Self
        :param leafIds:
            The leaf ids

        :raise KeyError:
            A leaf isn't grouped

        :return np.ndarray:
            The group ids
        """

        return np.array([self.leafToGroup[int(leaf)] for leaf in leafIds], dtype = int)

    def leavesOf(self, group: int) -> typing.List[int]:
        return sorted(leaf for leaf, g in self.leafToGroup.items() if g == group)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grouping):
            return NotImplemented

        return self.leafToGroup == other.leafToGroup

    def __len__(self) -> int:
        return len(self.leafToGroup)

    def toDict(self) -> typing.Dict[str, int]:
        return {str(leaf): group for leaf, group in sorted(self.leafToGroup.items())}

    @staticmethod
    def makeFromDict(data: typing.Dict[str, int]) -> "Grouping":
        return Grouping(leafToGroup = {int(leaf): int(group) for leaf, group in data.items()})

    @staticmethod
    def single(tree: Tree) -> "Grouping":
        return Grouping(leafToGroup = {leaf: 1 for leaf in tree.leaves})

def shear(tree: Tree, grouping: Grouping) -> Tree:
    """Collapses every subtree whose leaves share one group

    Nodes are visited from the root down; the first node found whose
    descendant leaves all share a group becomes a leaf carrying it. Leaves
    that share a group without sharing such a subtree stay separate.

    :param tree:
        The tree
    :param grouping:
        The grouping of the tree's leaves

    :raise KeyError:
        A leaf isn't grouped

    :return Tree:
        The sheared tree, every leaf carrying its group
    """

    nodes = []

    pending = [Tree.Root]

    while len(pending) > 0:
        node = tree[pending.pop()].copy()

        groups = {grouping.groupOf(leaf = leaf) for leaf in tree.descendantLeaves(id = node.id)}

        if len(groups) == 1:
            node.split = None
            node.statistic = None
            node.group = groups.pop()

        else:
            node.group = None

            pending.extend(node.children)

        nodes.append(node)

    return Tree(nodes = nodes, schema = tree.schema, config = tree.config)
