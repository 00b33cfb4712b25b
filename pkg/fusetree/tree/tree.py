"""
Survival trees

Nodes are numbered heap-style: the root is 1 and node k's children are 2k
(left, the side the split rule holds for) and 2k + 1.
"""

import typing

import numpy as np

from fusetree.data import Dataset
from fusetree.data import Record
from fusetree.data import SampleIndex
from fusetree.data import Schema
from fusetree.error import ConfigError
from fusetree.split import SplitSpec

class TreeNode:
    """A node of a survival tree
    """

    def __init__(
        self,
        id: int,
        depth: int,
        size: int,
        events: int,
        rows: SampleIndex = None,
        split: SplitSpec = None,
        statistic: float = None,
        group: int = None
    ) -> None:
        """Creates a new node

        :param self:
            Self
        :param id:
            The heap number
        :param depth:
            The depth, the root being at 0
        :param size:
            How many training records reached the node
        :param events:
            How many of those had events
        :param rows:
            The training rows, if known
        :param split:
            The split rule, for internal nodes
        :param statistic:
            The split's logrank statistic
        :param group:
            The fused group, for leaves that have one

        :return none:
        """

        self.id = int(id)
        self.depth = int(depth)
        self.size = int(size)
        self.events = int(events)
        self.rows = rows
        self.split = split
        self.statistic = statistic
        self.group = group

    @property
    def isLeaf(self) -> bool:
        return self.split is None

    @property
    def children(self) -> typing.Optional[typing.Tuple[int, int]]:
        if self.isLeaf:
            return None

        return (2 * self.id, 2 * self.id + 1)

    def copy(self) -> "TreeNode":
        return TreeNode(
            id = self.id,
            depth = self.depth,
            size = self.size,
            events = self.events,
            rows = self.rows,
            split = self.split,
            statistic = self.statistic,
            group = self.group
        )

    def toDict(self, schema: Schema) -> dict:
        data = {
            "id": self.id,
            "depth": self.depth,
            "n": self.size,
            "events": self.events,
            "split": self.split.toDict(schema = schema) if self.split is not None else None,
            "statistic": self.statistic,
            "group": self.group,
        }

        return data

    @staticmethod
    def makeFromDict(data: dict, schema: Schema) -> "TreeNode":
        return TreeNode(
            id = data["id"],
            depth = data["depth"],
            size = data["n"],
            events = data["events"],
            split = SplitSpec.makeFromDict(data = data["split"], schema = schema) if data.get("split") else None,
            statistic = data.get("statistic"),
            group = data.get("group")
        )

    def __str__(self) -> str:
        if self.isLeaf:
            return f"node {self.id} (n={self.size}, events={self.events}, group={self.group})"

        return f"node {self.id} (n={self.size}, events={self.events}, {self.split}, Q={self.statistic:.6g})"

class Tree:
    """A binary survival tree
    """

    Root = 1
    """The root's id"""

    def __init__(self, nodes: typing.Iterable[TreeNode], schema: Schema, config: dict = None) -> None:
        """Creates a new tree

        :param self:
            Self
        :param nodes:
            The nodes
        :param schema:
            The covariate schema splits refer to
        :param config:
            The settings the tree was grown with

        :raise ValueError:
            The nodes don't form a tree

        :return none:
        """

        self._nodes = {node.id: node for node in nodes}
        self._schema = schema
        self._config = dict(config) if config is not None else {}

        if Tree.Root not in self._nodes:
            raise ValueError("A tree needs a root node")

        for node in self._nodes.values():
            if (node.id != Tree.Root) and (node.id // 2 not in self._nodes):
                raise ValueError(f"Node {node.id} has no parent")

            if node.children is not None:
                for child in node.children:
                    if child not in self._nodes:
                        raise ValueError(f"Node {node.id} is missing child {child}")

            elif (2 * node.id in self._nodes) or (2 * node.id + 1 in self._nodes):
                raise ValueError(f"Leaf {node.id} has children")

    @property
    def schema(self) -> Schema:
        return self._schema

    @property
    def config(self) -> dict:
        return self._config

    def __getitem__(self, id: int) -> TreeNode:
        return self._nodes[id]

    def __contains__(self, id: int) -> bool:
        return id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def nodes(self) -> typing.List[TreeNode]:
        """Gets our nodes

        :param self:
            Self

        :return typing.List[TreeNode]:
            The nodes, by id
        """

        return [self._nodes[id] for id in sorted(self._nodes)]

    @property
    def leaves(self) -> typing.List[int]:
        """Gets our leaves

        :param self:
            Self

        :return typing.List[int]:
            The leaf ids, ascending
        """

        return [id for id in sorted(self._nodes) if self._nodes[id].isLeaf]

    @property
    def depth(self) -> int:
        return max(node.depth for node in self._nodes.values())

    def descendantLeaves(self, id: int) -> typing.List[int]:
        """Gets the leaves under a node

        :param self:
            Self
        :param id:
            The node

        :return typing.List[int]:
            The leaf ids, ascending
        """

        if self._nodes[id].isLeaf:
            return [id]

        left, right = self._nodes[id].children

        return sorted(self.descendantLeaves(id = left) + self.descendantLeaves(id = right))

    def route(self, record: typing.Union[Record, np.ndarray]) -> int:
        """Sends a record down to its leaf

        :param self:
            Self
        :param record:
            The record, or its covariate vector

        :return int:
            The leaf id
        """

        covariates = record.covariates if isinstance(record, Record) else np.asarray(record, dtype = float)

        node = self._nodes[Tree.Root]

        while not node.isLeaf:
            left = bool(node.split.goesLeft(covariates[node.split.variable:node.split.variable + 1])[0])

            node = self._nodes[node.children[0] if left else node.children[1]]

        return node.id

    def routeAll(self, data: Dataset) -> np.ndarray:
        """Sends every record of a dataset down to its leaf

        :param self:
            Self
        :param data:
            The dataset

        :return np.ndarray:
            Each record's leaf id
        """

        ids = np.full(len(data), Tree.Root, dtype = int)

        # Parents always come before children in id order
        for id in sorted(self._nodes):
            node = self._nodes[id]

            if node.isLeaf:
                continue

            here = ids == id

            if not np.any(here):
                continue

            left = node.split.goesLeft(data.column(node.split.variable)[here])

            ids[np.flatnonzero(here)] = np.where(left, node.children[0], node.children[1])

        return ids

    def leafGroups(self) -> typing.Dict[int, typing.Optional[int]]:
        return {id: self._nodes[id].group for id in self.leaves}

    def shrink(self, depth: int) -> "Tree":
        """Cuts us down to a depth

        :param self:
            Self
        :param depth:
            The deepest remaining nodes' depth

        :return Tree:
            A tree whose nodes at the depth are leaves
        """

        nodes = []

        for node in self.nodes:
            if node.depth > depth:
                continue

            node = node.copy()

            if node.depth == depth:
                node.split = None
                node.statistic = None

            nodes.append(node)

        return Tree(nodes = nodes, schema = self._schema, config = self._config)

    def copy(self) -> "Tree":
        return Tree(nodes = [node.copy() for node in self.nodes], schema = self._schema, config = self._config)

    def toDict(self) -> dict:
        """Creates a dictionary of us

        :param self:
            Self

        :return dict:
            Us
        """

        return {
            "root": Tree.Root,
            "nodes": [node.toDict(schema = self._schema) for node in self.nodes],
            "config": self._config,
        }

    @staticmethod
    def makeFromDict(data: dict, schema: Schema) -> "Tree":
        """Creates a tree from a dictionary

        :param data:
            The dictionary
        :param schema:
            The schema the splits refer to

        :raise ConfigError:
            Invalid tree

        :return Tree:
            The tree
        """

        try:
            return Tree(
                nodes = [TreeNode.makeFromDict(data = node, schema = schema) for node in data["nodes"]],
                schema = schema,
                config = data.get("config")
            )

        except (KeyError, TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid tree: {ex}")

    def __str__(self) -> str:
        lines = []

        for node in self.nodes:
            indent = "    " * node.depth

            if node.isLeaf:
                lines.append(f"{indent}[{node.id}] n={node.size} events={node.events} group={node.group}")
            else:
                lines.append(f"{indent}[{node.id}] {node.split.describe(schema = self._schema)} (Q={node.statistic:.6g})")

        return "\n".join(lines)
