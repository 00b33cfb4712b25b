import numpy as np
import pytest

from fusetree.error import ConfigError
from fusetree.split import SplitConfig
from fusetree.split import SplitSpec
from fusetree.tree import GrowConfig
from fusetree.tree import Tree
from fusetree.tree import TreeNode
from fusetree.tree import grow
from fusetree.tree import indicatorMatrix
from fusetree.tree import leafMemberships

class TestGrowConfig:
    def test_rejects_bad_mode(self):
        with pytest.raises(ConfigError):
            GrowConfig(mode = "random")

    def test_rejects_negative_depth(self):
        with pytest.raises(ConfigError):
            GrowConfig(maxDepth = -1)

class TestTreeShape:
    def test_needs_root(self):
        with pytest.raises(ValueError):
            Tree(nodes = [TreeNode(id = 2, depth = 1, size = 1, events = 1)], schema = None)

    def test_missing_child(self):
        root = TreeNode(id = 1, depth = 0, size = 2, events = 1, split = SplitSpec(variable = 0, cutoff = 0.5))

        with pytest.raises(ValueError):
            Tree(nodes = [root, TreeNode(id = 2, depth = 1, size = 1, events = 1)], schema = None)

    def test_missing_parent(self):
        with pytest.raises(ValueError):
            Tree(nodes = [TreeNode(id = 1, depth = 0, size = 2, events = 1), TreeNode(id = 6, depth = 2, size = 1, events = 1)], schema = None)

    def test_heap_numbering(self, fourLeafTree):
        assert fourLeafTree.leaves == [4, 5, 6, 7]
        assert fourLeafTree[2].children == (4, 5)
        assert fourLeafTree.depth == 2
        assert fourLeafTree.descendantLeaves(id = 3) == [6, 7]

class TestRouting:
    def test_route_matches_route_all(self, fourLeafTree, cutoffData):
        leaves = fourLeafTree.routeAll(data = cutoffData)

        for i in range(0, len(cutoffData), 17):
            assert fourLeafTree.route(record = cutoffData.record(index = i)) == leaves[i]

    def test_route_follows_cutoffs(self, fourLeafTree):
        assert fourLeafTree.route(record = np.array([0.1])) == 4
        assert fourLeafTree.route(record = np.array([0.25])) == 4
        assert fourLeafTree.route(record = np.array([0.3])) == 5
        assert fourLeafTree.route(record = np.array([0.6])) == 6
        assert fourLeafTree.route(record = np.array([0.9])) == 7

    def test_leaf_sizes(self, fourLeafTree, cutoffData):
        leaves = fourLeafTree.routeAll(data = cutoffData)

        for leaf in fourLeafTree.leaves:
            assert np.sum(leaves == leaf) == fourLeafTree[leaf].size

    def test_shrink(self, fourLeafTree, cutoffData):
        shrunk = fourLeafTree.shrink(depth = 1)

        assert shrunk.leaves == [2, 3]
        assert np.array_equal(shrunk.routeAll(data = cutoffData), np.where(cutoffData.column(0) <= 0.5, 2, 3))
        assert fourLeafTree.leaves == [4, 5, 6, 7]

    def test_dict_round_trip_routes_alike(self, fourLeafTree, cutoffData):
        loaded = Tree.makeFromDict(data = fourLeafTree.toDict(), schema = cutoffData.schema)

        assert np.array_equal(loaded.routeAll(data = cutoffData), fourLeafTree.routeAll(data = cutoffData))

    def test_invalid_dict(self, cutoffData):
        with pytest.raises(ConfigError):
            Tree.makeFromDict(data = {"nodes": []}, schema = cutoffData.schema)

class TestGrow:
    def test_plain_tree_finds_cutoff(self, cutoffData):
        tree = grow(data = cutoffData, growConfig = GrowConfig(maxDepth = 2, mode = GrowConfig.Mode.Plain), splitConfig = SplitConfig(), seed = 0)

        assert not tree[1].isLeaf
        assert tree[1].split.cutoff == pytest.approx(0.5, abs = 0.1)
        assert tree.depth <= 2

    def test_leaves_partition_rows(self, mixedData):
        tree = grow(data = mixedData, growConfig = GrowConfig(maxDepth = 3), splitConfig = SplitConfig(), seed = 1)

        rows = np.concatenate([tree[leaf].rows.indices for leaf in tree.leaves])

        assert sorted(rows) == list(range(len(mixedData)))
        assert sum(tree[leaf].size for leaf in tree.leaves) == len(mixedData)
        assert sum(tree[leaf].events for leaf in tree.leaves) == mixedData.eventCount

    def test_children_meet_minima(self, mixedData):
        splitConfig = SplitConfig()

        tree = grow(data = mixedData, growConfig = GrowConfig(maxDepth = 3), splitConfig = splitConfig, seed = 1)

        for node in tree.nodes:
            if node.id != Tree.Root:
                assert node.size >= splitConfig.minChildSize
                assert node.events >= splitConfig.minChildEvents

    def test_reproducible(self, mixedData):
        growConfig = GrowConfig(maxDepth = 3)

        first = grow(data = mixedData, growConfig = growConfig, splitConfig = SplitConfig(), seed = 5)
        second = grow(data = mixedData, growConfig = growConfig, splitConfig = SplitConfig(), seed = 5)

        assert first.toDict() == second.toDict()

    def test_depth_zero(self, mixedData):
        tree = grow(data = mixedData, growConfig = GrowConfig(maxDepth = 0), splitConfig = SplitConfig(), seed = 0)

        assert tree.leaves == [1]

class TestDesign:
    def test_reference_coding(self):
        design = indicatorMatrix(labels = np.array([4, 5, 6, 4]), categories = [4, 5, 6])

        assert design.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            indicatorMatrix(labels = np.array([1, 9]), categories = [1, 2])

    def test_single_category(self):
        assert indicatorMatrix(labels = np.array([1, 1]), categories = [1]).shape == (2, 0)

    def test_leaf_memberships(self, fourLeafTree, cutoffData):
        design = leafMemberships(tree = fourLeafTree, data = cutoffData, order = [6, 4, 5, 7])

        leaves = fourLeafTree.routeAll(data = cutoffData)

        assert design.shape == (len(cutoffData), 3)
        assert np.array_equal(design[:, 0], (leaves == 4).astype(float))
        assert np.all(design[leaves == 6].sum(axis = 1) == 0.0)
