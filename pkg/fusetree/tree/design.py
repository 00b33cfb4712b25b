"""
Dummy design matrices for leaf and group memberships
"""

import typing

import numpy as np

from fusetree.data import Dataset

from .tree import Tree

def indicatorMatrix(labels: np.ndarray, categories: typing.Sequence[int]) -> np.ndarray:
    """Builds a reference-coded indicator matrix

    :param labels:
        Each record's category
    :param categories:
        The categories in column order, the first being the reference

    :raise ValueError:
        A label isn't among the categories

    :return np.ndarray:
        An n x (K - 1) 0/1 matrix, one column per non-reference category
    """

    labels = np.asarray(labels)

    if not np.all(np.isin(labels, categories)):
        raise ValueError(f"Labels {sorted(set(labels.tolist()) - set(categories))} aren't among the categories")

    return (labels[:, None] == np.asarray(categories[1:])[None, :]).astype(float).reshape(len(labels), len(categories) - 1)

def leafMemberships(tree: Tree, data: Dataset, order: typing.Sequence[int] = None) -> np.ndarray:
    """Builds a leaf dummy design for a dataset

    :param tree:
        The tree
    :param data:
        The records to route
    :param order:
        The leaves in column order, reference first; the tree's leaf order if
        not given

    :return np.ndarray:
        The n x (K - 1) design, n x 0 for a single leaf
    """

    if order is None:
        order = tree.leaves

    return indicatorMatrix(labels = tree.routeAll(data = data), categories = list(order))
