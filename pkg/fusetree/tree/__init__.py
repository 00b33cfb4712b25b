"""
Survival trees: growing, routing and serializing
"""

from .config import GrowConfig
from .design import indicatorMatrix
from .design import leafMemberships
from .grow import grow
from .tree import Tree
from .tree import TreeNode

__all__ = [
    "GrowConfig",
    "Tree",
    "TreeNode",

    "grow",

    "indicatorMatrix",
    "leafMemberships",
]
