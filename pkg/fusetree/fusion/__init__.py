"""
Leaf fusion: sorting, the fused-lasso path and shearing
"""

from .config import FusionConfig
from .lasso import CoxLasso
from .lasso import LassoPath
from .lasso import coxLassoPath
from .lasso import lambdaGrid
from .ordering import LeafOrdering
from .ordering import sortLeaves
from .path import FusionPath
from .path import FusionPattern
from .path import PathPoint
from .path import fusionPath
from .path import relaxedPattern
from .shear import Grouping
from .shear import shear
from .transform import FusionTransform

__all__ = [
    "CoxLasso",
    "FusionConfig",
    "FusionPath",
    "FusionPattern",
    "FusionTransform",
    "Grouping",
    "LassoPath",
    "LeafOrdering",
    "PathPoint",

    "coxLassoPath",
    "fusionPath",
    "lambdaGrid",
    "relaxedPattern",
    "shear",
    "sortLeaves",
]
