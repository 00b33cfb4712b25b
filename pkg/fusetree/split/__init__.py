"""
Node split searches: greedy and sigmoid-surrogate cutoffs, nominal subsets,
and variable selection by intersected validation
"""

from .config import SplitConfig
from .golden import goldenMaximize
from .intersected import IVContext
from .intersected import ivSplit
from .scan import GroupedCounts
from .search import bestSplit
from .search import bestSplitForVariable
from .search import greedySearch
from .search import splitStatistic
from .search import sssSearch
from .search import subsetSearch
from .spec import SplitResult
from .spec import SplitSpec

__all__ = [
    "SplitConfig",
    "SplitResult",
    "SplitSpec",

    "GroupedCounts",
    "goldenMaximize",

    "greedySearch",
    "sssSearch",
    "subsetSearch",
    "bestSplitForVariable",
    "bestSplit",
    "splitStatistic",

    "IVContext",
    "ivSplit",
]
