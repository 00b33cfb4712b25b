"""
Group summaries and bootstrap bias correction
"""

from .bootstrap import BbcReport
from .bootstrap import Replicate
from .bootstrap import bootstrapBiasCorrect
from .bootstrap import confidenceIntervals
from .config import BbcConfig
from .summary import GroupSummary
from .summary import groupFit
from .summary import groupSummaries
from .summary import recordGroups

__all__ = [
    "BbcConfig",
    "BbcReport",
    "GroupSummary",
    "Replicate",

    "bootstrapBiasCorrect",
    "confidenceIntervals",
    "groupFit",
    "groupSummaries",
    "recordGroups",
]
