"""
Penalty selection by test sample, cross-validation or information criteria
"""

from .config import PipelineConfig
from .config import SelectConfig
from .report import SelectionReport
from .select import Selection
from .select import growInitial
from .select import patternDeviance
from .select import select
from .select import selectCv
from .select import selectIc
from .select import selectTestSample

__all__ = [
    "PipelineConfig",
    "SelectConfig",
    "Selection",
    "SelectionReport",

    "growInitial",
    "patternDeviance",
    "select",
    "selectCv",
    "selectIc",
    "selectTestSample",
]
