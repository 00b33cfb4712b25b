"""
Report writing utilities
"""

from .report import FloatFormat
from .report import roundFloats
from .report import writeCsv
from .report import writeJson

__all__ = [
    "FloatFormat",

    "roundFloats",
    "writeCsv",
    "writeJson",
]
