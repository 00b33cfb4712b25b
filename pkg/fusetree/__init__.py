"""
Survival trees with logrank splitting, fused leaves and bias-corrected group
inference
"""

from . import error
from . import data
from . import survival
from . import split
from . import tree
from . import fusion
from . import selection
from . import inference
from . import bench
from . import model
from . import cache
from . import config
from . import utils

__version__ = "1.0.0"

__all__ = [
    "bench",
    "cache",
    "config",
    "data",
    "error",
    "fusion",
    "inference",
    "model",
    "selection",
    "split",
    "survival",
    "tree",
    "utils",
]
