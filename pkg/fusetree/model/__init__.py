"""
Fitted models, run settings and the end-to-end fit
"""

from .config import RunConfig
from .model import Model
from .pipeline import FitResult
from .pipeline import fitModel

__all__ = [
    "FitResult",
    "Model",
    "RunConfig",

    "fitModel",
]
