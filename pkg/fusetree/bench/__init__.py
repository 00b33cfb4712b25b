"""
Simulation models and studies
"""

from .censoring import calibrateCensoring
from .censoring import censoredFraction
from .censoring import simulate
from .config import BenchConfig
from .harness import runBiasStudy
from .harness import runComparison
from .harness import runSplitStudy
from .harness import selectionFrequencies
from .harness import selectionScenarios
from .metrics import BenchMetrics
from .metrics import BiasMetrics
from .metrics import ReplicateResult
from .metrics import selectionFlags
from .metrics import usedVariables
from .models import Comparison
from .models import SimModel
from .models import cutoffModel
from .models import getModel
from .models import selectionModel
from .models import selectionSplits

__all__ = [
    "BenchConfig",
    "BenchMetrics",
    "BiasMetrics",
    "ReplicateResult",
    "SimModel",

    "Comparison",
    "cutoffModel",
    "getModel",
    "selectionModel",
    "selectionSplits",

    "calibrateCensoring",
    "censoredFraction",
    "simulate",

    "selectionFlags",
    "usedVariables",

    "runBiasStudy",
    "runComparison",
    "runSplitStudy",
    "selectionFrequencies",
    "selectionScenarios",
]
