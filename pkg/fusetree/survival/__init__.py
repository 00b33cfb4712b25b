"""
Survival analysis primitives: risk tables, the logrank statistic,
Kaplan-Meier curves, Cox fits, Breslow hazards, deviance and concordance
"""

from .concordance import concordance
from .cox import CoxFit
from .cox import PartialLikelihood
from .cox import breslowHazard
from .cox import coxFit
from .cox import partialLikelihood
from .deviance import deviance
from .deviance import devianceTerms
from .kaplanMeier import kaplanMeier
from .logrank import logrankFromCounts
from .logrank import logrankStatistic
from .logrank import riskIndicators
from .riskTable import RiskTable
from .riskTable import buildRiskTable
from .step import BaselineHazard
from .step import StepFunction
from .step import SurvivalCurve

__all__ = [
    "RiskTable",
    "buildRiskTable",

    "logrankFromCounts",
    "logrankStatistic",
    "riskIndicators",

    "StepFunction",
    "SurvivalCurve",
    "BaselineHazard",
    "kaplanMeier",

    "CoxFit",
    "PartialLikelihood",
    "coxFit",
    "partialLikelihood",
    "breslowHazard",

    "deviance",
    "devianceTerms",

    "concordance",
]
