"""
The Kaplan-Meier estimator
"""

import numpy as np

from .riskTable import buildRiskTable
from .step import SurvivalCurve

def kaplanMeier(times: np.ndarray, statuses: np.ndarray) -> SurvivalCurve:
    """Estimates a survival curve

    :param times:
        The observed times
    :param statuses:
        The event indicators

    :raise ValueError:
        No records

    :return SurvivalCurve:
        The product-limit curve, constant 1 if everything is censored
    """

    statuses = np.asarray(statuses)

    if len(statuses) < 1:
        raise ValueError("Kaplan-Meier needs at least one record")

    if not np.any(statuses == 1):
        return SurvivalCurve(times = [], values = [])

    table = buildRiskTable(times = times, statuses = statuses)

    return SurvivalCurve(
        times = table.eventTimes,
        values = np.cumprod(1.0 - table.deaths / table.atRisk)
    )
