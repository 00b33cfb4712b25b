"""
Validated deviance

    D = 2 sum_i [ L0(T_i) exp(x_i'b) - status_i (1 + x_i'b + log L0(T_i)) ]

with L0 the training baseline hazard, floored before the logarithm so held
out events earlier than every training event stay finite. The deviance is a
sum over records, so it adds up across disjoint validation sets.
"""

import numpy as np

from .step import BaselineHazard

def devianceTerms(
    baseline: BaselineHazard,
    beta: np.ndarray,
    design: np.ndarray,
    times: np.ndarray,
    statuses: np.ndarray
) -> np.ndarray:
    """Gets each record's deviance contribution

    :param baseline:
        The training cumulative baseline hazard
    :param beta:
        The training coefficients
    :param design:
        The validation design matrix
    :param times:
        The validation times
    :param statuses:
        The validation event indicators

    :return np.ndarray:
        The per-record terms, summing to the deviance
    """

    times = np.asarray(times, dtype = float)
    statuses = np.asarray(statuses, dtype = float)
    design = np.asarray(design, dtype = float).reshape(len(times), -1)

    eta = design @ np.asarray(beta, dtype = float).reshape(-1)

    hazard = np.asarray(baseline(times), dtype = float)

    # Censored records never need the log, so only events see the floor
    logHazard = np.log(np.where(statuses == 1, np.maximum(hazard, baseline.floor), 1.0))

    return 2.0 * (hazard * np.exp(eta) - statuses * (1.0 + eta + logHazard))

def deviance(
    baseline: BaselineHazard,
    beta: np.ndarray,
    design: np.ndarray,
    times: np.ndarray,
    statuses: np.ndarray
) -> float:
    """Computes the validated deviance

    :param baseline:
        The training cumulative baseline hazard
    :param beta:
        The training coefficients
    :param design:
        The validation design matrix
    :param times:
        The validation times
    :param statuses:
        The validation event indicators

    :return float:
        The deviance
    """

    return float(devianceTerms(
        baseline = baseline,
        beta = beta,
        design = design,
        times = times,
        statuses = statuses
    ).sum())
