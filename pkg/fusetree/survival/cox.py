"""
Cox proportional hazards fitting

The partial likelihood uses the Breslow approximation for tied event times:

    L(b) = sum_k [ sum_{i in D_k} x_i'b - d_k log sum_{j in R_k} exp(x_j'b) ]

Fits run Newton-Raphson from zero with step halving. Coefficients are held
inside [-CoefficientCap, CoefficientCap]; a coefficient that reaches the cap
is reported there and the fit is flagged as diverged, which is how a group
without events (monotone likelihood) shows up.
"""

import logging
import typing

import numpy as np

from .riskTable import buildRiskTable
from .step import BaselineHazard

class CoxFit:
    """The result of a Cox fit
    """

    def __init__(
        self,
        coefficients: np.ndarray,
        covariance: np.ndarray,
        logLikelihood: float,
        gradient: np.ndarray,
        converged: bool,
        iterations: int,
        diverged: bool = False
    ) -> None:
        """Creates a new Cox fit

        :param self:
            Self
        :param coefficients:
            The fitted coefficients
        :param covariance:
            The inverse observed information at the coefficients
        :param logLikelihood:
            The partial log-likelihood at the coefficients
        :param gradient:
            The partial likelihood's gradient at the coefficients
        :param converged:
            Whether the fit met its tolerance
        :param iterations:
            How many Newton iterations were used
        :param diverged:
            Whether a coefficient ran into the cap

        :return none:
        """

        self.coefficients = coefficients
        self.covariance = covariance
        self.logLikelihood = logLikelihood
        self.gradient = gradient
        self.converged = converged
        self.iterations = iterations
        self.diverged = diverged

    @property
    def standardErrors(self) -> np.ndarray:
        """Gets the coefficients' standard errors

        :param self:
            Self

        :return np.ndarray:
            The square roots of the covariance diagonal
        """

        return np.sqrt(np.clip(np.diag(self.covariance), 0.0, None))

    def __str__(self) -> str:
        return (
            f"CoxFit(beta={np.array2string(self.coefficients, precision = 4)}, "
            f"loglik={self.logLikelihood:.6g}, converged={self.converged}, diverged={self.diverged})"
        )

class PartialLikelihood:
    """A Cox partial likelihood over fixed data

    The records are sorted by time once, so repeated evaluations (Newton
    iterations, lasso path points) only pay for the suffix sums.
    """

    def __init__(self, design: np.ndarray, times: np.ndarray, statuses: np.ndarray) -> None:
        """Creates a new partial likelihood

        :param self:
            Self
        :param design:
            The n x p design matrix
        :param times:
            The observed times
        :param statuses:
            The event indicators

        :raise DataError:
            No events

        :return none:
        """

        times = np.asarray(times, dtype = float)
        statuses = np.asarray(statuses, dtype = int)
        design = np.asarray(design, dtype = float).reshape(len(times), -1)

        self._table = buildRiskTable(times = times, statuses = statuses)

        order = np.argsort(times, kind = "stable")

        self._design = design[order]
        self._statuses = statuses[order]

        sortedTimes = times[order]

        self._starts = self._table.riskSetStarts(sortedTimes = sortedTimes)

        # Which event time each death belongs to
        deathRows = np.flatnonzero(self._statuses == 1)
        eventIndex = np.searchsorted(self._table.eventTimes, sortedTimes[deathRows])

        self._deathSums = np.zeros((len(self._table), design.shape[1]))

        np.add.at(self._deathSums, eventIndex, self._design[deathRows])

    @property
    def size(self) -> int:
        return self._design.shape[1]

    @property
    def eventCount(self) -> int:
        return int(self._table.deaths.sum())

    def evaluate(self, beta: np.ndarray, derivatives: bool = True) -> typing.Tuple[float, np.ndarray, np.ndarray]:
        """Evaluates the partial log-likelihood

        :param self:
            Self
        :param beta:
            The coefficients
        :param derivatives:
            Whether to compute the gradient and Hessian

        :return float:
            The partial log-likelihood
        :return np.ndarray:
            The gradient, or None
        :return np.ndarray:
            The Hessian, or None
        """

        beta = np.asarray(beta, dtype = float).reshape(-1)

        eta = self._design @ beta

        shift = eta.max() if len(eta) > 0 else 0.0

        risk = np.exp(eta - shift)

        # Suffix sums over the time-sorted records give every risk set at once
        s0 = np.cumsum(risk[::-1])[::-1][self._starts]

        d = self._table.deaths

        logLikelihood = float((self._deathSums @ beta).sum() - (d * (np.log(s0) + shift)).sum())

        if not derivatives:
            return logLikelihood, None, None

        weighted = risk[:, None] * self._design

        s1 = np.cumsum(weighted[::-1], axis = 0)[::-1][self._starts]

        outer = weighted[:, :, None] * self._design[:, None, :]

        s2 = np.cumsum(outer[::-1], axis = 0)[::-1][self._starts]

        mean = s1 / s0[:, None]

        gradient = (self._deathSums - d[:, None] * mean).sum(axis = 0)

        hessian = -(d[:, None, None] * (s2 / s0[:, None, None] - mean[:, :, None] * mean[:, None, :])).sum(axis = 0)

        return logLikelihood, gradient, hessian

def _invert(matrix: np.ndarray) -> np.ndarray:
    """Inverts a symmetric matrix, falling back to the pseudo-inverse

    :param matrix:
        The matrix

    :return np.ndarray:
        Its inverse
    """

    try:
        inverse = np.linalg.inv(matrix)

        if np.all(np.isfinite(inverse)):
            return (inverse + inverse.T) / 2.0

    except np.linalg.LinAlgError:
        pass

    inverse = np.linalg.pinv(matrix, hermitian = True)

    return (inverse + inverse.T) / 2.0

MaxIterations = 50
"""The most Newton iterations a fit may use"""

RelativeTolerance = 1e-9
"""The relative log-likelihood change that counts as converged"""

GradientTolerance = 1e-6
"""The gradient max-norm that counts as converged"""

CoefficientCap = 15.0
"""The largest coefficient magnitude before a fit counts as diverged"""

def partialLikelihood(design: np.ndarray, times: np.ndarray, statuses: np.ndarray, beta: np.ndarray) -> float:
    """Evaluates the Breslow partial log-likelihood

    :param design:
        The n x p design matrix
    :param times:
        The observed times
    :param statuses:
        The event indicators
    :param beta:
        The coefficients

    :return float:
        The partial log-likelihood
    """

    likelihood = PartialLikelihood(design = design, times = times, statuses = statuses)

    return likelihood.evaluate(beta = beta, derivatives = False)[0]

def coxFit(design: np.ndarray, times: np.ndarray, statuses: np.ndarray) -> CoxFit:
    """Fits a Cox model by Newton-Raphson

    :param design:
        The n x p design matrix, without an intercept
    :param times:
        The observed times
    :param statuses:
        The event indicators

    :raise DataError:
        No events

    :return CoxFit:
        The fit
    """

    logger = logging.getLogger(__name__)

    likelihood = PartialLikelihood(design = design, times = times, statuses = statuses)

    p = likelihood.size

    beta = np.zeros(p)

    logLikelihood, gradient, hessian = likelihood.evaluate(beta = beta)

    if p < 1:
        return CoxFit(
            coefficients = beta,
            covariance = np.zeros((0, 0)),
            logLikelihood = logLikelihood,
            gradient = gradient,
            converged = True,
            iterations = 0
        )

    capped = np.zeros(p, dtype = bool)

    converged = False
    iterations = 0
    polishing = 0

    while iterations < MaxIterations:
        # Coefficients stuck at the cap stay there while the rest keep moving
        capped = capped | ((np.abs(beta) >= CoefficientCap) & (np.sign(beta) == np.sign(gradient)))

        free = ~capped

        if (not np.any(free)) or (np.max(np.abs(gradient[free])) <= GradientTolerance):
            converged = True
            break

        iterations += 1

        step = np.zeros(p)

        try:
            step[free] = np.linalg.solve(-hessian[np.ix_(free, free)], gradient[free])

        except np.linalg.LinAlgError:
            step[free] = np.linalg.lstsq(-hessian[np.ix_(free, free)], gradient[free], rcond = None)[0]

        scale = 1.0

        for _ in range(40):
            candidate = np.clip(beta + scale * step, -CoefficientCap, CoefficientCap)

            candidateLikelihood = likelihood.evaluate(beta = candidate, derivatives = False)[0]

            if candidateLikelihood >= logLikelihood - 1e-12 * abs(logLikelihood):
                break

            scale /= 2.0

        else:
            logger.debug(f"Step halving failed to improve the likelihood at iteration {iterations}")
            break

        change = abs(candidateLikelihood - logLikelihood) / (abs(logLikelihood) + 1e-10)

        beta = candidate

        logLikelihood, gradient, hessian = likelihood.evaluate(beta = beta)

        # A flat likelihood still gets a couple of full steps to settle the
        # gradient
        if change < RelativeTolerance:
            polishing += 1

            if polishing > 2:
                break

    diverged = bool(np.any(np.abs(beta) >= CoefficientCap))

    if not converged:
        free = ~capped
        converged = (not np.any(free)) or (np.max(np.abs(gradient[free])) <= GradientTolerance)

    if diverged:
        logger.warning(f"Cox fit diverged; coefficients {np.flatnonzero(np.abs(beta) >= CoefficientCap).tolist()} held at the cap")

    elif not converged:
        logger.warning(f"Cox fit didn't converge in {iterations} iterations (gradient {np.max(np.abs(gradient)):.3g})")

    return CoxFit(
        coefficients = beta,
        covariance = _invert(-hessian),
        logLikelihood = logLikelihood,
        gradient = gradient,
        converged = converged and not diverged,
        iterations = iterations,
        diverged = diverged
    )

def breslowHazard(
    beta: typing.Union[CoxFit, np.ndarray],
    design: np.ndarray,
    times: np.ndarray,
    statuses: np.ndarray
) -> BaselineHazard:
    """Estimates the Breslow cumulative baseline hazard

    The hazard's floor is half of one record's share, 0.5 / n.

    :param beta:
        The coefficients, or a fit holding them
    :param design:
        The n x p design matrix the coefficients apply to
    :param times:
        The observed times
    :param statuses:
        The event indicators

    :return BaselineHazard:
        The cumulative baseline hazard
    """

    if isinstance(beta, CoxFit):
        beta = beta.coefficients

    times = np.asarray(times, dtype = float)
    design = np.asarray(design, dtype = float).reshape(len(times), -1)

    table = buildRiskTable(times = times, statuses = statuses)

    order = np.argsort(times, kind = "stable")

    risk = np.exp(design[order] @ np.asarray(beta, dtype = float).reshape(-1))

    s0 = np.cumsum(risk[::-1])[::-1][table.riskSetStarts(sortedTimes = times[order])]

    return BaselineHazard(
        times = table.eventTimes,
        values = np.cumsum(table.deaths / s0),
        floor = 0.5 / len(times)
    )
