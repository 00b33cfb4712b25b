"""
The Cox lasso path

Solves

    min_g  -(2/n) L(g) + lambda ||g||_1

along a decreasing grid of penalties with warm starts. Each solve is a
proximal Newton method: the smooth part is replaced by its second-order
expansion at the current point and that penalized quadratic is minimized by
cyclic coordinate descent with soft-thresholding, followed by a backtracking
line search on the true objective. Every solution is checked against the
lasso optimality conditions.
"""

import logging
import typing

import numpy as np

from fusetree.error import NumericalError
from fusetree.survival import PartialLikelihood

KktTolerance = 1e-6
"""The allowed subgradient violation"""

MaxOuterIterations = 100
"""The most Newton steps per penalty"""

MaxInnerSweeps = 200
"""The most coordinate sweeps per Newton step"""

def softThreshold(value: float, threshold: float) -> float:
    return float(np.sign(value) * max(abs(value) - threshold, 0.0))

class LassoPath:
    """Lasso solutions along a penalty grid
    """

    def __init__(self, lambdas: np.ndarray, gammas: np.ndarray, lambdaMax: float, dropped: typing.List[float]) -> None:
        """Creates a new lasso path

        :param self:
            Self
        :param lambdas:
            The penalties that were solved, descending
        :param gammas:
            One solution row per penalty
        :param lambdaMax:
            The smallest penalty giving an all-zero solution
        :param dropped:
            Penalties whose solves failed

        :return none:
        """

        self.lambdas = np.asarray(lambdas, dtype = float)
        self.gammas = np.asarray(gammas, dtype = float).reshape(len(self.lambdas), -1)
        self.lambdaMax = float(lambdaMax)
        self.dropped = list(dropped)

    def __len__(self) -> int:
        return len(self.lambdas)

class CoxLasso:
    """A lasso-penalized Cox problem over fixed data
    """

    def __init__(self, design: np.ndarray, times: np.ndarray, statuses: np.ndarray) -> None:
        """Creates a new problem

        :param self:
            Self
        :param design:
            The n x p design
        :param times:
            The observed times
        :param statuses:
            The event indicators

        :return none:
        """

        self._likelihood = PartialLikelihood(design = design, times = times, statuses = statuses)
        self._scale = 2.0 / len(times)

        self._logger = logging.getLogger(__name__)

    @property
    def size(self) -> int:
        return self._likelihood.size

    def smooth(self, gamma: np.ndarray, derivatives: bool = True) -> typing.Tuple[float, np.ndarray, np.ndarray]:
        """Evaluates the scaled negative partial log-likelihood

        :param self:
            Self
        :param gamma:
            The coefficients
        :param derivatives:
            Whether to compute the gradient and Hessian

        :return float:
            -(2/n) L
        :return np.ndarray:
            Its gradient, or None
        :return np.ndarray:
            Its Hessian, or None
        """

        value, gradient, hessian = self._likelihood.evaluate(beta = gamma, derivatives = derivatives)

        if not derivatives:
            return -self._scale * value, None, None

        return -self._scale * value, -self._scale * gradient, -self._scale * hessian

    def objective(self, gamma: np.ndarray, penalty: float) -> float:
        return self.smooth(gamma = gamma, derivatives = False)[0] + penalty * float(np.abs(gamma).sum())

    def lambdaMax(self) -> float:
        """Gets the smallest penalty whose solution is all zero

        :param self:
            Self

        :return float:
            The null score's max-norm
        """

        _, gradient, _ = self.smooth(gamma = np.zeros(self.size))

        return float(np.max(np.abs(gradient))) if self.size > 0 else 0.0

    def kktViolation(self, gamma: np.ndarray, penalty: float) -> float:
        """Measures how far a point is from optimal

        :param self:
            Self
        :param gamma:
            The point
        :param penalty:
            The penalty

        :return float:
            The largest subgradient violation
        """

        _, gradient, _ = self.smooth(gamma = gamma)

        active = gamma != 0.0

        violations = np.where(
            active,
            np.abs(gradient + penalty * np.sign(gamma)),
            np.maximum(np.abs(gradient) - penalty, 0.0)
        )

        return float(violations.max()) if len(violations) > 0 else 0.0

    def solve(self, penalty: float, start: np.ndarray = None) -> typing.Tuple[np.ndarray, bool]:
        """Solves the problem at one penalty

        :param self:
            Self
        :param penalty:
            The penalty lambda
        :param start:
            The warm start

        :return np.ndarray:
            The solution
        :return bool:
            Whether it meets the optimality conditions
        """

        p = self.size

        gamma = np.zeros(p) if start is None else np.array(start, dtype = float)

        if p < 1:
            return gamma, True

        current = self.objective(gamma = gamma, penalty = penalty)

        for _ in range(MaxOuterIterations):
            _, gradient, hessian = self.smooth(gamma = gamma)

            # Minimize the penalized quadratic model around gamma
            z = gamma.copy()

            for _ in range(MaxInnerSweeps):
                largest = 0.0

                for j in range(p):
                    curvature = hessian[j, j]

                    if curvature <= 1e-12:
                        continue

                    linear = gradient[j] + hessian[j] @ (z - gamma) - curvature * (z[j] - gamma[j])

                    updated = softThreshold(value = curvature * gamma[j] - linear, threshold = penalty) / curvature

                    largest = max(largest, abs(updated - z[j]))

                    z[j] = updated

                if largest < 1e-12:
                    break

            direction = z - gamma

            if np.max(np.abs(direction)) < 1e-12:
                break

            decrease = gradient @ direction + penalty * (np.abs(z).sum() - np.abs(gamma).sum())

            step = 1.0

            for _ in range(40):
                candidate = gamma + step * direction

                value = self.objective(gamma = candidate, penalty = penalty)

                if value <= current + 1e-4 * step * decrease + 1e-15:
                    break

                step /= 2.0

            else:
                break

            # Full steps keep the exact zeros soft-thresholding produced
            gamma = z if step == 1.0 else candidate

            change = current - value

            current = value

            if abs(change) <= 1e-13 * max(abs(current), 1.0):
                break

        violation = self.kktViolation(gamma = gamma, penalty = penalty)

        if violation > KktTolerance:
            self._logger.debug(f"Lasso solve at lambda {penalty:.6g} violates optimality by {violation:.3g}")

        return gamma, violation <= KktTolerance

def lambdaGrid(lambdaMax: float, count: int = 100, ratio: float = 1e-3) -> np.ndarray:
    """Makes a penalty grid

    :param lambdaMax:
        The largest penalty
    :param count:
        How many log-spaced penalties to use
    :param ratio:
        The smallest penalty as a share of the largest

    :return np.ndarray:
        The log-spaced penalties, descending, followed by 0
    """

    return np.concatenate([lambdaMax * np.logspace(0.0, np.log10(ratio), count), [0.0]])

def coxLassoPath(
    design: np.ndarray,
    times: np.ndarray,
    statuses: np.ndarray,
    lambdas: np.ndarray = None,
    count: int = 100,
    ratio: float = 1e-3
) -> LassoPath:
    """Computes a Cox lasso path

    :param design:
        The n x p design
    :param times:
        The observed times
    :param statuses:
        The event indicators
    :param lambdas:
        The penalties to solve at; a grid from the data's largest useful
        penalty if not given
    :param count:
        The generated grid's size, besides zero
    :param ratio:
        The generated grid's smallest positive penalty as a share of its
        largest

    :raise NumericalError:
        Every penalty strictly between 0 and the largest useful penalty failed

    :return LassoPath:
        The path, without the points that failed
    """

    logger = logging.getLogger(__name__)

    problem = CoxLasso(design = design, times = times, statuses = statuses)

    lambdaMax = problem.lambdaMax()

    if lambdas is None:
        lambdas = lambdaGrid(lambdaMax = lambdaMax, count = count, ratio = ratio)

    lambdas = np.sort(np.asarray(lambdas, dtype = float))[::-1]

    solved = []
    gammas = []
    dropped = []

    gamma = np.zeros(problem.size)

    for penalty in lambdas:
        if penalty >= lambdaMax:
            candidate, valid = np.zeros(problem.size), True

        else:
            candidate, valid = problem.solve(penalty = penalty, start = gamma)

        if not valid:
            logger.warning(f"Dropping lambda {penalty:.6g}: the lasso solve didn't converge")

            dropped.append(float(penalty))

            continue

        gamma = candidate

        solved.append(float(penalty))
        gammas.append(gamma.copy())

    interior = [penalty for penalty in lambdas if 0.0 < penalty < lambdaMax]

    if (len(interior) > 0) and all(float(penalty) in dropped for penalty in interior):
        raise NumericalError(f"The lasso solve failed at all {len(interior)} interior penalties")

    logger.debug(f"Solved {len(solved)} of {len(lambdas)} lasso penalties (lambda max {lambdaMax:.6g})")

    return LassoPath(lambdas = solved, gammas = gammas, lambdaMax = lambdaMax, dropped = dropped)
