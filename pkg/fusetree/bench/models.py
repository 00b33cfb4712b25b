"""
Simulation models

The comparison models draw seven covariates: z1, z4 and z5 binary, z2, z6
and z7 uniform on [0, 1] and z3 nominal over A to E. Models A to F have
constant subject hazards; model G is a log-logistic accelerated failure
time model. Two smaller models serve the split studies: a single cutoff on
one uniform covariate, and five covariates with growing numbers of distinct
values that each carry one binary split.
"""

import typing

import numpy as np

from fusetree.data import Covariate
from fusetree.data import Schema
from fusetree.error import ConfigError

Binary = Covariate.Kind.Binary
Continuous = Covariate.Kind.Continuous
Nominal = Covariate.Kind.Nominal

class SimModel:
    """A data-generating survival model
    """

    def __init__(
        self,
        tag: str,
        name: str,
        schema: Schema,
        important: typing.Iterable[str],
        draw: typing.Callable[[int, np.random.Generator], np.ndarray],
        logHazard: typing.Callable[[np.ndarray], np.ndarray] = None,
        logTime: typing.Callable[[np.ndarray, np.random.Generator], np.ndarray] = None
    ) -> None:
        """Creates a new model

        :param self:
            Self
        :param tag:
            The model's short tag
        :param name:
            The model's name
        :param schema:
            The covariate schema
        :param important:
            The covariates the outcome truly depends on
        :param draw:
            Draws an n x p covariate matrix
        :param logHazard:
            Gives each subject's constant log hazard
        :param logTime:
            Gives each subject's log event time, for models without a
            constant hazard

        :return none:
        """

        self.tag = tag
        self.name = name
        self.schema = schema
        self.important = frozenset(important)

        self._draw = draw
        self._logHazard = logHazard
        self._logTime = logTime

    def covariates(self, n: int, generator: np.random.Generator) -> np.ndarray:
        return self._draw(n, generator)

    def hazards(self, covariates: np.ndarray) -> np.ndarray:
        """Gets subject hazards

        :param self:
            Self
        :param covariates:
            The covariate matrix

        :raise ValueError:
            The model has no constant hazard

        :return np.ndarray:
            Each subject's hazard rate
        """

        if self._logHazard is None:
            raise ValueError(f"Model {self.tag} has no constant hazard")

        return np.exp(self._logHazard(covariates))

    def eventTimes(self, covariates: np.ndarray, generator: np.random.Generator) -> np.ndarray:
        """Draws event times

        :param self:
            Self
        :param covariates:
            The covariate matrix
        :param generator:
            The random stream

        :return np.ndarray:
            Each subject's event time
        """

        if self._logTime is not None:
            return np.exp(self._logTime(covariates, generator))

        return generator.exponential(scale = 1.0 / self.hazards(covariates = covariates))

    def __str__(self) -> str:
        return f"{self.tag} ({self.name})"

ComparisonSchema = Schema(covariates = [
    Covariate(name = "z1", kind = Binary),
    Covariate(name = "z2", kind = Continuous),
    Covariate(name = "z3", kind = Nominal, levels = ["A", "B", "C", "D", "E"]),
    Covariate(name = "z4", kind = Binary),
    Covariate(name = "z5", kind = Binary),
    Covariate(name = "z6", kind = Continuous),
    Covariate(name = "z7", kind = Continuous),
])
"""The covariates of the comparison models"""

def _drawComparison(n: int, generator: np.random.Generator) -> np.ndarray:
    z = np.empty((n, 7))

    z[:, 0] = generator.binomial(1, 0.5, size = n)
    z[:, 1] = generator.uniform(size = n)
    z[:, 2] = generator.integers(0, 5, size = n)
    z[:, 3] = generator.binomial(1, 0.5, size = n)
    z[:, 4] = generator.binomial(1, 0.5, size = n)
    z[:, 5] = generator.uniform(size = n)
    z[:, 6] = generator.uniform(size = n)

    return z

def _indicator(condition: np.ndarray) -> np.ndarray:
    return condition.astype(float)

Comparison = {
    "A": SimModel(
        tag = "A",
        name = "Null",
        schema = ComparisonSchema,
        important = [],
        draw = _drawComparison,
        logHazard = lambda z: np.full(len(z), -1.0)
    ),
    "B": SimModel(
        tag = "B",
        name = "Tree1",
        schema = ComparisonSchema,
        important = ["z1", "z2"],
        draw = _drawComparison,
        logHazard = lambda z: -1.0 + z[:, 0] + 2.0 * _indicator(z[:, 1] <= 0.5)
    ),
    "C": SimModel(
        tag = "C",
        name = "Tree2",
        schema = ComparisonSchema,
        important = ["z1", "z2"],
        draw = _drawComparison,
        logHazard = lambda z: -1.0 + 3.0 * z[:, 0] * _indicator((z[:, 1] >= 0.25) & (z[:, 1] <= 0.75))
    ),
    "D": SimModel(
        tag = "D",
        name = "Tree3",
        schema = ComparisonSchema,
        important = ["z2"],
        draw = _drawComparison,
        logHazard = lambda z: -1.0 + 4.0 * _indicator(np.sin(6.0 * np.pi * z[:, 1]) >= 0.0)
    ),
    "E": SimModel(
        tag = "E",
        name = "Linear",
        schema = ComparisonSchema,
        important = ["z2", "z6"],
        draw = _drawComparison,
        logHazard = lambda z: -1.0 + 3.0 * z[:, 1] - 3.0 * z[:, 5]
    ),
    "F": SimModel(
        tag = "F",
        name = "KAN",
        schema = ComparisonSchema,
        important = ["z2", "z6"],
        draw = _drawComparison,
        # sin(2 pi z^2), squaring before scaling
        logHazard = lambda z: -1.0 + 2.0 * np.sin(2.0 * np.pi * z[:, 1] ** 2) + 2.0 * np.sin(2.0 * np.pi * z[:, 5] ** 2)
    ),
    "G": SimModel(
        tag = "G",
        name = "NonPH",
        schema = ComparisonSchema,
        important = ["z1", "z2"],
        draw = _drawComparison,
        logTime = lambda z, generator: -1.0 + z[:, 0] + 2.0 * _indicator(z[:, 1] <= 0.5) + generator.logistic(0.0, 1.0, size = len(z))
    ),
}
"""The comparison models, by tag"""

def getModel(tag: str) -> SimModel:
    """Gets a comparison model

    :param tag:
        The model's tag, A to G

    :raise ConfigError:
        Unknown tag

    :return SimModel:
        The model
    """

    try:
        return Comparison[tag.upper()]

    except (KeyError, AttributeError):
        raise ConfigError(f"Unknown model '{tag}', choose from {sorted(Comparison)}")

def cutoffModel(beta0: float = 1.0, beta1: float = -1.0, cutoff: float = 0.5) -> SimModel:
    """Makes the single-cutoff model

    The hazard is exp(beta0 + beta1 I(z <= cutoff)) with z uniform on [0, 1].

    :param beta0:
        The intercept
    :param beta1:
        The effect below the cutoff
    :param cutoff:
        The true cutoff

    :return SimModel:
        The model
    """

    return SimModel(
        tag = "cutoff",
        name = f"Cutoff({beta0:g}, {beta1:g}, {cutoff:g})",
        schema = Schema(covariates = [Covariate(name = "z", kind = Continuous)]),
        important = ["z"] if beta1 != 0.0 else [],
        draw = lambda n, generator: generator.uniform(size = (n, 1)),
        logHazard = lambda z: beta0 + beta1 * _indicator(z[:, 0] <= cutoff)
    )

SelectionSchema = Schema(covariates = [
    Covariate(name = "z1", kind = Binary),
    Covariate(name = "z2", kind = Continuous),
    Covariate(name = "z3", kind = Continuous),
    Covariate(name = "z4", kind = Continuous),
    Covariate(name = "z5", kind = Nominal, levels = list("ABCDEFGHIJ")),
])
"""The covariates of the selection-bias model"""

def _drawSelection(n: int, generator: np.random.Generator) -> np.ndarray:
    z = np.empty((n, 5))

    z[:, 0] = generator.binomial(1, 0.5, size = n)
    z[:, 1] = generator.integers(1, 11, size = n) / 10.0
    z[:, 2] = generator.integers(1, 51, size = n) / 50.0
    z[:, 3] = generator.uniform(size = n)
    z[:, 4] = generator.integers(0, 10, size = n)

    return z

def selectionSplits(z: np.ndarray) -> np.ndarray:
    """Gets the binary split each selection-bias covariate carries

    :param z:
        The covariate matrix

    :return np.ndarray:
        The n x 5 split indicators
    """

    return np.column_stack([
        z[:, 0],
        _indicator(z[:, 1] <= 0.5),
        _indicator(z[:, 2] <= 0.5),
        _indicator(z[:, 3] <= 0.5),
        _indicator(z[:, 4] <= 4),
    ])

def selectionModel(betas: typing.Sequence[float], beta0: float = -1.0) -> SimModel:
    """Makes the selection-bias model

    The hazard is exp(beta0 + sum_j beta_j x_j), x_j being covariate j's
    binary split.

    :param betas:
        The five split effects
    :param beta0:
        The intercept

    :raise ValueError:
        Not five effects

    :return SimModel:
        The model
    """

    betas = np.asarray(betas, dtype = float)

    if betas.shape != (5,):
        raise ValueError(f"Need 5 effects, got {betas.shape}")

    return SimModel(
        tag = "selection",
        name = f"Selection({', '.join(f'{b:g}' for b in betas)})",
        schema = SelectionSchema,
        important = [SelectionSchema[j].name for j in range(5) if betas[j] != 0.0],
        draw = _drawSelection,
        logHazard = lambda z: beta0 + selectionSplits(z = z) @ betas
    )
