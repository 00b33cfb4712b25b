"""
Binary split rules and search results
"""

import typing

import numpy as np

from fusetree.data import Schema
from fusetree.error import ConfigError

class SplitSpec:
    """A binary split on one covariate

    A threshold rule sends z <= cutoff left. A subset rule sends records whose
    level code is in the subset left; every other level, including levels
    never seen while searching, goes right.
    """

    class Kind:
        Threshold   = "threshold"
        Subset      = "subset"

    def __init__(self, variable: int, cutoff: float = None, subset: typing.Iterable[int] = None) -> None:
        """Creates a new split rule

        :param self:
            Self
        :param variable:
            The covariate's schema index
        :param cutoff:
            The threshold, for ordered covariates
        :param subset:
            The left level codes, for nominal covariates

        :raise ValueError:
            Not exactly one of cutoff and subset given

        :return none:
        """

        if (cutoff is None) == (subset is None):
            raise ValueError("A split needs exactly one of a cutoff or a subset")

        self.variable = int(variable)
        self.cutoff = float(cutoff) if cutoff is not None else None
        self.subset = frozenset(int(code) for code in subset) if subset is not None else None

        if (self.subset is not None) and (len(self.subset) < 1):
            raise ValueError("A subset split needs at least one left level")

    @property
    def kind(self) -> str:
        return SplitSpec.Kind.Threshold if self.cutoff is not None else SplitSpec.Kind.Subset

    def goesLeft(self, values: np.ndarray) -> np.ndarray:
        """Gets which values the rule sends left

        :param self:
            Self
        :param values:
            The covariate values

        :return np.ndarray:
            A boolean per value
        """

        values = np.asarray(values, dtype = float)

        if self.cutoff is not None:
            return values <= self.cutoff

        return np.isin(values.astype(int), sorted(self.subset))

    def toDict(self, schema: Schema) -> dict:
        """Creates a dictionary of us, with names instead of indices

        :param self:
            Self
        :param schema:
            The schema the variable index refers to

        :return dict:
            Us
        """

        covariate = schema[self.variable]

        data = {"var": covariate.name, "kind": self.kind}

        if self.cutoff is not None:
            data["cutoff"] = self.cutoff
        else:
            data["subset"] = [covariate.levels[code] for code in sorted(self.subset)]

        return data

    @staticmethod
    def makeFromDict(data: dict, schema: Schema) -> "SplitSpec":
        """Creates a split rule from a dictionary

        :param data:
            The dictionary
        :param schema:
            The schema to resolve names against

        :raise ConfigError:
            Unknown variable or level

        :return SplitSpec:
            The split rule
        """

        try:
            variable = schema.index(data["var"])

            if data["kind"] == SplitSpec.Kind.Threshold:
                return SplitSpec(variable = variable, cutoff = data["cutoff"])

            return SplitSpec(
                variable = variable,
                subset = [schema[variable].levelCode(level = level) for level in data["subset"]]
            )

        except (KeyError, TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid split {data}: {ex}")

    def describe(self, schema: Schema) -> str:
        """Gets a readable form of the left-hand rule

        :param self:
            Self
        :param schema:
            The schema

        :return str:
            The rule
        """

        covariate = schema[self.variable]

        if self.cutoff is not None:
            return f"{covariate.name} <= {self.cutoff:.6g}"

        return f"{covariate.name} in {{{', '.join(covariate.levels[code] for code in sorted(self.subset))}}}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SplitSpec):
            return False

        return (self.variable == other.variable) and (self.cutoff == other.cutoff) and (self.subset == other.subset)

    def __str__(self) -> str:
        if self.cutoff is not None:
            return f"z{self.variable} <= {self.cutoff:.6g}"

        return f"z{self.variable} in {sorted(self.subset)}"

class SplitResult:
    """The outcome of a split search
    """

    @staticmethod
    def infeasible(variable: int = None, method: str = None) -> "SplitResult":
        return SplitResult(spec = None, statistic = float("nan"), feasible = False, variable = variable, method = method)

    def __init__(
        self,
        spec: typing.Optional[SplitSpec],
        statistic: float,
        feasible: bool = True,
        variable: int = None,
        method: str = None
    ) -> None:
        """Creates a new split result

        :param self:
            Self
        :param spec:
            The chosen rule
        :param statistic:
            The hard logrank statistic at the rule
        :param feasible:
            Whether an admissible rule was found
        :param variable:
            The searched variable, if the rule is missing
        :param method:
            Which search produced the rule

        :return none:
        """

        self.spec = spec
        self.statistic = float(statistic)
        self.feasible = feasible
        self.variable = spec.variable if spec is not None else variable
        self.method = method

        # Filled in by intersected validation
        self.context = None

    def __str__(self) -> str:
        if not self.feasible:
            return f"SplitResult(infeasible, variable={self.variable})"

        return f"SplitResult({self.spec}, Q={self.statistic:.6g}, {self.method})"
