"""
Covariate schemas

A schema describes the covariate columns of a survival dataset: their names
and whether they are continuous, binary or nominal. Nominal covariates are
stored as integer level codes into their declared level list.
"""

import typing

from fusetree.error import ConfigError

class Covariate:
    """A single covariate column
    """

    class Kind:
        """The kinds of covariates
        """

        Continuous  = "continuous"
        Binary      = "binary"
        Nominal     = "nominal"

        All = [Continuous, Binary, Nominal]
        """Every valid kind"""

    @staticmethod
    def makeFromDict(data: dict) -> "Covariate":
        """Creates a covariate from a dictionary

        :param data:
            The dictionary, with 'name', 'kind' and optionally 'levels'

        :raise ConfigError:
            Invalid covariate description

        :return Covariate:
            The covariate
        """

        if not isinstance(data, dict) or ("name" not in data):
            raise ConfigError(f"Covariate description {data} needs a 'name'")

        levels = data.get("levels")

        if levels is not None:
            levels = [str(level) for level in levels]

        return Covariate(
            name = str(data["name"]),
            kind = data.get("kind", Covariate.Kind.Continuous),
            levels = levels
        )

    def __init__(self, name: str, kind: str = Kind.Continuous, levels: typing.List[str] = None) -> None:
        """Creates a new covariate

        :param self:
            Self
        :param name:
            The column name
        :param kind:
            The kind of covariate
        :param levels:
            The ordered level names, for nominal covariates

        :raise ConfigError:
            Invalid covariate

        :return none:
        """

        if kind not in Covariate.Kind.All:
            raise ConfigError(f"Covariate '{name}' has unknown kind '{kind}'")

        if kind == Covariate.Kind.Nominal:
            if not levels:
                raise ConfigError(f"Nominal covariate '{name}' needs a non-empty level list")

            if len(set(levels)) != len(levels):
                raise ConfigError(f"Nominal covariate '{name}' has duplicate levels")

        elif levels is not None:
            raise ConfigError(f"Only nominal covariates have levels, but '{name}' is {kind}")

        self.name = name
        self.kind = kind
        self.levels = list(levels) if levels is not None else None

    @property
    def isNominal(self) -> bool:
        """Gets if we're a nominal covariate

        :param self:
            Self

        :return True:
            We are nominal
        :return False:
            We are ordered (continuous or binary)
        """

        return self.kind == Covariate.Kind.Nominal

    def levelCode(self, level: str) -> int:
        """Gets the code of a nominal level

        :param self:
            Self
        :param level:
            The level name

        :raise KeyError:
            Unknown level

        :return int:
            The level's code
        """

        try:
            return self.levels.index(level)

        except ValueError:
            raise KeyError(f"Unknown level '{level}' for covariate '{self.name}'")

    def toDict(self) -> dict:
        """Creates a dictionary of us

        :param self:
            Self

        :return dict:
            Us
        """

        data = {"name": self.name, "kind": self.kind}

        if self.levels is not None:
            data["levels"] = list(self.levels)

        return data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Covariate):
            return False

        return (self.name == other.name) and (self.kind == other.kind) and (self.levels == other.levels)

    def __str__(self) -> str:
        if self.isNominal:
            return f"{self.name} ({self.kind}: {', '.join(self.levels)})"

        return f"{self.name} ({self.kind})"

class Schema:
    """An ordered list of covariates
    """

    @staticmethod
    def makeFromList(data: typing.List[dict]) -> "Schema":
        """Creates a schema from a list of covariate dictionaries

        :param data:
            The covariate dictionaries

        :return Schema:
            The schema
        """

        if not isinstance(data, list):
            raise ConfigError("Covariate schema must be a list")

        return Schema(covariates = [Covariate.makeFromDict(data = item) for item in data])

    def __init__(self, covariates: typing.List[Covariate]) -> None:
        """Creates a new schema

        :param self:
            Self
        :param covariates:
            The covariates, in column order

        :raise ConfigError:
            Duplicate covariate names

        :return none:
        """

        names = [covariate.name for covariate in covariates]

        if len(set(names)) != len(names):
            raise ConfigError(f"Covariate names must be unique: {names}")

        self._covariates = list(covariates)

    def __len__(self) -> int:
        return len(self._covariates)

    def __iter__(self) -> typing.Iterator[Covariate]:
        return iter(self._covariates)

    def __getitem__(self, index: int) -> Covariate:
        return self._covariates[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schema):
            return False

        return self._covariates == other._covariates

    @property
    def names(self) -> typing.List[str]:
        """Gets our covariate names

        :param self:
            Self

        :return typing.List[str]:
            The names, in column order
        """

        return [covariate.name for covariate in self._covariates]

    def index(self, name: str) -> int:
        """Gets the column index of a covariate

        :param self:
            Self
        :param name:
            The covariate's name

        :raise KeyError:
            No such covariate

        :return int:
            The column index
        """

        for i, covariate in enumerate(self._covariates):
            if covariate.name == name:
                return i

        raise KeyError(f"No covariate named '{name}'")

    def toList(self) -> typing.List[dict]:
        """Creates a list of covariate dictionaries

        :param self:
            Self

        :return typing.List[dict]:
            Our covariates
        """

        return [covariate.toDict() for covariate in self._covariates]
