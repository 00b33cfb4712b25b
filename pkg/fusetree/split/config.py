"""
Split search settings
"""

from fusetree.error import ConfigError

class SplitConfig:
    """Settings for finding a node's best split
    """

    class Method:
        """How ordered covariates are searched
        """

        Auto    = "auto"
        Greedy  = "gs"
        Sigmoid = "sss"

        All = [Auto, Greedy, Sigmoid]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "SplitConfig":
        """Creates split settings from a 'split' configuration section

        :param section:
            The configuration section

        :return SplitConfig:
            The settings
        """

        return SplitConfig(
            shape = section["shape"],
            switch = section["switch"],
            method = section["method"],
            minChildSize = section["minChildSize"],
            minChildEvents = section["minChildEvents"],
            maxSubsetLevels = section["maxSubsetLevels"],
            gridPoints = section["gridPoints"],
            tolerance = section["tolerance"]
        )

    def __init__(
        self,
        shape: float = 50.0,
        switch: int = 20,
        method: str = Method.Auto,
        minChildSize: int = 20,
        minChildEvents: int = 5,
        maxSubsetLevels: int = 12,
        gridPoints: int = 50,
        tolerance: float = 1e-4
    ) -> None:
        """Creates new split settings

        :param self:
            Self
        :param shape:
            The sigmoid shape parameter a
        :param switch:
            The most distinct values searched greedily in 'auto' mode
        :param method:
            'auto', or 'gs'/'sss' to force one search
        :param minChildSize:
            The fewest records a child may have
        :param minChildEvents:
            The fewest events a child may have
        :param maxSubsetLevels:
            The most nominal levels enumerated exhaustively
        :param gridPoints:
            The sigmoid search's coarse grid size
        :param tolerance:
            The sigmoid search's refinement tolerance, on the [0, 1] scale

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if not (shape > 0.0):
            raise ConfigError(f"split shape must be positive, got {shape}")

        if switch < 2:
            raise ConfigError(f"split switch must be at least 2, got {switch}")

        if method not in SplitConfig.Method.All:
            raise ConfigError(f"split method must be one of {SplitConfig.Method.All}, got '{method}'")

        if (minChildSize < 1) or (minChildEvents < 1):
            raise ConfigError("split child minima must be at least 1")

        if maxSubsetLevels < 2:
            raise ConfigError(f"split maxSubsetLevels must be at least 2, got {maxSubsetLevels}")

        if gridPoints < 3:
            raise ConfigError(f"split gridPoints must be at least 3, got {gridPoints}")

        if not (tolerance > 0.0):
            raise ConfigError(f"split tolerance must be positive, got {tolerance}")

        self.shape = float(shape)
        self.switch = int(switch)
        self.method = method
        self.minChildSize = int(minChildSize)
        self.minChildEvents = int(minChildEvents)
        self.maxSubsetLevels = int(maxSubsetLevels)
        self.gridPoints = int(gridPoints)
        self.tolerance = float(tolerance)

    def copy(self, **changes) -> "SplitConfig":
        """Copies us, with some settings changed

        :param self:
            Self
        :param changes:
            The settings to change

        :return SplitConfig:
            The copy
        """

        values = dict(self.toDict())
        values.update(changes)

        return SplitConfig(**values)

    def toDict(self) -> dict:
        return {
            "shape": self.shape,
            "switch": self.switch,
            "method": self.method,
            "minChildSize": self.minChildSize,
            "minChildEvents": self.minChildEvents,
            "maxSubsetLevels": self.maxSubsetLevels,
            "gridPoints": self.gridPoints,
            "tolerance": self.tolerance,
        }
