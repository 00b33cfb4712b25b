"""
Bootstrap bias correction settings
"""

from fusetree.error import ConfigError

class BbcConfig:
    """Settings for correcting group estimates by bootstrap
    """

    class Direction:
        """Which way the averaged bootstrap differences are applied
        """

        Add      = "add"
        Subtract = "subtract"

        All = [Add, Subtract]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "BbcConfig":
        return BbcConfig(
            replicates = section["replicates"],
            direction = section["direction"],
            level = section["level"]
        )

    def __init__(self, replicates: int = 25, direction: str = Direction.Add, level: float = 0.95) -> None:
        """Creates new correction settings

        :param self:
            Self
        :param replicates:
            How many bootstrap replicates to average, 0 to skip correcting
        :param direction:
            'add' or 'subtract'
        :param level:
            The confidence level of reported intervals

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if replicates < 0:
            raise ConfigError(f"bbc replicates can't be negative, got {replicates}")

        if direction not in BbcConfig.Direction.All:
            raise ConfigError(f"bbc direction must be one of {BbcConfig.Direction.All}, got '{direction}'")

        if not (0.0 < level < 1.0):
            raise ConfigError(f"bbc level must be in (0, 1), got {level}")

        self.replicates = int(replicates)
        self.direction = direction
        self.level = float(level)

    def toDict(self) -> dict:
        return {
            "replicates": self.replicates,
            "direction": self.direction,
            "level": self.level,
        }
