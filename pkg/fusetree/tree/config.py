"""
Tree growth settings
"""

from fusetree.error import ConfigError

class GrowConfig:
    """Settings for growing an initial tree
    """

    class Mode:
        """How a node's split variable is chosen
        """

        Intersected = "iv"
        Plain       = "plain"

        All = [Intersected, Plain]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "GrowConfig":
        """Creates growth settings from a 'grow' configuration section

        :param section:
            The configuration section

        :return GrowConfig:
            The settings
        """

        return GrowConfig(
            maxDepth = section["maxDepth"],
            minNodeSize = section["minNodeSize"],
            minNodeEvents = section["minNodeEvents"],
            mode = section["mode"],
            ivMinSize = section["ivMinSize"],
            ivMinEvents = section["ivMinEvents"]
        )

    def __init__(
        self,
        maxDepth: int = 4,
        minNodeSize: int = 30,
        minNodeEvents: int = 8,
        mode: str = Mode.Intersected,
        ivMinSize: int = 30,
        ivMinEvents: int = 9
    ) -> None:
        """Creates new growth settings

        :param self:
            Self
        :param maxDepth:
            The deepest a node may be, the root being at depth 0
        :param minNodeSize:
            The fewest records a node needs to be split
        :param minNodeEvents:
            The fewest events a node needs to be split
        :param mode:
            'iv' or 'plain' variable selection
        :param ivMinSize:
            The fewest records a node needs for intersected validation
        :param ivMinEvents:
            The fewest events a node needs for intersected validation

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if maxDepth < 0:
            raise ConfigError(f"grow maxDepth can't be negative, got {maxDepth}")

        if (minNodeSize < 2) or (minNodeEvents < 1):
            raise ConfigError("grow node minima must be at least 2 records and 1 event")

        if mode not in GrowConfig.Mode.All:
            raise ConfigError(f"grow mode must be one of {GrowConfig.Mode.All}, got '{mode}'")

        if (ivMinSize < 3) or (ivMinEvents < 3):
            raise ConfigError("grow validation minima must be at least 3")

        self.maxDepth = int(maxDepth)
        self.minNodeSize = int(minNodeSize)
        self.minNodeEvents = int(minNodeEvents)
        self.mode = mode
        self.ivMinSize = int(ivMinSize)
        self.ivMinEvents = int(ivMinEvents)

    def copy(self, **changes) -> "GrowConfig":
        values = self.toDict()
        values.update(changes)

        return GrowConfig(**values)

    def toDict(self) -> dict:
        return {
            "maxDepth": self.maxDepth,
            "minNodeSize": self.minNodeSize,
            "minNodeEvents": self.minNodeEvents,
            "mode": self.mode,
            "ivMinSize": self.ivMinSize,
            "ivMinEvents": self.ivMinEvents,
        }
