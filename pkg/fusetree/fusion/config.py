"""
Leaf fusion settings
"""

import typing

from fusetree.error import ConfigError

class FusionConfig:
    """Settings for fusing a tree's leaves
    """

    class SortBy:
        """How leaves are ordered before fusion
        """

        Mple    = "mple"
        Median  = "median"

        All = [Mple, Median]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "FusionConfig":
        """Creates fusion settings from a 'fusion' configuration section

        :param section:
            The configuration section

        :return FusionConfig:
            The settings
        """

        return FusionConfig(
            sortBy = section["sortBy"],
            lambdaCount = section["lambdaCount"],
            lambdaRatio = section["lambdaRatio"],
            preDepth = section["preDepth"]
        )

    def __init__(
        self,
        sortBy: str = SortBy.Mple,
        lambdaCount: int = 100,
        lambdaRatio: float = 1e-3,
        preDepth: typing.Optional[int] = None
    ) -> None:
        """Creates new fusion settings

        :param self:
            Self
        :param sortBy:
            'mple' or 'median' leaf ordering
        :param lambdaCount:
            How many log-spaced penalties the path uses, besides zero
        :param lambdaRatio:
            The smallest positive penalty as a share of the largest
        :param preDepth:
            The depth to cut the tree to before fusing, if any

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if sortBy not in FusionConfig.SortBy.All:
            raise ConfigError(f"fusion sortBy must be one of {FusionConfig.SortBy.All}, got '{sortBy}'")

        if lambdaCount < 2:
            raise ConfigError(f"fusion lambdaCount must be at least 2, got {lambdaCount}")

        if not (0.0 < lambdaRatio < 1.0):
            raise ConfigError(f"fusion lambdaRatio must be in (0, 1), got {lambdaRatio}")

        if (preDepth is not None) and (preDepth < 0):
            raise ConfigError(f"fusion preDepth can't be negative, got {preDepth}")

        self.sortBy = sortBy
        self.lambdaCount = int(lambdaCount)
        self.lambdaRatio = float(lambdaRatio)
        self.preDepth = int(preDepth) if preDepth is not None else None

    def toDict(self) -> dict:
        return {
            "sortBy": self.sortBy,
            "lambdaCount": self.lambdaCount,
            "lambdaRatio": self.lambdaRatio,
            "preDepth": self.preDepth,
        }
