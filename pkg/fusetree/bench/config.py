"""
Simulation bench settings
"""

import typing

from fusetree.error import ConfigError

from .models import Comparison

class BenchConfig:
    """Settings for a simulation study
    """

    class Study:
        """The studies the bench runs
        """

        Comparison  = "comparison"
        Bias        = "bias"
        Split       = "split"

        All = [Comparison, Bias, Split]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "BenchConfig":
        """Creates bench settings from a 'bench' configuration section

        :param section:
            The configuration section

        :return BenchConfig:
            The settings
        """

        return BenchConfig(
            study = section["study"],
            models = section["models"],
            size = section["size"],
            testSize = section["testSize"],
            truthSize = section["truthSize"],
            splitSize = section["splitSize"],
            replicates = section["replicates"],
            censoring = section["censoring"]
        )

    def __init__(
        self,
        study: str = Study.Comparison,
        models: typing.Union[str, typing.List[str]] = "A,B,C,D,E,F,G",
        size: int = 600,
        testSize: int = 1000,
        truthSize: int = 20000,
        splitSize: int = 200,
        replicates: int = 50,
        censoring: float = 0.5
    ) -> None:
        """Creates new bench settings

        :param self:
            Self
        :param study:
            Which study to run
        :param models:
            The comparison model tags, as a list or comma-separated
        :param size:
            The training sample size
        :param testSize:
            The independent test sample size
        :param truthSize:
            The sample size the bias study's true values come from
        :param splitSize:
            The split study's sample size
        :param replicates:
            How many replicates to run per setting
        :param censoring:
            The target censored fraction

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if study not in BenchConfig.Study.All:
            raise ConfigError(f"bench study must be one of {BenchConfig.Study.All}, got '{study}'")

        if isinstance(models, str):
            models = [tag.strip() for tag in models.split(",") if len(tag.strip()) > 0]

        models = [tag.upper() for tag in models]

        for tag in models:
            if tag not in Comparison:
                raise ConfigError(f"Unknown model '{tag}', choose from {sorted(Comparison)}")

        if len(models) < 1:
            raise ConfigError("bench needs at least one model")

        if min(size, testSize, truthSize, splitSize) < 10:
            raise ConfigError("bench sample sizes must be at least 10")

        if replicates < 1:
            raise ConfigError(f"bench replicates must be at least 1, got {replicates}")

        if not (0.0 <= censoring < 1.0):
            raise ConfigError(f"bench censoring must be in [0, 1), got {censoring}")

        self.study = study
        self.models = models
        self.size = int(size)
        self.testSize = int(testSize)
        self.truthSize = int(truthSize)
        self.splitSize = int(splitSize)
        self.replicates = int(replicates)
        self.censoring = float(censoring)

    def toDict(self) -> dict:
        return {
            "study": self.study,
            "models": ",".join(self.models),
            "size": self.size,
            "testSize": self.testSize,
            "truthSize": self.truthSize,
            "splitSize": self.splitSize,
            "replicates": self.replicates,
            "censoring": self.censoring,
        }
