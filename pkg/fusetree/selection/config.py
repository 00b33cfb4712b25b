"""
Model selection settings
"""

from fusetree.error import ConfigError
from fusetree.fusion import FusionConfig
from fusetree.split import SplitConfig
from fusetree.tree import GrowConfig

class SelectConfig:
    """Settings for choosing the fusion penalty
    """

    class Mode:
        """How candidate groupings are scored
        """

        TestSample      = "test"
        CrossValidation = "cv"
        Aic             = "aic"
        Bic             = "bic"

        All = [TestSample, CrossValidation, Aic, Bic]

    @staticmethod
    def makeFromConfig(section: "fusetree.config.Config") -> "SelectConfig":
        """Creates selection settings from a 'select' configuration section

        :param section:
            The configuration section

        :return SelectConfig:
            The settings
        """

        return SelectConfig(
            mode = section["mode"],
            folds = section["folds"],
            testFraction = section["testFraction"],
            oneSe = section["oneSe"],
            foldMode = section["foldMode"]
        )

    def __init__(
        self,
        mode: str = Mode.CrossValidation,
        folds: int = 10,
        testFraction: float = 1.0 / 3.0,
        oneSe: bool = False,
        foldMode: str = GrowConfig.Mode.Plain
    ) -> None:
        """Creates new selection settings

        :param self:
            Self
        :param mode:
            'test', 'cv', 'aic' or 'bic'
        :param folds:
            The cross-validation fold count
        :param testFraction:
            The share of records held out in test-sample mode
        :param oneSe:
            Whether cross-validation picks the largest penalty within one
            standard error of the best
        :param foldMode:
            How fold trees choose split variables, 'plain' or 'iv'

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if mode not in SelectConfig.Mode.All:
            raise ConfigError(f"select mode must be one of {SelectConfig.Mode.All}, got '{mode}'")

        if folds < 2:
            raise ConfigError(f"select folds must be at least 2, got {folds}")

        if not (0.0 < testFraction < 1.0):
            raise ConfigError(f"select testFraction must be in (0, 1), got {testFraction}")

        if foldMode not in GrowConfig.Mode.All:
            raise ConfigError(f"select foldMode must be one of {GrowConfig.Mode.All}, got '{foldMode}'")

        self.mode = mode
        self.folds = int(folds)
        self.testFraction = float(testFraction)
        self.oneSe = bool(oneSe)
        self.foldMode = foldMode

    def copy(self, **changes) -> "SelectConfig":
        settings = self.toDict()
        settings.update(changes)

        return SelectConfig(**settings)

    def toDict(self) -> dict:
        return {
            "mode": self.mode,
            "folds": self.folds,
            "testFraction": self.testFraction,
            "oneSe": self.oneSe,
            "foldMode": self.foldMode,
        }

class PipelineConfig:
    """Everything needed to grow, fuse and select a model
    """

    def __init__(
        self,
        split: SplitConfig = None,
        grow: GrowConfig = None,
        fusion: FusionConfig = None,
        select: SelectConfig = None,
        threads: int = 1
    ) -> None:
        """Creates new pipeline settings

        :param self:
            Self
        :param split:
            The split settings
        :param grow:
            The growth settings
        :param fusion:
            The fusion settings
        :param select:
            The selection settings
        :param threads:
            How many workers parallel steps may use, 0 for all cores

        :return none:
        """

        self.split = split if split is not None else SplitConfig()
        self.grow = grow if grow is not None else GrowConfig()
        self.fusion = fusion if fusion is not None else FusionConfig()
        self.select = select if select is not None else SelectConfig()
        self.threads = int(threads)

    @property
    def jobs(self) -> int:
        return -1 if self.threads < 1 else self.threads

    def toDict(self) -> dict:
        return {
            "split": self.split.toDict(),
            "grow": self.grow.toDict(),
            "fusion": self.fusion.toDict(),
            "select": self.select.toDict(),
        }
