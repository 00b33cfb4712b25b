"""
Run settings

A run's settings start at the defaults, are overridden by an optional YAML
file and then by command-line flags.
"""

import logging
import typing

import pandas

from fusetree.bench.config import BenchConfig
from fusetree.config import Config
from fusetree.config import YamlBackend
from fusetree.config import makeDefaultConfig
from fusetree.data import Covariate
from fusetree.data import Dataset
from fusetree.data import Schema
from fusetree.error import DataError
from fusetree.fusion import FusionConfig
from fusetree.inference import BbcConfig
from fusetree.selection import PipelineConfig
from fusetree.selection import SelectConfig
from fusetree.split import SplitConfig
from fusetree.tree import GrowConfig

BinaryValues = {"0", "1"}
"""The values that make an inferred covariate binary"""

class RunConfig:
    """Settings for one command run
    """

    Flags = [
        ("--time", "data.time", str, "The observed time column"),
        ("--status", "data.status", str, "The event indicator column"),
        ("--seed", "run.seed", int, "The random seed"),
        ("--threads", "run.threads", int, "How many workers to use, 0 for all cores"),
        ("--select", "select.mode", str, "How to select the fusion penalty (test, cv, aic or bic)"),
        ("--folds", "select.folds", int, "The cross-validation fold count"),
        ("--test-fraction", "select.testFraction", float, "The test sample's share of the records"),
        ("--split-mode", "grow.mode", str, "How node split variables are chosen (iv or plain)"),
        ("--split-method", "split.method", str, "How ordered covariates are searched (auto, gs or sss)"),
        ("--shape", "split.shape", float, "The sigmoid shape parameter"),
        ("--switch", "split.switch", int, "The most distinct values searched greedily"),
        ("--max-depth", "grow.maxDepth", int, "The deepest a node may be"),
        ("--min-node-size", "grow.minNodeSize", int, "The fewest records a node needs to be split"),
        ("--min-node-events", "grow.minNodeEvents", int, "The fewest events a node needs to be split"),
        ("--sort-by", "fusion.sortBy", str, "How leaves are ordered for fusion (mple or median)"),
        ("--pre-depth", "fusion.preDepth", str, "The depth trees are cut to before fusion, 'none' for off"),
        ("--bbc-replicates", "bbc.replicates", int, "The bias-correction replicates, 0 to skip it"),
        ("--bbc-direction", "bbc.direction", str, "How bias estimates are applied (add or subtract)"),
    ]
    """The command-line flags, their configuration keys, types and help"""

    @staticmethod
    def addArguments(parser: "argparse.ArgumentParser") -> None:
        """Adds the settings flags to a parser

        :param parser:
            The parser

        :return none:
        """

        parser.add_argument(
            "-c", "--config",
            dest = "configFile",
            required = False,
            help = "A YAML file of settings, overridden by any flags"
        )

        parser.add_argument(
            "-o", "--output",
            dest = "output",
            required = False,
            help = "The output directory"
        )

        parser.add_argument(
            "--one-se",
            dest = "oneSe",
            action = "store_const",
            const = True,
            default = None,
            help = "Use the one standard error rule with cross-validation"
        )

        parser.add_argument(
            "--allow-divergence",
            dest = "allowDivergence",
            action = "store_const",
            const = True,
            default = None,
            help = "Keep a fit whose group coefficients diverged instead of failing"
        )

        for flag, key, type, help in RunConfig.Flags:
            parser.add_argument(flag, dest = key, type = type, required = False, help = help)

    @staticmethod
    def makeFromArgs(args: "argparse.Namespace", flags: typing.List[tuple] = None) -> "RunConfig":
        """Builds run settings from parsed command-line flags

        :param args:
            The parsed flags
        :param flags:
            Further (flag, key, type, help) flags the command added

        :raise ConfigError:
            Invalid file, key or value

        :return RunConfig:
            The settings
        """

        overrides = {key: getattr(args, key, None) for _, key, _, _ in RunConfig.Flags + list(flags or [])}

        overrides["run.output"] = getattr(args, "output", None)
        overrides["select.oneSe"] = getattr(args, "oneSe", None)
        overrides["run.allowDivergence"] = getattr(args, "allowDivergence", None)

        return RunConfig.make(configFile = getattr(args, "configFile", None), overrides = overrides)

    @staticmethod
    def make(configFile: str = None, overrides: typing.Dict[str, object] = None) -> "RunConfig":
        """Builds run settings

        :param configFile:
            A YAML file of settings, if any
        :param overrides:
            Values keyed by 'section.option', None values being skipped

        :raise ConfigError:
            Invalid file, key or value

        :return RunConfig:
            The settings
        """

        config = makeDefaultConfig()

        if configFile is not None:
            config.add(YamlBackend(filename = configFile))
            config.load()

        if overrides is not None:
            config.override(overrides = overrides)

        return RunConfig(config = config)

    def __init__(self, config: Config = None) -> None:
        """Creates new run settings

        :param self:
            Self
        :param config:
            The full configuration, the defaults if not given

        :raise ConfigError:
            Invalid settings

        :return none:
        """

        if config is None:
            config = makeDefaultConfig()

        self.config = config

        self.pipeline = PipelineConfig(
            split = SplitConfig.makeFromConfig(section = config["split"]),
            grow = GrowConfig.makeFromConfig(section = config["grow"]),
            fusion = FusionConfig.makeFromConfig(section = config["fusion"]),
            select = SelectConfig.makeFromConfig(section = config["select"]),
            threads = config["run"]["threads"]
        )

        self.bbc = BbcConfig.makeFromConfig(section = config["bbc"])
        self.bench = BenchConfig.makeFromConfig(section = config["bench"])

        self.seed = config["run"]["seed"]
        self.output = config["run"]["output"]
        self.allowDivergence = config["run"]["allowDivergence"]

        self.timeColumn = config["data"]["time"]
        self.statusColumn = config["data"]["status"]

        covariates = config["data"]["covariates"]

        self.schema = Schema.makeFromList(data = covariates) if covariates is not None else None

    def inferSchema(self, fileName: str) -> Schema:
        """Guesses a schema from a CSV file's columns

        Every column but the time and status columns is a covariate. Columns
        holding only 0 and 1 are binary, other numeric columns continuous,
        and the rest nominal with their sorted distinct values as levels.

        :param self:
            Self
        :param fileName:
            The CSV file

        :raise DataError:
            Unreadable file

        :return Schema:
            The schema
        """

        try:
            frame = pandas.read_csv(fileName, dtype = str, keep_default_na = False, encoding = "utf-8")

        except FileNotFoundError:
            raise DataError(f"no such file '{fileName}'")

        except (pandas.errors.ParserError, pandas.errors.EmptyDataError, UnicodeDecodeError) as ex:
            raise DataError(f"unreadable CSV '{fileName}': {ex}")

        covariates = []

        for name in frame.columns:
            if name in (self.timeColumn, self.statusColumn):
                continue

            values = frame[name].str.strip()

            if set(values) <= BinaryValues:
                covariates.append(Covariate(name = name, kind = Covariate.Kind.Binary))

            elif pandas.to_numeric(values, errors = "coerce").notna().all():
                covariates.append(Covariate(name = name, kind = Covariate.Kind.Continuous))

            else:
                covariates.append(Covariate(name = name, kind = Covariate.Kind.Nominal, levels = sorted(set(values))))

        logging.getLogger(__name__).info(f"Inferred covariates {', '.join(str(covariate) for covariate in covariates)}")

        return Schema(covariates = covariates)

    def loadData(self, fileName: str, schema: Schema = None) -> Dataset:
        """Loads a dataset

        :param self:
            Self
        :param fileName:
            The CSV file
        :param schema:
            The schema to read with, overriding the configured one

        :raise DataError:
            Invalid file

        :return Dataset:
            The dataset
        """

        if schema is None:
            schema = self.schema

        if schema is None:
            schema = self.inferSchema(fileName = fileName)

        return Dataset.loadCsv(fileName = fileName, schema = schema, timeColumn = self.timeColumn, statusColumn = self.statusColumn)

    def toDict(self) -> dict:
        return self.config.toDict()
