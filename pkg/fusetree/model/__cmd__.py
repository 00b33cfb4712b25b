"""
Commands for fitting and using models
"""

import argparse
import logging
import sys

import fusetree.command as command

from fusetree.utils import writeCsv

from .config import RunConfig
from .model import Model
from .pipeline import fitModel

class FitCommand(command.Command):
    """Fits a fused survival tree to a CSV file

    Writes the model, the selection report, the raw and bias-corrected group
    summaries and each group's Kaplan-Meier curve to the output directory.
    """

    def addArguments(self, parser: argparse.ArgumentParser) -> None:
        """Adds our arguments to a parser

        :param self:
            Self
        :param parser:
            The parser

        :return none:
        """

        parser.add_argument(
            "input",
            help = "The CSV file to fit, with a header row"
        )

        RunConfig.addArguments(parser = parser)

    def runCommand(self, args: argparse.Namespace) -> int:
        """Runs the fit

        :param self:
            Self
        :param args:
            Our arguments

        :raise ConfigError:
            Invalid settings
        :raise DataError:
            Invalid input file

        :return int:
            Our result
        """

        logger = logging.getLogger(__name__)

        config = RunConfig.makeFromArgs(args = args)

        data = config.loadData(fileName = args.input)

        logger.info(f"Fitting {len(data)} records with {data.eventCount} events")

        result = fitModel(data = data, config = config)

        for fileName in result.write(directory = config.output):
            self.stdout.info(f"Wrote {fileName}")

        return 0

class PredictCommand(command.Command):
    """Routes the records of a CSV file through a fitted model

    Emits each record's leaf, group and group hazard ratio.
    """

    def addArguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "model",
            help = "The model file"
        )

        parser.add_argument(
            "input",
            help = "The CSV file to route, with the model's covariate columns"
        )

        parser.add_argument(
            "-o", "--output",
            dest = "outputFile",
            required = False,
            help = "The CSV file to write; if not provided, stdout used instead"
        )

    def runCommand(self, args: argparse.Namespace) -> int:
        """Runs the prediction

        :param self:
            Self
        :param args:
            Our arguments

        :raise ConfigError:
            Invalid model file
        :raise DataError:
            The input doesn't fit the model's schema

        :return int:
            Our result
        """

        model = Model.load(fileName = args.model)

        config = RunConfig()
        config.timeColumn = model.timeColumn
        config.statusColumn = model.statusColumn

        data = config.loadData(fileName = args.input, schema = model.schema)

        predictions = model.predict(data = data)

        writeCsv(fileName = args.outputFile if args.outputFile is not None else sys.stdout, rows = predictions)

        return 0

class SummarizeCommand(command.Command):
    """Describes a fitted model
    """

    def addArguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "model",
            help = "The model file"
        )

    def runCommand(self, args: argparse.Namespace) -> int:
        model = Model.load(fileName = args.model)

        for line in model.describe():
            self.stdout.info(line)

        return 0
