"""
A command for running simulation studies
"""

import argparse
import logging
import os

import fusetree.command as command

from fusetree.model import RunConfig
from fusetree.utils import writeCsv

from .config import BenchConfig
from .harness import runBiasStudy
from .harness import runComparison
from .harness import runSplitStudy

class SimulateCommand(command.Command):
    """Runs a simulation study

    The comparison study fits every chosen model's replicates and reports
    group counts, variable selection rates, test deviance and concordance.
    The bias study compares raw and bias-corrected group estimates with
    large-sample truths. The split study compares cutoff searches and
    variable selection strategies.
    """

    Flags = [
        ("--study", "bench.study", str, "Which study to run (comparison, bias or split)"),
        ("--models", "bench.models", str, "Comma-separated model tags, A through G"),
        ("--replicates", "bench.replicates", int, "How many replicates to run per setting"),
        ("--size", "bench.size", int, "The training sample size"),
        ("--test-size", "bench.testSize", int, "The independent test sample size"),
        ("--truth-size", "bench.truthSize", int, "The sample size true group estimates come from"),
        ("--split-size", "bench.splitSize", int, "The split study's sample size"),
        ("--censoring", "bench.censoring", float, "The target censored fraction"),
    ]
    """Our flags, their configuration keys, types and help"""

    def addArguments(self, parser: argparse.ArgumentParser) -> None:
        """Adds our arguments to a parser

        :param self:
            Self
        :param parser:
            The parser

        :return none:
        """

        RunConfig.addArguments(parser = parser)

        for flag, key, type, help in SimulateCommand.Flags:
            parser.add_argument(flag, dest = key, type = type, required = False, help = help)

    def runCommand(self, args: argparse.Namespace) -> int:
        """Runs the study

        :param self:
            Self
        :param args:
            Our arguments

        :raise ConfigError:
            Invalid settings or unknown model

        :return int:
            Our result
        """

        logger = logging.getLogger(__name__)

        config = RunConfig.makeFromArgs(args = args, flags = SimulateCommand.Flags)

        bench = config.bench

        logger.info(f"Running the {bench.study} study with seed {config.seed}")

        if bench.study == BenchConfig.Study.Comparison:
            summary, raw = runComparison(config = bench, pipeline = config.pipeline, seed = config.seed)

            reports = {"comparison_summary": summary, "comparison_replicates": raw}

        elif bench.study == BenchConfig.Study.Bias:
            summary, raw = runBiasStudy(config = bench, pipeline = config.pipeline, bbc = config.bbc, seed = config.seed)

            reports = {"bias_summary": summary, "bias_replicates": raw}

        else:
            summary = None

            reports = {f"split_{name}": frame for name, frame in runSplitStudy(config = bench, pipeline = config.pipeline, seed = config.seed).items()}

        for name, frame in reports.items():
            fileName = os.path.join(config.output, f"{name}.csv")

            writeCsv(fileName = fileName, rows = frame)

            self.stdout.info(f"Wrote {fileName}")

        if summary is not None:
            self.stdout.info(summary.to_string(index = False, float_format = lambda value: f"{value:.6g}"))

        return 0
