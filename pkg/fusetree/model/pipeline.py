"""
Fitting a model end to end

Grows the initial tree, selects a fused grouping, shears the tree and
summarizes the groups, bias correcting the summary when replicates are
configured.
"""

import logging
import os
import typing

import numpy as np
import pandas

from fusetree.data import Dataset
from fusetree.data import deriveSeed
from fusetree.error import NumericalError
from fusetree.inference import BbcReport
from fusetree.inference import GroupSummary
from fusetree.inference import bootstrapBiasCorrect
from fusetree.inference import groupSummaries
from fusetree.inference import recordGroups
from fusetree.selection import Selection
from fusetree.selection import select
from fusetree.survival import kaplanMeier
from fusetree.utils import writeCsv

from .config import RunConfig
from .model import Model

class FitResult:
    """Everything a fit produces
    """

    SelectionReportFile = "selection_report.csv"
    GroupSummaryFile = "group_summary.csv"
    BbcReportFile = "bbc_report.csv"
    CurvesFile = "km_curves.csv"

    def __init__(
        self,
        selection: Selection,
        summary: GroupSummary,
        bbc: typing.Optional[BbcReport],
        model: Model
    ) -> None:
        """Creates a new fit result

        :param self:
            Self
        :param selection:
            The selected grouping and how it was chosen
        :param summary:
            The raw group summary
        :param bbc:
            The bias correction, if it ran
        :param model:
            The model

        :return none:
        """

        self.selection = selection
        self.summary = summary
        self.bbc = bbc
        self.model = model

    def curves(self) -> pandas.DataFrame:
        """Gets each group's Kaplan-Meier curve

        :param self:
            Self

        :return pandas.DataFrame:
            The curves' (group, time, survival) steps
        """

        data = self.selection.data

        groups = recordGroups(data = data, tree = self.model.tree)

        frames = []

        for k in range(1, self.model.groupCount + 1):
            mask = groups == k

            if not np.any(mask):
                continue

            frame = kaplanMeier(times = data.times[mask], statuses = data.statuses[mask]).toFrame(valueColumn = "survival")
            frame.insert(0, "group", k)

            frames.append(frame)

        return pandas.concat(frames, ignore_index = True)

    def summaryRows(self) -> typing.List[dict]:
        rows = self.summary.toRows()

        if self.model.corrected is not None:
            rows.extend(self.model.corrected.toRows())

        return rows

    def write(self, directory: str) -> typing.List[str]:
        """Writes the fit's files

        :param self:
            Self
        :param directory:
            The output directory

        :return typing.List[str]:
            The files written
        """

        files = []

        def path(name: str) -> str:
            files.append(os.path.join(directory, name))

            return files[-1]

        self.model.save(fileName = path(Model.FileName))

        writeCsv(fileName = path(FitResult.SelectionReportFile), rows = self.selection.report.toRows())
        writeCsv(fileName = path(FitResult.GroupSummaryFile), rows = self.summaryRows())

        if self.bbc is not None:
            writeCsv(fileName = path(FitResult.BbcReportFile), rows = self.bbc.toRows())

        writeCsv(fileName = path(FitResult.CurvesFile), rows = self.curves())

        return files

def fitModel(data: Dataset, config: RunConfig) -> FitResult:
    """Fits a model

    :param data:
        The records
    :param config:
        The run settings

    :raise NumericalError:
        A final group coefficient diverged and divergence isn't allowed

    :return FitResult:
        The fit
    """

    logger = logging.getLogger(__name__)

    selection = select(data = data, config = config.pipeline, seed = config.seed)

    logger.info(f"Selected {selection.groupCount} groups, {len(selection.tree.leaves)} leaves after shearing")

    bbc = None
    corrected = None

    if config.bbc.replicates > 0:
        bbc = bootstrapBiasCorrect(
            data = selection.data,
            tree = selection.tree,
            config = config.pipeline,
            replicates = config.bbc.replicates,
            seed = deriveSeed(config.seed, "bbc"),
            direction = config.bbc.direction,
            level = config.bbc.level
        )

        summary = bbc.summary

        if len(summary) > 1:
            corrected = bbc.corrected()

    else:
        summary = groupSummaries(data = selection.data, tree = selection.tree, level = config.bbc.level)

    if summary.diverged and not config.allowDivergence:
        raise NumericalError("A group coefficient diverged in the final fit; pass --allow-divergence to keep it")

    model = Model(
        schema = data.schema,
        tree = selection.tree,
        summary = summary,
        corrected = corrected,
        timeColumn = config.timeColumn,
        statusColumn = config.statusColumn,
        settings = config.toDict()
    )

    return FitResult(selection = selection, summary = summary, bbc = bbc, model = model)
