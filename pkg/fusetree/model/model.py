"""
Fitted models

A model is a sheared tree whose leaves carry their fused groups, with the
groups' hazard summaries. It saves to and loads from a JSON file.
"""

import json
import typing

import numpy as np
import pandas

from fusetree.data import Dataset
from fusetree.data import Schema
from fusetree.error import ConfigError
from fusetree.fusion import Grouping
from fusetree.inference import GroupSummary
from fusetree.tree import Tree
from fusetree.utils import roundFloats
from fusetree.utils import writeJson

class Model:
    """A fitted survival tree model
    """

    FileName = "model.json"
    """The file a model is saved to in an output directory"""

    def __init__(
        self,
        schema: Schema,
        tree: Tree,
        summary: GroupSummary,
        corrected: GroupSummary = None,
        timeColumn: str = "time",
        statusColumn: str = "status",
        settings: dict = None
    ) -> None:
        """Creates a new model

        :param self:
            Self
        :param schema:
            The covariate schema
        :param tree:
            The sheared tree, every leaf carrying its group
        :param summary:
            The groups' hazard summary
        :param corrected:
            The bias-corrected summary, if any
        :param timeColumn:
            The time column of the training file
        :param statusColumn:
            The status column of the training file
        :param settings:
            The settings the model was fitted with

        :raise ConfigError:
            A leaf has no group

        :return none:
        """

        groups = tree.leafGroups()

        if any(group is None for group in groups.values()):
            raise ConfigError("Every leaf of a model's tree needs a group")

        self.schema = schema
        self.tree = tree
        self.grouping = Grouping(leafToGroup = groups)
        self.summary = summary
        self.corrected = corrected
        self.timeColumn = timeColumn
        self.statusColumn = statusColumn
        self.settings = settings if settings is not None else {}

    @property
    def groupCount(self) -> int:
        return self.grouping.count

    def predict(self, data: Dataset) -> pandas.DataFrame:
        """Routes records to their leaves and groups

        :param self:
            Self
        :param data:
            The records

        :return pandas.DataFrame:
            One row per record: its 1-based row number, leaf, group and the
            group's hazard ratio, bias-corrected too when available
        """

        leaves = self.tree.routeAll(data = data)
        groups = self.grouping.groupsOf(leafIds = leaves)

        frame = pandas.DataFrame({
            "row": np.arange(1, len(data) + 1),
            "leaf": leaves,
            "group": groups,
            "hr": self.summary.hazardRatios[groups - 1],
        })

        if self.corrected is not None:
            frame["hr_corrected"] = self.corrected.hazardRatios[groups - 1]

        return frame

    def toDict(self) -> dict:
        return {
            "schema": self.schema.toList(),
            "tree": self.tree.toDict(),
            "grouping": self.grouping.toDict(),
            "summary": self.summary.toDict(),
            "corrected": self.corrected.toDict() if self.corrected is not None else None,
            "columns": {"time": self.timeColumn, "status": self.statusColumn},
            "settings": self.settings,
        }

    @staticmethod
    def makeFromDict(data: dict) -> "Model":
        """Creates a model from a dictionary

        :param data:
            The dictionary

        :raise ConfigError:
            Invalid model

        :return Model:
            The model
        """

        try:
            schema = Schema.makeFromList(data = data["schema"])

            tree = Tree.makeFromDict(data = data["tree"], schema = schema)

            columns = data.get("columns", {})

            return Model(
                schema = schema,
                tree = tree,
                summary = GroupSummary.makeFromDict(data = data["summary"]),
                corrected = GroupSummary.makeFromDict(data = data["corrected"]) if data.get("corrected") else None,
                timeColumn = columns.get("time", "time"),
                statusColumn = columns.get("status", "status"),
                settings = data.get("settings")
            )

        except (KeyError, TypeError, AttributeError) as ex:
            raise ConfigError(f"Invalid model: {ex}")

    def save(self, fileName: str) -> None:
        """Saves the model to a JSON file

        Split cutoffs keep full precision so routing survives the round
        trip; every other float is rounded.

        :param self:
            Self
        :param fileName:
            The file to write

        :return none:
        """

        data = roundFloats(data = self.toDict())
        data["tree"] = self.tree.toDict()

        writeJson(fileName = fileName, data = data, rounded = False)

    @staticmethod
    def load(fileName: str) -> "Model":
        """Loads a model file

        :param fileName:
            The JSON file

        :raise ConfigError:
            Unreadable or invalid model file

        :return Model:
            The model
        """

        try:
            with open(fileName, "r", encoding = "utf-8") as modelFile:
                data = json.load(modelFile)

        except OSError as ex:
            raise ConfigError(f"Failed to load model {fileName}: {ex}")

        except json.JSONDecodeError as ex:
            raise ConfigError(f"Failed to parse model {fileName}: {ex}")

        return Model.makeFromDict(data = data)

    def describe(self) -> typing.List[str]:
        """Describes the model for people

        :param self:
            Self

        :return typing.List[str]:
            The lines of the description
        """

        lines = [f"{self.groupCount} groups over {len(self.tree.leaves)} leaves", ""]

        lines.extend(str(self.tree).split("\n"))

        lines.append("")

        for label, summary in [("raw", self.summary), ("corrected", self.corrected)]:
            if summary is None:
                continue

            lines.append(f"group summary ({label}):")

            for row in summary.toRows():
                median = f"{row['median']:.6g}" if row["median"] is not None else "not reached"

                lines.append(
                    f"    group {row['group']}: n={row['n']} events={row['events']} "
                    f"hr={row['hr']:.6g} [{row['hr_lower']:.6g}, {row['hr_upper']:.6g}] median={median}"
                )

        return lines
