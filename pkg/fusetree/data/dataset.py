"""
Survival datasets

A dataset holds observed times, event indicators and a covariate matrix that
conforms to a schema. Nominal covariates are held as level codes. Datasets
are immutable once built, so they can be shared freely between parallel
workers.
"""

import logging
import math
import typing

import numpy as np
import pandas

from fusetree.error import DataError

from .sample import SampleIndex
from .schema import Covariate
from .schema import Schema

class Record:
    """A single (time, status, covariates) observation
    """

    def __init__(self, time: float, status: int, covariates: typing.Sequence[float]) -> None:
        """Creates a new record

        :param self:
            Self
        :param time:
            The observed time
        :param status:
            1 if the event was observed, 0 if censored
        :param covariates:
            The covariate values, nominal covariates as level codes

        :return none:
        """

        self.time = float(time)
        self.status = int(status)
        self.covariates = np.asarray(covariates, dtype = float)

    def __str__(self) -> str:
        return f"({self.time:g}, {self.status}, {list(self.covariates)})"

class Dataset:
    """A survival dataset
    """

    StatusValues = ["0", "1"]
    """The textual status values we accept"""

    @staticmethod
    def _parseValue(covariate: Covariate, text: str, row: int) -> float:
        """Parses a single covariate value

        :param covariate:
            The covariate the value belongs to
        :param text:
            The raw text
        :param row:
            The 1-based data row, for error reporting

        :raise DataError:
            Missing or unparseable value

        :return float:
            The value, or the level code of a nominal value
        """

        text = text.strip()

        if len(text) < 1:
            raise DataError(f"missing value for '{covariate.name}'", row = row, column = covariate.name)

        if covariate.isNominal:
            try:
                return float(covariate.levelCode(level = text))

            except KeyError:
                raise DataError(
                    f"unknown level '{text}' for '{covariate.name}' (levels: {', '.join(covariate.levels)})",
                    row = row,
                    column = covariate.name
                )

        try:
            value = float(text)

        except ValueError:
            raise DataError(f"unparseable value '{text}' for '{covariate.name}'", row = row, column = covariate.name)

        if not math.isfinite(value):
            raise DataError(f"non-finite value '{text}' for '{covariate.name}'", row = row, column = covariate.name)

        if (covariate.kind == Covariate.Kind.Binary) and (value not in (0.0, 1.0)):
            raise DataError(f"binary covariate '{covariate.name}' must be 0 or 1, got '{text}'", row = row, column = covariate.name)

        return value

    @staticmethod
    def loadCsv(fileName: str, schema: Schema, timeColumn: str, statusColumn: str) -> "Dataset":
        """Loads a dataset from a CSV file

        The file must have a header row. Rows keep their file order.

        :param fileName:
            The CSV file
        :param schema:
            The covariates to read
        :param timeColumn:
            The observed time column
        :param statusColumn:
            The event indicator column

        :raise DataError:
            Missing file, missing column or invalid value

        :return Dataset:
            The dataset
        """

        logger = logging.getLogger(__name__)

        try:
            frame = pandas.read_csv(fileName, dtype = str, keep_default_na = False, encoding = "utf-8")

        except FileNotFoundError:
            raise DataError(f"no such file '{fileName}'")

        except (pandas.errors.ParserError, pandas.errors.EmptyDataError, UnicodeDecodeError) as ex:
            raise DataError(f"unreadable CSV '{fileName}': {ex}")

        for column in [timeColumn, statusColumn] + schema.names:
            if column not in frame.columns:
                raise DataError(f"missing column '{column}' in '{fileName}'", column = column)

        n = len(frame)

        times = np.empty(n)
        statuses = np.empty(n, dtype = int)
        covariates = np.empty((n, len(schema)))

        for i in range(n):
            row = i + 1

            text = frame[timeColumn].iloc[i].strip()

            try:
                times[i] = float(text)

            except ValueError:
                raise DataError(f"unparseable time '{text}'", row = row, column = timeColumn)

            if not (times[i] > 0.0) or not math.isfinite(times[i]):
                raise DataError(f"time must be positive, got '{text}'", row = row, column = timeColumn)

            text = frame[statusColumn].iloc[i].strip()

            if text not in Dataset.StatusValues:
                raise DataError(f"status must be 0 or 1, got '{text}'", row = row, column = statusColumn)

            statuses[i] = int(text)

            for j, covariate in enumerate(schema):
                covariates[i, j] = Dataset._parseValue(
                    covariate = covariate,
                    text = frame[covariate.name].iloc[i],
                    row = row
                )

        logger.debug(f"Loaded {n} rows from '{fileName}'")

        return Dataset(schema = schema, times = times, statuses = statuses, covariates = covariates)

    def __init__(self, schema: Schema, times: np.ndarray, statuses: np.ndarray, covariates: np.ndarray) -> None:
        """Creates a new dataset

        :param self:
            Self
        :param schema:
            The covariate schema
        :param times:
            The observed times
        :param statuses:
            The event indicators
        :param covariates:
            The covariate matrix, one column per schema entry

        :raise DataError:
            Records don't conform to the schema

        :return none:
        """

        times = np.array(times, dtype = float)
        statuses = np.array(statuses, dtype = int)
        covariates = np.array(covariates, dtype = float).reshape(len(times), len(schema))

        if len(statuses) != len(times):
            raise DataError("times and statuses differ in length")

        if np.any(~(times > 0.0)):
            raise DataError("time must be positive", row = int(np.argmax(~(times > 0.0))) + 1)

        if np.any((statuses != 0) & (statuses != 1)):
            raise DataError("status must be 0 or 1", row = int(np.argmax((statuses != 0) & (statuses != 1))) + 1)

        for j, covariate in enumerate(schema):
            if covariate.isNominal:
                codes = covariates[:, j]

                if np.any((codes < 0) | (codes >= len(covariate.levels)) | (codes != np.round(codes))):
                    raise DataError(f"invalid level codes for '{covariate.name}'", column = covariate.name)

        for array in (times, statuses, covariates):
            array.setflags(write = False)

        self._schema = schema
        self._times = times
        self._statuses = statuses
        self._covariates = covariates

    @property
    def schema(self) -> Schema:
        return self._schema

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def statuses(self) -> np.ndarray:
        return self._statuses

    @property
    def covariates(self) -> np.ndarray:
        return self._covariates

    @property
    def eventCount(self) -> int:
        """Gets how many uncensored records we have

        :param self:
            Self

        :return int:
            The event count
        """

        return int(self._statuses.sum())

    def __len__(self) -> int:
        return len(self._times)

    def column(self, variable: int) -> np.ndarray:
        """Gets a covariate column

        :param self:
            Self
        :param variable:
            The schema index

        :return np.ndarray:
            The column's values
        """

        return self._covariates[:, variable]

    def record(self, index: int) -> Record:
        """Gets a single record

        :param self:
            Self
        :param index:
            The row index

        :return Record:
            The record
        """

        return Record(
            time = self._times[index],
            status = self._statuses[index],
            covariates = self._covariates[index]
        )

    def records(self) -> typing.Iterator[Record]:
        """Iterates over our records

        :param self:
            Self

        :yield Record:
            The next record
        """

        for i in range(len(self)):
            yield self.record(index = i)

    def allRows(self) -> SampleIndex:
        """Gets an index of every row

        :param self:
            Self

        :return SampleIndex:
            All of our rows, once each
        """

        return SampleIndex(indices = np.arange(len(self)), parentSize = len(self))

    def subset(self, index: typing.Union[SampleIndex, np.ndarray]) -> "Dataset":
        """Materializes a subset of our rows

        Repeated indices produce repeated rows, so bootstrap samples work
        directly.

        :param self:
            Self
        :param index:
            The rows to take

        :return Dataset:
            The subset
        """

        if isinstance(index, SampleIndex):
            index = index.indices

        return Dataset(
            schema = self._schema,
            times = self._times[index],
            statuses = self._statuses[index],
            covariates = self._covariates[index]
        )

    def toFrame(self, timeColumn: str = "time", statusColumn: str = "status") -> pandas.DataFrame:
        """Creates a data frame of us, nominal values spelled out as levels

        :param self:
            Self
        :param timeColumn:
            The time column name
        :param statusColumn:
            The status column name

        :return pandas.DataFrame:
            The frame
        """

        columns = {timeColumn: self._times, statusColumn: self._statuses}

        for j, covariate in enumerate(self._schema):
            if covariate.isNominal:
                columns[covariate.name] = [covariate.levels[int(code)] for code in self._covariates[:, j]]

            elif covariate.kind == Covariate.Kind.Binary:
                columns[covariate.name] = self._covariates[:, j].astype(int)

            else:
                columns[covariate.name] = self._covariates[:, j]

        return pandas.DataFrame(columns)

    def writeCsv(self, fileName: str, timeColumn: str = "time", statusColumn: str = "status") -> None:
        """Writes us to a CSV file that loadCsv() reads back

        :param self:
            Self
        :param fileName:
            The file to write
        :param timeColumn:
            The time column name
        :param statusColumn:
            The status column name

        :return none:
        """

        self.toFrame(timeColumn = timeColumn, statusColumn = statusColumn).to_csv(
            fileName,
            index = False,
            float_format = "%.10g",
            lineterminator = "\n"
        )
