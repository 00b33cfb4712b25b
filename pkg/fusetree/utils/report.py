"""
CSV and JSON report files

Floats are written with six significant digits so reports from the same
seed compare byte for byte.
"""

import json
import logging
import math
import os
import typing

import numpy as np
import pandas

FloatFormat = "%.6g"
"""How floats are written"""

def roundFloats(data: object) -> object:
    """Rounds every float in nested data to six significant digits

    Non-finite floats become None, so the data stays valid JSON.

    :param data:
        The data, of dictionaries, lists, tuples and scalars

    :return object:
        The rounded data
    """

    if isinstance(data, dict):
        return {key: roundFloats(data = value) for key, value in data.items()}

    if isinstance(data, (list, tuple)):
        return [roundFloats(data = value) for value in data]

    if isinstance(data, np.ndarray):
        return roundFloats(data = data.tolist())

    if isinstance(data, (bool, np.bool_)):
        return bool(data)

    if isinstance(data, (int, np.integer)):
        return int(data)

    if isinstance(data, (float, np.floating)):
        if not math.isfinite(data):
            return None

        return float(FloatFormat % data)

    return data

def _makeDirectory(fileName: str) -> None:
    directory = os.path.dirname(fileName)

    if len(directory) > 0:
        os.makedirs(directory, exist_ok = True)

def writeJson(fileName: str, data: object, rounded: bool = True) -> None:
    """Writes a JSON file

    :param fileName:
        The file to write
    :param data:
        The data
    :param rounded:
        Whether to round floats to six significant digits

    :return none:
    """

    _makeDirectory(fileName = fileName)

    with open(fileName, "w", encoding = "utf-8", newline = "\n") as jsonFile:
        json.dump(roundFloats(data = data) if rounded else data, jsonFile, sort_keys = True, indent = 2, allow_nan = False)
        jsonFile.write("\n")

    logging.getLogger(__name__).debug(f"Wrote '{fileName}'")

def writeCsv(fileName: typing.Union[str, typing.TextIO], rows: typing.Union[pandas.DataFrame, typing.List[dict]], columns: typing.List[str] = None) -> None:
    """Writes a CSV file with a header row

    :param fileName:
        The file to write, or an open text stream
    :param rows:
        A frame, or one dictionary per row
    :param columns:
        The columns, in order, if the rows may be empty

    :return none:
    """

    if isinstance(fileName, str):
        _makeDirectory(fileName = fileName)

    frame = rows if isinstance(rows, pandas.DataFrame) else pandas.DataFrame(rows, columns = columns)

    frame.to_csv(fileName, index = False, float_format = FloatFormat, lineterminator = "\n", encoding = "utf-8")

    logging.getLogger(__name__).debug(f"Wrote {len(frame)} rows")
