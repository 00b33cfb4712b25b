"""
Errors raised by the fusetree package

Each error carries the exit code a command returns when the error reaches the
command boundary.
"""

import typing

class Error(Exception):
    """A fusetree error
    """

    exitCode = 1
    """The command exit code for this kind of error"""

class ConfigError(Error, ValueError):
    """An invalid configuration value, key or file
    """

    exitCode = 2

class DataError(Error, ValueError):
    """Invalid input data

    The row number, if known, is the 1-based data row in the input file (the
    header row not counted).
    """

    exitCode = 3

    def __init__(self, message: str, row: typing.Optional[int] = None, column: typing.Optional[str] = None) -> None:
        """Creates a new data error

        :param self:
            Self
        :param message:
            What went wrong
        :param row:
            The offending data row, if any
        :param column:
            The offending column, if any

        :return none:
        """

        self.row = row
        self.column = column

        if row is not None:
            message = f"row {row}: {message}"

        super().__init__(message)

class NumericalError(Error, ArithmeticError):
    """A numerical failure that can't be recovered from
    """

    exitCode = 4

class DegenerateSplitError(NumericalError):
    """A logrank statistic with zero variance

    Raised when one side of a split is empty at every event time, meaning the
    split carries no information.
    """
