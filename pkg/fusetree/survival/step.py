"""
Right-continuous step functions of time
"""

import typing

import numpy as np
import pandas

class StepFunction:
    """A right-continuous step function with jumps at given times

    Before the first jump the function takes its initial value; after the
    last jump it stays flat.
    """

    def __init__(self, times: np.ndarray, values: np.ndarray, initial: float) -> None:
        """Creates a new step function

        :param self:
            Self
        :param times:
            The strictly increasing jump times
        :param values:
            The value from each jump time on
        :param initial:
            The value before the first jump

        :raise ValueError:
            Mismatched or unsorted jumps

        :return none:
        """

        times = np.array(times, dtype = float).reshape(-1)
        values = np.array(values, dtype = float).reshape(-1)

        if len(times) != len(values):
            raise ValueError("Step function needs one value per jump time")

        if np.any(np.diff(times) <= 0.0):
            raise ValueError("Step function jump times must be strictly increasing")

        self._times = times
        self._values = values
        self._initial = float(initial)

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def initial(self) -> float:
        return self._initial

    def __len__(self) -> int:
        return len(self._times)

    def __call__(self, t: typing.Union[float, np.ndarray]) -> typing.Union[float, np.ndarray]:
        """Evaluates the function

        :param self:
            Self
        :param t:
            One or more times

        :return float:
            The value at a single time
        :return np.ndarray:
            The values at each time
        """

        positions = np.searchsorted(self._times, np.asarray(t, dtype = float), side = "right") - 1

        values = np.where(
            positions < 0,
            self._initial,
            self._values[np.clip(positions, 0, None)] if len(self._values) > 0 else self._initial
        )

        if np.ndim(t) == 0:
            return float(values)

        return values

    def toFrame(self, valueColumn: str = "value") -> pandas.DataFrame:
        """Creates a two-column (time, value) frame of our jumps

        The first row holds the initial value at time 0.

        :param self:
            Self
        :param valueColumn:
            The name of the value column

        :return pandas.DataFrame:
            The frame
        """

        return pandas.DataFrame({
            "time": np.concatenate([[0.0], self._times]),
            valueColumn: np.concatenate([[self._initial], self._values])
        })

    def toDict(self) -> dict:
        return {"times": self._times.tolist(), "values": self._values.tolist(), "initial": self._initial}

class SurvivalCurve(StepFunction):
    """A survival curve, starting at 1 and non-increasing
    """

    def __init__(self, times: np.ndarray, values: np.ndarray) -> None:
        super().__init__(times = times, values = values, initial = 1.0)

    def median(self) -> typing.Optional[float]:
        """Gets the median survival time

        :param self:
            Self

        :return None:
            The curve never drops to one half
        :return float:
            The first time the curve is at or below one half
        """

        below = np.flatnonzero(self._values <= 0.5)

        if len(below) < 1:
            return None

        return float(self._times[below[0]])

class BaselineHazard(StepFunction):
    """A cumulative baseline hazard, starting at 0 and non-decreasing

    The floor is the smallest value the hazard is allowed to take when its
    logarithm is needed, so events before the first jump still get a finite
    log-hazard.
    """

    def __init__(self, times: np.ndarray, values: np.ndarray, floor: float) -> None:
        super().__init__(times = times, values = values, initial = 0.0)

        self.floor = float(floor)

    def floored(self, t: typing.Union[float, np.ndarray]) -> typing.Union[float, np.ndarray]:
        """Evaluates the hazard, floored for taking logarithms

        :param self:
            Self
        :param t:
            One or more times

        :return float:
            The floored value at a single time
        :return np.ndarray:
            The floored values
        """

        return np.maximum(self(t), self.floor)

    def toDict(self) -> dict:
        data = super().toDict()

        data["floor"] = self.floor

        return data

    @staticmethod
    def makeFromDict(data: dict) -> "BaselineHazard":
        return BaselineHazard(times = data["times"], values = data["values"], floor = data["floor"])
