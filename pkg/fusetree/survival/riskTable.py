"""
Risk tables

A risk table lists the distinct uncensored times with how many records were
at risk and how many died at each. It backs the logrank statistic, the
Kaplan-Meier estimator and the Breslow baseline hazard.
"""

import numpy as np

from fusetree.error import DataError

class RiskTable:
    """Distinct event times with at-risk and death counts
    """

    def __init__(self, eventTimes: np.ndarray, atRisk: np.ndarray, deaths: np.ndarray) -> None:
        """Creates a new risk table

        :param self:
            Self
        :param eventTimes:
            The strictly increasing distinct event times
        :param atRisk:
            How many records have a time at or after each event time
        :param deaths:
            How many events happened at each event time

        :return none:
        """

        self.eventTimes = eventTimes
        self.atRisk = atRisk
        self.deaths = deaths

    def __len__(self) -> int:
        return len(self.eventTimes)

    def riskSetStarts(self, sortedTimes: np.ndarray) -> np.ndarray:
        """Gets where each event time's risk set starts in sorted times

        :param self:
            Self
        :param sortedTimes:
            The ascending times of the records the table was built from

        :return np.ndarray:
            For each event time, the first sorted position with T >= t
        """

        return np.searchsorted(sortedTimes, self.eventTimes, side = "left")

def buildRiskTable(times: np.ndarray, statuses: np.ndarray) -> RiskTable:
    """Builds a risk table

    :param times:
        The observed times
    :param statuses:
        The event indicators

    :raise DataError:
        No events

    :return RiskTable:
        The risk table
    """

    times = np.asarray(times, dtype = float)
    statuses = np.asarray(statuses)

    if not np.any(statuses == 1):
        raise DataError("Risk table needs at least one event")

    eventTimes, deaths = np.unique(times[statuses == 1], return_counts = True)

    sortedTimes = np.sort(times)

    atRisk = len(times) - np.searchsorted(sortedTimes, eventTimes, side = "left")

    return RiskTable(eventTimes = eventTimes, atRisk = atRisk.astype(float), deaths = deaths.astype(float))
