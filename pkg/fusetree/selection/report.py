"""
Selection reports
"""

import typing

import numpy as np

class SelectionReport:
    """How every candidate grouping scored
    """

    def __init__(
        self,
        criterion: str,
        lambdas: np.ndarray,
        groupCounts: np.ndarray,
        deviances: np.ndarray,
        eventCount: int,
        chosen: int = None,
        foldDeviances: np.ndarray = None,
        clamped: typing.List[bool] = None,
        oneSe: bool = False
    ) -> None:
        """Creates a new report

        :param self:
            Self
        :param criterion:
            The selection mode that chose
        :param lambdas:
            Each candidate's penalty, descending
        :param groupCounts:
            Each candidate's group count
        :param deviances:
            Each candidate's deviance, validated or in-sample
        :param eventCount:
            The event count the BIC penalty uses
        :param chosen:
            The chosen candidate; the criterion's minimum if not given
        :param foldDeviances:
            The V x M per-fold validated deviances, for cross-validation
        :param clamped:
            Whether each fold's path started above the shared penalty grid
        :param oneSe:
            Whether the one-standard-error rule chose

        :return none:
        """

        self.criterion = criterion
        self.lambdas = np.asarray(lambdas, dtype = float)
        self.groupCounts = np.asarray(groupCounts, dtype = int)
        self.deviances = np.asarray(deviances, dtype = float)
        self.eventCount = int(eventCount)
        self.foldDeviances = np.asarray(foldDeviances, dtype = float) if foldDeviances is not None else None
        self.clamped = list(clamped) if clamped is not None else []
        self.oneSe = bool(oneSe)

        self.aic = self.deviances + 2.0 * self.groupCounts
        self.bic = self.deviances + np.log(max(self.eventCount, 1)) * self.groupCounts

        self.chosen = int(chosen) if chosen is not None else self.argmin(values = self.scores)

    @property
    def scores(self) -> np.ndarray:
        """Gets the values the criterion minimizes

        :param self:
            Self

        :return np.ndarray:
            The AIC, the BIC or the deviance of each candidate
        """

        if self.criterion == "aic":
            return self.aic

        if self.criterion == "bic":
            return self.bic

        return self.deviances

    @staticmethod
    def argmin(values: np.ndarray) -> int:
        """Finds the best candidate

        Candidates come in descending penalty order, so the first minimum is
        the one with the largest penalty.

        :param values:
            The candidates' scores

        :return int:
            The index of the first minimum
        """

        return int(np.argmin(np.where(np.isfinite(values), values, np.inf)))

    def __len__(self) -> int:
        return len(self.lambdas)

    @property
    def foldStandardError(self) -> typing.Optional[np.ndarray]:
        """Gets each candidate's standard error over folds

        :param self:
            Self

        :return None:
            Not cross-validated
        :return np.ndarray:
            sqrt(V) times the fold-wise standard deviation of the validated
            deviances, the standard error of their sum
        """

        if (self.foldDeviances is None) or (len(self.foldDeviances) < 2):
            return None

        folds = len(self.foldDeviances)

        return np.sqrt(folds) * np.std(self.foldDeviances, axis = 0, ddof = 1)

    def toRows(self) -> typing.List[dict]:
        """Gets one row per candidate

        :param self:
            Self

        :return typing.List[dict]:
            The rows
        """

        rows = []

        errors = self.foldStandardError

        for m in range(len(self)):
            row = {
                "lambda": self.lambdas[m],
                "groups": int(self.groupCounts[m]),
                "deviance": self.deviances[m],
                "aic": self.aic[m],
                "bic": self.bic[m],
                "chosen": int(m == self.chosen),
            }

            if errors is not None:
                row["se"] = errors[m]

            rows.append(row)

        return rows

    def toDict(self) -> dict:
        return {
            "criterion": self.criterion,
            "chosen": self.chosen,
            "event_count": self.eventCount,
            "one_se": self.oneSe,
            "clamped_folds": [i for i, clamped in enumerate(self.clamped) if clamped],
            "candidates": self.toRows(),
        }
