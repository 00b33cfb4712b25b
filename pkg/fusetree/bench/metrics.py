"""
Bench metrics
"""

import math
import typing

import numpy as np
import pandas
import scipy.stats

from fusetree.tree import Tree

def usedVariables(tree: Tree) -> typing.FrozenSet[str]:
    """Gets the covariates a tree splits on

    :param tree:
        The tree

    :return typing.FrozenSet[str]:
        The covariate names
    """

    return frozenset(tree.schema[node.split.variable].name for node in tree.nodes if not node.isLeaf)

def selectionFlags(used: typing.Iterable[str], important: typing.Iterable[str]) -> typing.Tuple[bool, bool, bool]:
    """Judges a model's variable selection

    :param used:
        The covariates the model splits on
    :param important:
        The covariates the outcome truly depends on

    :return bool:
        Inclusive, every used covariate being important
    :return bool:
        Exclusive, every important covariate being used
    :return bool:
        Accurate, both at once
    """

    used = frozenset(used)
    important = frozenset(important)

    inclusive = used <= important
    exclusive = important <= used

    return inclusive, exclusive, inclusive and exclusive

class ReplicateResult:
    """One comparison replicate's outcome
    """

    def __init__(
        self,
        model: str,
        replicate: int,
        size: int = None,
        leaves: int = None,
        used: typing.Iterable[str] = (),
        important: typing.Iterable[str] = (),
        deviance: float = None,
        concordance: float = None,
        error: str = None
    ) -> None:
        """Creates a new result

        :param self:
            Self
        :param model:
            The model's tag
        :param replicate:
            The replicate number
        :param size:
            The fused group count
        :param leaves:
            The initial tree's leaf count
        :param used:
            The covariates the final tree splits on
        :param important:
            The model's important covariates
        :param deviance:
            The test deviance
        :param concordance:
            The test concordance
        :param error:
            Why the replicate failed, if it did

        :return none:
        """

        self.model = model
        self.replicate = int(replicate)
        self.size = size
        self.leaves = leaves
        self.used = frozenset(used)
        self.deviance = deviance
        self.concordance = concordance
        self.error = error

        self.inclusive, self.exclusive, self.accurate = selectionFlags(used = self.used, important = important)

        assert self.accurate == (self.inclusive and self.exclusive)

    @property
    def failed(self) -> bool:
        return self.error is not None

    def toRow(self) -> dict:
        return {
            "model": self.model,
            "replicate": self.replicate,
            "size": self.size,
            "leaves": self.leaves,
            "used": " ".join(sorted(self.used)),
            "inclusive": int(self.inclusive),
            "exclusive": int(self.exclusive),
            "accurate": int(self.accurate),
            "deviance": self.deviance,
            "concordance": self.concordance,
            "error": self.error if self.error is not None else "",
        }

def _meanSd(values: typing.List[float]) -> typing.Tuple[float, float]:
    values = np.asarray(values, dtype = float)

    if len(values) < 1:
        return math.nan, math.nan

    if len(values) < 2:
        return float(values[0]), math.nan

    return float(np.mean(values)), float(np.std(values, ddof = 1))

class BenchMetrics:
    """A model's comparison metrics over its replicates
    """

    def __init__(self, model: str, results: typing.List[ReplicateResult]) -> None:
        """Aggregates replicate results

        Failed replicates are counted but don't contribute to any metric.

        :param self:
            Self
        :param model:
            The model's tag
        :param results:
            The replicate results

        :return none:
        """

        self.model = model
        self.results = list(results)

        done = [result for result in self.results if not result.failed]

        self.replicates = len(done)
        self.failures = len(self.results) - len(done)

        self.sizeMean, self.sizeSd = _meanSd([result.size for result in done])
        self.leavesMean, _ = _meanSd([result.leaves for result in done])
        self.devianceMean, self.devianceSd = _meanSd([result.deviance for result in done])

        concordances = [result.concordance for result in done if not math.isnan(result.concordance)]

        self.concordanceMean = float(np.mean(concordances)) if len(concordances) > 0 else math.nan

        if len(done) > 0:
            self.inclusive = float(np.mean([result.inclusive for result in done]))
            self.exclusive = float(np.mean([result.exclusive for result in done]))
            self.accurate = float(np.mean([result.accurate for result in done]))
        else:
            self.inclusive = self.exclusive = self.accurate = math.nan

    def toRow(self) -> dict:
        return {
            "model": self.model,
            "replicates": self.replicates,
            "failures": self.failures,
            "size_mean": self.sizeMean,
            "size_sd": self.sizeSd,
            "leaves_mean": self.leavesMean,
            "inclusive": self.inclusive,
            "exclusive": self.exclusive,
            "accurate": self.accurate,
            "deviance_mean": self.devianceMean,
            "deviance_sd": self.devianceSd,
            "concordance_mean": self.concordanceMean,
        }

class BiasMetrics:
    """Estimation errors of raw and bias-corrected group estimates

    Every non-reference group of every replicate contributes one estimate
    and one truth, the truth coming from a large independent sample routed
    through the replicate's final tree.
    """

    Estimates = ["beta", "sd"]
    """The estimates being judged"""

    def __init__(self, model: str, frame: pandas.DataFrame) -> None:
        """Aggregates per-group estimates

        :param self:
            Self
        :param model:
            The model's tag
        :param frame:
            One row per replicate group, with 'truth_X', 'raw_X' and
            'corrected_X' columns for each estimate X

        :return none:
        """

        self.model = model
        self.frame = frame

    @staticmethod
    def _errors(estimates: np.ndarray, truths: np.ndarray) -> typing.Tuple[float, float, float]:
        if len(estimates) < 1:
            return math.nan, math.nan, math.nan

        differences = estimates - truths

        bias = float(np.mean(differences))
        mad = float(scipy.stats.median_abs_deviation(estimates, scale = 1.0))
        mse = float(np.mean(differences ** 2))

        return bias, mad, mse

    def toRows(self) -> typing.List[dict]:
        """Gets the bias table rows

        :param self:
            Self

        :return typing.List[dict]:
            One row per estimate, with the mean truth and the raw and
            corrected bias, median absolute deviation and mean squared error
        """

        rows = []

        for estimate in BiasMetrics.Estimates:
            truths = self.frame[f"truth_{estimate}"].to_numpy(dtype = float)

            rawBias, rawMad, rawMse = BiasMetrics._errors(estimates = self.frame[f"raw_{estimate}"].to_numpy(dtype = float), truths = truths)
            bias, mad, mse = BiasMetrics._errors(estimates = self.frame[f"corrected_{estimate}"].to_numpy(dtype = float), truths = truths)

            rows.append({
                "model": self.model,
                "estimate": estimate,
                "truth_mean": float(np.mean(truths)) if len(truths) > 0 else math.nan,
                "raw_bias": rawBias,
                "raw_mad": rawMad,
                "raw_mse": rawMse,
                "corrected_bias": bias,
                "corrected_mad": mad,
                "corrected_mse": mse,
            })

        return rows
