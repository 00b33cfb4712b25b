"""
Stratified sampling

Every sampler stratifies on the censoring indicator, so partitions, folds and
bootstrap samples all keep the parent's event proportion. Each sampler is a
pure function of its inputs and seed.
"""

import logging
import math
import typing

import numpy as np

from fusetree.error import DataError

from .dataset import Dataset
from .random import makeGenerator
from .sample import SampleIndex

def _strata(data: Dataset, indices: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Splits indices into event and censored strata

    :param data:
        The parent dataset
    :param indices:
        The indices to split

    :return np.ndarray:
        The event rows
    :return np.ndarray:
        The censored rows
    """

    statuses = data.statuses[indices]

    return indices[statuses == 1], indices[statuses == 0]

def largestRemainder(total: int, weights: typing.Sequence[float]) -> typing.List[int]:
    """Apportions an integer total proportionally to weights

    Ties in the fractional parts go to the earlier weight.

    :param total:
        The integer total to apportion
    :param weights:
        The non-negative weights

    :return typing.List[int]:
        The integer shares, summing to the total
    """

    weights = np.asarray(weights, dtype = float)

    exact = total * weights / weights.sum()
    shares = np.floor(exact).astype(int)

    remainders = exact - shares

    # Stable sort keeps earlier weights first among equal remainders
    order = np.argsort(-remainders, kind = "stable")

    for i in order[:total - int(shares.sum())]:
        shares[i] += 1

    return [int(share) for share in shares]

def stratifiedPartition(data: Dataset, parts: int, seed: int, strict: bool = True) -> typing.List[SampleIndex]:
    """Randomly partitions a dataset into disjoint parts

    Each stratum is shuffled and dealt round-robin, with the censored stratum
    continuing where the event stratum left off, so per-stratum part sizes
    differ by at most one and so do total part sizes.

    :param data:
        The dataset
    :param parts:
        How many parts to make
    :param seed:
        The random seed
    :param strict:
        Whether every stratum must reach every part

    :raise ValueError:
        Fewer than two parts requested
    :raise DataError:
        A stratum is too small for the parts in strict mode

    :return typing.List[SampleIndex]:
        The parts, each with sorted indices
    """

    if parts < 2:
        raise ValueError(f"Need at least 2 parts, got {parts}")

    events, censored = _strata(data = data, indices = np.arange(len(data)))

    if strict:
        for name, stratum in (("event", events), ("censored", censored)):
            if len(stratum) < parts:
                raise DataError(f"{name} stratum has {len(stratum)} rows, too few for {parts} parts")

    generator = makeGenerator(seed, "partition", parts)

    assignments = [[] for _ in range(parts)]

    offset = 0

    for stratum in (events, censored):
        shuffled = generator.permutation(stratum)

        for i, index in enumerate(shuffled):
            assignments[(offset + i) % parts].append(int(index))

        offset = (offset + len(stratum)) % parts

    return [SampleIndex(indices = sorted(part), parentSize = len(data)) for part in assignments]

def stratifiedBootstrap(pool: SampleIndex, data: Dataset, m: int, seed: int) -> SampleIndex:
    """Draws a stratified bootstrap sample from a pool of rows

    The event and censored quotas follow the pool's proportions, with
    largest-remainder rounding.

    :param pool:
        The rows to draw from, with multiplicities
    :param data:
        The parent dataset
    :param m:
        How many rows to draw
    :param seed:
        The random seed

    :raise ValueError:
        Non-positive sample size
    :raise DataError:
        A stratum with a positive quota is empty

    :return SampleIndex:
        The drawn rows, events first
    """

    if m < 1:
        raise ValueError(f"Bootstrap sample size must be at least 1, got {m}")

    if len(pool) < 1:
        raise DataError("Can't bootstrap from an empty pool")

    events, censored = _strata(data = data, indices = pool.indices)

    quotas = largestRemainder(total = m, weights = [len(events), len(censored)])

    generator = makeGenerator(seed, "bootstrap", m)

    drawn = []

    for name, stratum, quota in (("event", events, quotas[0]), ("censored", censored, quotas[1])):
        if quota < 1:
            continue

        if len(stratum) < 1:
            raise DataError(f"{name} stratum is empty but needs {quota} draws")

        drawn.append(generator.choice(stratum, size = quota, replace = True))

    return SampleIndex(indices = np.concatenate(drawn), parentSize = len(data))

def outOfBag(pool: SampleIndex, drawn: SampleIndex) -> SampleIndex:
    """Gets the rows of a pool that a sample didn't draw

    :param pool:
        The pool
    :param drawn:
        The drawn sample

    :return SampleIndex:
        The distinct pool rows absent from the sample, sorted
    """

    return SampleIndex(indices = np.setdiff1d(pool.distinct(), drawn.distinct()))

def stratifiedSplit(data: Dataset, fraction: float, seed: int) -> typing.Tuple[SampleIndex, SampleIndex]:
    """Splits a dataset into training and test rows

    :param data:
        The dataset
    :param fraction:
        The share of each stratum that goes to the test rows
    :param seed:
        The random seed

    :raise ValueError:
        Fraction not strictly between 0 and 1

    :return SampleIndex:
        The training rows
    :return SampleIndex:
        The test rows
    """

    if not (0.0 < fraction < 1.0):
        raise ValueError(f"Test fraction must be in (0, 1), got {fraction}")

    generator = makeGenerator(seed, "split")

    train = []
    test = []

    for stratum in _strata(data = data, indices = np.arange(len(data))):
        shuffled = generator.permutation(stratum)

        count = int(math.floor(fraction * len(stratum) + 0.5))

        test.extend(shuffled[:count])
        train.extend(shuffled[count:])

    logging.getLogger(__name__).debug(f"Split {len(data)} rows into {len(train)} training and {len(test)} test rows")

    return (
        SampleIndex(indices = sorted(train), parentSize = len(data)),
        SampleIndex(indices = sorted(test), parentSize = len(data))
    )
