"""
Censoring calibration and dataset simulation

Censoring times are independent exponentials with a rate chosen so the
expected censored fraction hits a target. The rate is found by bisection on
a large Monte-Carlo sample drawn from a fixed calibration stream, and
remembered in the package cache.
"""

import logging

import numpy as np

from fusetree.cache import getCache
from fusetree.data import Dataset
from fusetree.data import makeGenerator
from fusetree.error import ConfigError

from .models import SimModel

CalibrationSize = 100000
"""The Monte-Carlo sample size the censoring rate is calibrated on"""

CalibrationSeed = 20240101
"""The calibration stream's seed"""

CalibrationTolerance = 0.005
"""How close the calibrated censored fraction must be to the target"""

MaxIterations = 200

def censoredFraction(eventTimes: np.ndarray, exposures: np.ndarray, rate: float) -> float:
    """Gets the fraction of records censored at a rate

    :param eventTimes:
        The event times
    :param exposures:
        Unit exponential draws, censoring times at the rate being exposures
        over the rate
    :param rate:
        The censoring rate

    :return float:
        The censored fraction
    """

    if rate <= 0.0:
        return 0.0

    return float(np.mean(exposures / rate < eventTimes))

def calibrateCensoring(model: SimModel, target: float, size: int = CalibrationSize, useCache: bool = True) -> float:
    """Finds the censoring rate giving a target censored fraction

    :param model:
        The model
    :param target:
        The censored fraction, 0 for no censoring
    :param size:
        The calibration sample size
    :param useCache:
        Whether to look up and remember the rate in the package cache

    :raise ConfigError:
        The target isn't in [0, 1)

    :return float:
        The censoring rate, 0 for no censoring
    """

    logger = logging.getLogger(__name__)

    if not (0.0 <= target < 1.0):
        raise ConfigError(f"Censoring target must be in [0, 1), got {target}")

    if target == 0.0:
        return 0.0

    key = f"{model.tag}:{model.name}:{target:.6g}:{size}:{CalibrationSeed}"

    cache = getCache(namespace = "censoring") if useCache else None

    if cache is not None:
        rate = cache.get(key = key)

        if rate is not None:
            logger.debug(f"Using cached censoring rate {rate:.6g} for {model}")

            return float(rate)

    generator = makeGenerator(CalibrationSeed, "calibration", size)

    covariates = model.covariates(n = size, generator = generator)
    eventTimes = model.eventTimes(covariates = covariates, generator = generator)
    exposures = generator.exponential(size = size)

    # Bisect on the log rate; the censored fraction grows with the rate
    low, high = -20.0, 20.0

    for _ in range(MaxIterations):
        middle = (low + high) / 2.0

        fraction = censoredFraction(eventTimes = eventTimes, exposures = exposures, rate = np.exp(middle))

        if abs(fraction - target) <= CalibrationTolerance / 10.0:
            break

        if fraction < target:
            low = middle
        else:
            high = middle

    rate = float(np.exp(middle))

    if abs(fraction - target) > CalibrationTolerance:
        logger.warning(f"Censoring calibration for {model} reached {fraction:.4f} against a target of {target:.4f}")

    logger.info(f"Calibrated censoring rate {rate:.6g} for {model} at {fraction:.4f} censored")

    if cache is not None:
        cache.set(key = key, value = rate)

    return rate

def simulate(model: SimModel, n: int, rate: float, seed: int, label: str = "simulate") -> Dataset:
    """Draws a dataset from a model

    :param model:
        The model
    :param n:
        The record count
    :param rate:
        The censoring rate, 0 for no censoring
    :param seed:
        The random seed
    :param label:
        The random stream's purpose, so training and test samples with the
        same seed differ

    :return Dataset:
        The dataset
    """

    generator = makeGenerator(seed, label, n)

    covariates = model.covariates(n = n, generator = generator)
    eventTimes = model.eventTimes(covariates = covariates, generator = generator)

    if rate > 0.0:
        censorTimes = generator.exponential(scale = 1.0 / rate, size = n)
    else:
        censorTimes = np.full(n, np.inf)

    statuses = (eventTimes <= censorTimes).astype(int)

    return Dataset(
        schema = model.schema,
        times = np.minimum(eventTimes, censorTimes),
        statuses = statuses,
        covariates = covariates
    )
