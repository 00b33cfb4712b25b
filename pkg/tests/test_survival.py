import math

import numpy as np
import pytest

from fusetree.error import DataError
from fusetree.error import DegenerateSplitError
from fusetree.survival import BaselineHazard
from fusetree.survival import PartialLikelihood
from fusetree.survival import breslowHazard
from fusetree.survival import buildRiskTable
from fusetree.survival import concordance
from fusetree.survival import coxFit
from fusetree.survival import deviance
from fusetree.survival import devianceTerms
from fusetree.survival import kaplanMeier
from fusetree.survival import logrankStatistic

def directLogrank(left: np.ndarray, times: np.ndarray, statuses: np.ndarray) -> float:
    """A plain loop over event times, for checking the vectorized statistic"""

    numerator = 0.0
    variance = 0.0

    for t in np.unique(times[statuses == 1]):
        atRisk = times >= t
        died = (times == t) & (statuses == 1)

        Y = atRisk.sum()
        d = died.sum()
        YL = (atRisk & left).sum()
        dL = (died & left).sum()

        if Y <= 1:
            continue

        numerator += dL - YL * d / Y
        variance += d * (Y - d) * YL * (Y - YL) / (Y * Y * (Y - 1.0))

    return numerator ** 2 / variance

class TestRiskTable:
    def test_counts(self):
        table = buildRiskTable(times = [1.0, 2.0, 3.0], statuses = [1, 0, 1])

        assert list(table.eventTimes) == [1.0, 3.0]
        assert list(table.atRisk) == [3.0, 1.0]
        assert list(table.deaths) == [1.0, 1.0]

    def test_ties(self):
        table = buildRiskTable(times = [2.0, 2.0, 2.0, 5.0], statuses = [1, 1, 0, 1])

        assert list(table.eventTimes) == [2.0, 5.0]
        assert list(table.atRisk) == [4.0, 1.0]
        assert list(table.deaths) == [2.0, 1.0]

    def test_needs_an_event(self):
        with pytest.raises(DataError):
            buildRiskTable(times = [1.0, 2.0], statuses = [0, 0])

class TestLogrank:
    def test_two_records(self):
        statistic = logrankStatistic(membership = [1.0, 0.0], times = [1.0, 2.0], statuses = [1, 0])

        assert statistic == pytest.approx(1.0)

    def test_hand_computed(self):
        statistic = logrankStatistic(membership = [1.0, 0.0, 1.0, 0.0], times = [1.0, 2.0, 3.0, 4.0], statuses = [1, 1, 1, 1])

        assert statistic == pytest.approx(8.0 / 13.0)

    def test_symmetric_in_sides(self):
        times = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        statuses = np.array([1, 0, 1, 1, 0])
        left = np.array([1.0, 1.0, 0.0, 0.0, 1.0])

        assert logrankStatistic(membership = left, times = times, statuses = statuses) == pytest.approx(
            logrankStatistic(membership = 1.0 - left, times = times, statuses = statuses)
        )

    def test_all_left_is_degenerate(self):
        with pytest.raises(DegenerateSplitError):
            logrankStatistic(membership = [1.0, 1.0, 1.0], times = [1.0, 2.0, 3.0], statuses = [1, 1, 1])

    def test_membership_range(self):
        with pytest.raises(ValueError):
            logrankStatistic(membership = [1.5, 0.0], times = [1.0, 2.0], statuses = [1, 1])

    def test_matches_direct_loop(self):
        generator = np.random.default_rng(2024)

        checked = 0

        for _ in range(200):
            n = int(generator.integers(4, 31))

            times = generator.integers(1, 12, size = n).astype(float)
            statuses = generator.integers(0, 2, size = n)
            left = generator.integers(0, 2, size = n).astype(bool)

            try:
                statistic = logrankStatistic(membership = left.astype(float), times = times, statuses = statuses)

            except (DegenerateSplitError, DataError):
                continue

            assert statistic == pytest.approx(directLogrank(left = left, times = times, statuses = statuses), abs = 1e-10)

            checked += 1

        assert checked > 100

    def test_soft_membership_tends_to_hard(self):
        times = np.arange(1.0, 21.0)
        statuses = np.ones(20, dtype = int)
        z = np.linspace(0.0, 1.0, 20)

        hard = logrankStatistic(membership = (z <= 0.5).astype(float), times = times, statuses = statuses)
        soft = logrankStatistic(membership = 1.0 / (1.0 + np.exp(2000.0 * (z - 0.5))), times = times, statuses = statuses)

        assert soft == pytest.approx(hard, rel = 1e-6)

class TestKaplanMeier:
    def test_single_death(self):
        curve = kaplanMeier(times = [1.0, 2.0, 3.0], statuses = [1, 0, 0])

        assert curve(0.5) == pytest.approx(1.0)
        assert curve(1.0) == pytest.approx(2.0 / 3.0)
        assert curve(10.0) == pytest.approx(2.0 / 3.0)
        assert curve.median() is None

    def test_all_censored(self):
        curve = kaplanMeier(times = [1.0, 2.0], statuses = [0, 0])

        assert len(curve) == 0
        assert curve(5.0) == pytest.approx(1.0)

    def test_median(self):
        curve = kaplanMeier(times = [1.0, 2.0, 3.0, 4.0], statuses = [1, 1, 1, 1])

        assert curve.median() == pytest.approx(2.0)
        assert list(curve(np.array([1.0, 3.0]))) == pytest.approx([0.75, 0.25])

    def test_needs_records(self):
        with pytest.raises(ValueError):
            kaplanMeier(times = [], statuses = [])

    def test_frame_starts_at_one(self):
        frame = kaplanMeier(times = [1.0, 2.0], statuses = [1, 1]).toFrame(valueColumn = "survival")

        assert list(frame.columns) == ["time", "survival"]
        assert frame["survival"].iloc[0] == 1.0
        assert frame["time"].iloc[0] == 0.0

class TestCox:
    def test_identical_groups(self):
        times = np.tile(np.arange(1.0, 11.0), 2)
        statuses = np.ones(20, dtype = int)
        design = np.repeat([0.0, 1.0], 10).reshape(-1, 1)

        fit = coxFit(design = design, times = times, statuses = statuses)

        assert fit.coefficients[0] == pytest.approx(0.0, abs = 1e-8)
        assert fit.converged
        assert not fit.diverged

    def test_recovers_effect(self):
        generator = np.random.default_rng(5)

        z = generator.integers(0, 2, size = 2000).astype(float)
        times = generator.exponential(1.0 / np.exp(0.8 * z))

        fit = coxFit(design = z.reshape(-1, 1), times = times, statuses = np.ones(2000, dtype = int))

        assert fit.coefficients[0] == pytest.approx(0.8, abs = 0.15)
        assert np.max(np.abs(fit.gradient)) < 1e-4
        assert fit.standardErrors[0] > 0.0

    def test_eventless_group_diverges(self):
        times = np.arange(1.0, 11.0)
        statuses = np.array([1, 1, 1, 1, 1, 0, 0, 0, 0, 0])
        design = np.array([0.0] * 5 + [1.0] * 5).reshape(-1, 1)

        fit = coxFit(design = design, times = times, statuses = statuses)

        assert fit.diverged
        assert fit.coefficients[0] == pytest.approx(-15.0)

    def test_derivatives_match_differences(self):
        generator = np.random.default_rng(8)

        design = generator.normal(size = (40, 2))
        times = generator.exponential(size = 40)
        statuses = generator.integers(0, 2, size = 40)
        statuses[0] = 1

        likelihood = PartialLikelihood(design = design, times = times, statuses = statuses)

        beta = np.array([0.3, -0.2])

        _, gradient, hessian = likelihood.evaluate(beta = beta)

        step = 1e-6

        for j in range(2):
            shift = np.zeros(2)
            shift[j] = step

            upper = likelihood.evaluate(beta = beta + shift, derivatives = False)[0]
            lower = likelihood.evaluate(beta = beta - shift, derivatives = False)[0]

            assert gradient[j] == pytest.approx((upper - lower) / (2.0 * step), abs = 1e-5)

        assert np.allclose(hessian, hessian.T)
        assert np.all(np.linalg.eigvalsh(hessian) <= 1e-10)

class TestBreslow:
    def test_null_hazard(self):
        hazard = breslowHazard(beta = np.zeros(1), design = np.zeros((3, 1)), times = [1.0, 2.0, 3.0], statuses = [1, 1, 1])

        assert list(hazard.values) == pytest.approx([1.0 / 3.0, 5.0 / 6.0, 11.0 / 6.0])
        assert hazard.floor == pytest.approx(0.5 / 3.0)

    def test_floor_before_first_event(self):
        hazard = BaselineHazard(times = [2.0], values = [0.5], floor = 0.1)

        assert hazard(1.0) == 0.0
        assert hazard.floored(1.0) == pytest.approx(0.1)
        assert hazard.floored(3.0) == pytest.approx(0.5)

class TestDeviance:
    def test_terms(self):
        hazard = BaselineHazard(times = [1.0, 2.0], values = [0.5, 1.0], floor = 0.1)

        terms = devianceTerms(
            baseline = hazard,
            beta = np.array([0.0]),
            design = np.zeros((3, 1)),
            times = np.array([0.5, 1.5, 2.5]),
            statuses = np.array([1, 0, 1])
        )

        assert terms[0] == pytest.approx(2.0 * (0.0 - (1.0 + math.log(0.1))))
        assert terms[1] == pytest.approx(2.0 * 0.5)
        assert terms[2] == pytest.approx(2.0 * (1.0 - 1.0))

    def test_adds_up_over_records(self):
        hazard = BaselineHazard(times = [1.0, 2.0], values = [0.5, 1.0], floor = 0.1)

        args = dict(baseline = hazard, beta = np.array([0.4]), design = np.array([[1.0], [0.0], [1.0]]))

        whole = deviance(times = np.array([0.5, 1.5, 2.5]), statuses = np.array([1, 0, 1]), **args)

        first = deviance(baseline = hazard, beta = np.array([0.4]), design = np.array([[1.0]]), times = np.array([0.5]), statuses = np.array([1]))
        rest = deviance(baseline = hazard, beta = np.array([0.4]), design = np.array([[0.0], [1.0]]), times = np.array([1.5, 2.5]), statuses = np.array([0, 1]))

        assert whole == pytest.approx(first + rest)

class TestConcordance:
    def test_perfect_and_reversed(self):
        times = np.array([1.0, 2.0, 3.0, 4.0])
        statuses = np.ones(4, dtype = int)

        assert concordance(riskScores = [4.0, 3.0, 2.0, 1.0], times = times, statuses = statuses) == pytest.approx(1.0)
        assert concordance(riskScores = [1.0, 2.0, 3.0, 4.0], times = times, statuses = statuses) == pytest.approx(0.0)

    def test_ties_count_half(self):
        assert concordance(riskScores = [1.0, 1.0, 1.0], times = [1.0, 2.0, 3.0], statuses = [1, 1, 1]) == pytest.approx(0.5)

    def test_no_comparable_pairs(self):
        assert math.isnan(concordance(riskScores = [1.0, 2.0], times = [1.0, 2.0], statuses = [0, 0]))
