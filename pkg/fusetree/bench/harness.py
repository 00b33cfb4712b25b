"""
Simulation studies

Each study runs its replicates in parallel, every replicate drawing from
streams keyed by the study, the setting and the replicate number. The
pipeline inside a replicate runs single-threaded so workers don't nest.
"""

import logging
import math
import typing

import joblib
import numpy as np
import pandas

from fusetree.data import deriveSeed
from fusetree.error import Error
from fusetree.inference import BbcConfig
from fusetree.inference import bootstrapBiasCorrect
from fusetree.inference import groupFit
from fusetree.inference import recordGroups
from fusetree.selection import PipelineConfig
from fusetree.selection import patternDeviance
from fusetree.selection import select
from fusetree.split import SplitConfig
from fusetree.split import bestSplit
from fusetree.split import greedySearch
from fusetree.split import ivSplit
from fusetree.split import sssSearch
from fusetree.survival import concordance

from .censoring import calibrateCensoring
from .censoring import simulate
from .config import BenchConfig
from .metrics import BenchMetrics
from .metrics import BiasMetrics
from .metrics import ReplicateResult
from .metrics import usedVariables
from .models import SimModel
from .models import cutoffModel
from .models import getModel
from .models import selectionModel

Shapes = [float(a) for a in range(5, 105, 5)]
"""The sigmoid shapes the cutoff study sweeps"""

EcpEffect = -0.1
"""The weak cutoff effect the end-cut study uses"""

EcpWindow = (0.3, 0.7)
"""The central cutoff window the end-cut study counts hits in"""

SweepEffects = [round(0.1 * i, 1) for i in range(16)]
"""The binary covariate effects the selection sweep runs through"""

BalancedEffects = [1.0, -1.0, 1.0, -1.0, 1.0]
"""The effects of the balanced non-null selection setting"""

FailureTypes = (Error, ValueError, ArithmeticError, np.linalg.LinAlgError)
"""The failures a replicate records instead of raising"""

def _serial(pipeline: PipelineConfig) -> PipelineConfig:
    return PipelineConfig(
        split = pipeline.split,
        grow = pipeline.grow,
        fusion = pipeline.fusion,
        select = pipeline.select,
        threads = 1
    )

def _comparisonReplicate(
    model: SimModel,
    rate: float,
    config: BenchConfig,
    pipeline: PipelineConfig,
    replicate: int,
    seed: int
) -> ReplicateResult:
    """Runs one comparison replicate

    :param model:
        The model
    :param rate:
        The censoring rate
    :param config:
        The bench settings
    :param pipeline:
        The pipeline settings
    :param replicate:
        The replicate number
    :param seed:
        The replicate's seed

    :return ReplicateResult:
        The result, with the error recorded if the replicate failed
    """

    try:
        train = simulate(model = model, n = config.size, rate = rate, seed = seed, label = "train")
        test = simulate(model = model, n = config.testSize, rate = rate, seed = seed, label = "test")

        selection = select(data = train, config = pipeline, seed = seed)

        leafIds = selection.initial.routeAll(data = test)

        risks = selection.pattern.relaxed[selection.grouping.groupsOf(leafIds = leafIds) - 1]

        return ReplicateResult(
            model = model.tag,
            replicate = replicate,
            size = selection.groupCount,
            leaves = len(selection.initial.leaves),
            used = usedVariables(tree = selection.tree),
            important = model.important,
            deviance = patternDeviance(pattern = selection.pattern, tree = selection.initial, data = test),
            concordance = concordance(riskScores = risks, times = test.times, statuses = test.statuses)
        )

    except FailureTypes as ex:
        logging.getLogger(__name__).warning(f"Model {model.tag} replicate {replicate} failed: {ex}")

        return ReplicateResult(model = model.tag, replicate = replicate, important = model.important, error = str(ex))

def runComparison(
    config: BenchConfig,
    pipeline: PipelineConfig = None,
    seed: int = 0
) -> typing.Tuple[pandas.DataFrame, pandas.DataFrame]:
    """Runs the model comparison study

    :param config:
        The bench settings
    :param pipeline:
        The pipeline settings
    :param seed:
        The random seed

    :return pandas.DataFrame:
        One metrics row per model
    :return pandas.DataFrame:
        One row per replicate
    """

    logger = logging.getLogger(__name__)

    if pipeline is None:
        pipeline = PipelineConfig()

    summary = []
    raw = []

    for tag in config.models:
        model = getModel(tag = tag)

        rate = calibrateCensoring(model = model, target = config.censoring)

        logger.info(f"Running {config.replicates} replicates of model {model}")

        results = joblib.Parallel(n_jobs = pipeline.jobs)(
            joblib.delayed(_comparisonReplicate)(
                model = model,
                rate = rate,
                config = config,
                pipeline = _serial(pipeline = pipeline),
                replicate = r,
                seed = deriveSeed(seed, f"comparison-{model.tag}", r)
            )
            for r in range(config.replicates)
        )

        metrics = BenchMetrics(model = model.tag, results = results)

        summary.append(metrics.toRow())
        raw.extend(result.toRow() for result in results)

    return pandas.DataFrame(summary), pandas.DataFrame(raw)

def _biasReplicate(
    model: SimModel,
    rate: float,
    config: BenchConfig,
    pipeline: PipelineConfig,
    bbc: BbcConfig,
    replicate: int,
    seed: int
) -> typing.List[dict]:
    """Runs one bias replicate

    :param model:
        The model
    :param rate:
        The censoring rate
    :param config:
        The bench settings
    :param pipeline:
        The pipeline settings
    :param bbc:
        The bias-correction settings
    :param replicate:
        The replicate number
    :param seed:
        The replicate's seed

    :return typing.List[dict]:
        One row per non-reference group whose truth could be fitted
    """

    logger = logging.getLogger(__name__)

    try:
        train = simulate(model = model, n = config.size, rate = rate, seed = seed, label = "train")

        selection = select(data = train, config = pipeline, seed = seed)

        report = bootstrapBiasCorrect(
            data = selection.data,
            tree = selection.tree,
            config = pipeline,
            replicates = bbc.replicates,
            seed = deriveSeed(seed, "bbc"),
            direction = bbc.direction,
            level = bbc.level
        )

        count = len(report.summary)

        if count < 2:
            return []

        truthData = simulate(model = model, n = config.truthSize, rate = rate, seed = seed, label = "truth")

        truth = groupFit(
            groups = recordGroups(data = truthData, tree = selection.tree),
            count = count,
            data = truthData
        )

    except FailureTypes as ex:
        logger.warning(f"Model {model.tag} bias replicate {replicate} failed: {ex}")

        return []

    if truth.diverged:
        logger.warning(f"Model {model.tag} bias replicate {replicate} has a diverged truth fit")

        return []

    truthSd = truth.standardErrors * math.sqrt(config.truthSize)

    rows = []

    for k in range(1, count):
        rows.append({
            "model": model.tag,
            "replicate": replicate,
            "group": k + 1,
            "groups": count,
            "truth_beta": truth.coefficients[k - 1],
            "raw_beta": report.summary.beta[k],
            "corrected_beta": report.beta[k],
            "truth_sd": truthSd[k - 1],
            "raw_sd": report.rawSd[k],
            "corrected_sd": report.sd[k],
        })

    return rows

def runBiasStudy(
    config: BenchConfig,
    pipeline: PipelineConfig = None,
    bbc: BbcConfig = None,
    seed: int = 0
) -> typing.Tuple[pandas.DataFrame, pandas.DataFrame]:
    """Runs the bias-correction study

    :param config:
        The bench settings, whose models are judged in turn
    :param pipeline:
        The pipeline settings
    :param bbc:
        The bias-correction settings
    :param seed:
        The random seed

    :return pandas.DataFrame:
        Two rows per model, one per estimate
    :return pandas.DataFrame:
        One row per replicate group
    """

    if pipeline is None:
        pipeline = PipelineConfig()

    if bbc is None:
        bbc = BbcConfig()

    summary = []
    frames = []

    for tag in config.models:
        model = getModel(tag = tag)

        rate = calibrateCensoring(model = model, target = config.censoring)

        results = joblib.Parallel(n_jobs = pipeline.jobs)(
            joblib.delayed(_biasReplicate)(
                model = model,
                rate = rate,
                config = config,
                pipeline = _serial(pipeline = pipeline),
                bbc = bbc,
                replicate = r,
                seed = deriveSeed(seed, f"bias-{model.tag}", r)
            )
            for r in range(config.replicates)
        )

        frame = pandas.DataFrame(
            [row for rows in results for row in rows],
            columns = ["model", "replicate", "group", "groups", "truth_beta", "raw_beta", "corrected_beta", "truth_sd", "raw_sd", "corrected_sd"]
        )

        summary.extend(BiasMetrics(model = model.tag, frame = frame).toRows())
        frames.append(frame)

    return pandas.DataFrame(summary), pandas.concat(frames, ignore_index = True)

def _cutoffReplicate(model: SimModel, rate: float, n: int, shapes: typing.List[float], split: SplitConfig, replicate: int, seed: int) -> typing.List[dict]:
    """Finds one sample's cutoffs with each search

    :param model:
        The single-cutoff model
    :param rate:
        The censoring rate
    :param n:
        The sample size
    :param shapes:
        The sigmoid shapes to search with
    :param split:
        The split settings
    :param replicate:
        The replicate number
    :param seed:
        The replicate's seed

    :return typing.List[dict]:
        One row per search, the cutoff NaN when none was admissible
    """

    data = simulate(model = model, n = n, rate = rate, seed = seed)

    results = [("gs", math.nan, greedySearch(node = data, variable = 0, config = split))]

    for shape in shapes:
        results.append(("sss", shape, sssSearch(node = data, variable = 0, config = split.copy(shape = shape))))

    return [
        {
            "replicate": replicate,
            "method": method,
            "shape": shape,
            "cutoff": result.spec.cutoff if result.feasible else math.nan,
        }
        for method, shape, result in results
    ]

def _selectionReplicate(model: SimModel, rate: float, n: int, split: SplitConfig, pipeline: PipelineConfig, replicate: int, seed: int) -> typing.List[dict]:
    """Finds one sample's root split variable, plainly and by validation

    :param model:
        The selection-bias model
    :param rate:
        The censoring rate
    :param n:
        The sample size
    :param split:
        The greedy split settings both selections use
    :param pipeline:
        The pipeline settings, for the validation minima
    :param replicate:
        The replicate number
    :param seed:
        The replicate's seed

    :return typing.List[dict]:
        One row per selection method
    """

    data = simulate(model = model, n = n, rate = rate, seed = seed)

    results = {
        "gs": bestSplit(node = data, config = split),
        "iv": ivSplit(
            node = data,
            config = split,
            seed = deriveSeed(seed, "iv"),
            minSize = pipeline.grow.ivMinSize,
            minEvents = pipeline.grow.ivMinEvents
        ),
    }

    return [
        {
            "replicate": replicate,
            "method": method,
            "variable": data.schema[result.variable].name if result.feasible else "",
        }
        for method, result in results.items()
    ]

def _cutoffStudy(
    model: SimModel,
    config: BenchConfig,
    pipeline: PipelineConfig,
    shapes: typing.List[float],
    label: str,
    seed: int
) -> pandas.DataFrame:
    rate = calibrateCensoring(model = model, target = config.censoring)

    results = joblib.Parallel(n_jobs = pipeline.jobs)(
        joblib.delayed(_cutoffReplicate)(
            model = model,
            rate = rate,
            n = config.splitSize,
            shapes = shapes,
            split = pipeline.split,
            replicate = r,
            seed = deriveSeed(seed, label, r)
        )
        for r in range(config.replicates)
    )

    return pandas.DataFrame([row for rows in results for row in rows])

def selectionScenarios() -> typing.List[typing.Tuple[str, float, typing.List[float]]]:
    """Gets the selection-bias settings

    :return typing.List[typing.Tuple[str, float, typing.List[float]]]:
        Each setting's name, binary covariate effect and five effects
    """

    scenarios = [("null", 0.0, [0.0] * 5)]

    for effect in SweepEffects:
        scenarios.append(("sweep", effect, [effect, 0.0, 0.0, 0.0, 0.0]))

    scenarios.append(("balanced", BalancedEffects[0], list(BalancedEffects)))

    return scenarios

def runSplitStudy(config: BenchConfig, pipeline: PipelineConfig = None, seed: int = 0) -> typing.Dict[str, pandas.DataFrame]:
    """Runs the split studies

    The cutoff study compares greedy and sigmoid cutoff recovery on the
    single-cutoff model. The end-cut study records where each search puts a
    weak cutoff. The selection study counts which variable the root split
    uses, under greedy selection and under intersected validation, for the
    null, the binary effect sweep and the balanced settings.

    :param config:
        The bench settings
    :param pipeline:
        The pipeline settings
    :param seed:
        The random seed

    :return typing.Dict[str, pandas.DataFrame]:
        The reports: 'cutoff_raw', 'cutoff_mse', 'ecp_raw', 'ecp_summary',
        'selection_raw' and 'selection_frequency'
    """

    logger = logging.getLogger(__name__)

    if pipeline is None:
        pipeline = PipelineConfig()

    reports = {}

    cutoffs = _cutoffStudy(model = cutoffModel(), config = config, pipeline = pipeline, shapes = Shapes, label = "cutoff", seed = seed)
    cutoffs["squared_error"] = (cutoffs["cutoff"] - 0.5) ** 2

    reports["cutoff_raw"] = cutoffs
    reports["cutoff_mse"] = cutoffs.groupby(["method", "shape"], dropna = False, sort = True).agg(
        mse = ("squared_error", "mean"),
        found = ("cutoff", "count")
    ).reset_index()

    logger.info("Cutoff study done")

    ecp = _cutoffStudy(
        model = cutoffModel(beta1 = EcpEffect),
        config = config,
        pipeline = pipeline,
        shapes = [pipeline.split.shape],
        label = "ecp",
        seed = seed
    )
    ecp["central"] = ecp["cutoff"].between(*EcpWindow)

    reports["ecp_raw"] = ecp
    reports["ecp_summary"] = ecp.groupby(["method", "shape"], dropna = False, sort = True).agg(
        central = ("central", "mean"),
        found = ("cutoff", "count")
    ).reset_index()

    logger.info("End-cut study done")

    greedy = pipeline.split.copy(method = SplitConfig.Method.Greedy)

    frames = []

    for name, effect, effects in selectionScenarios():
        model = selectionModel(betas = effects)

        rate = calibrateCensoring(model = model, target = config.censoring)

        results = joblib.Parallel(n_jobs = pipeline.jobs)(
            joblib.delayed(_selectionReplicate)(
                model = model,
                rate = rate,
                n = config.splitSize,
                split = greedy,
                pipeline = pipeline,
                replicate = r,
                seed = deriveSeed(seed, f"selection-{name}-{effect:g}", r)
            )
            for r in range(config.replicates)
        )

        frame = pandas.DataFrame([row for rows in results for row in rows])
        frame.insert(0, "effect", effect)
        frame.insert(0, "scenario", name)

        frames.append(frame)

    selections = pandas.concat(frames, ignore_index = True)

    reports["selection_raw"] = selections
    reports["selection_frequency"] = selectionFrequencies(selections = selections, replicates = config.replicates)

    logger.info("Selection study done")

    return reports

def selectionFrequencies(selections: pandas.DataFrame, replicates: int) -> pandas.DataFrame:
    """Tabulates how often each variable was selected

    :param selections:
        One row per scenario, effect, replicate and method, with the chosen
        'variable'
    :param replicates:
        The replicates per setting

    :return pandas.DataFrame:
        One row per scenario, effect and method, one frequency column per
        variable of the selection-bias model
    """

    names = selectionModel(betas = [0.0] * 5).schema.names

    counts = pandas.crosstab(
        index = [selections["scenario"], selections["effect"], selections["method"]],
        columns = selections["variable"]
    )

    frequencies = (counts.reindex(columns = names, fill_value = 0) / float(replicates)).reset_index()
    frequencies.columns = ["scenario", "effect", "method"] + names

    return frequencies
