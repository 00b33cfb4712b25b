"""
The default fusetree configuration
"""

from .config import Config
from .option import Option

def makeDefaultConfig() -> Config:
    """Makes a configuration holding every setting at its default

    :return Config:
        The configuration, with 'data', 'split', 'grow', 'fusion', 'select',
        'bbc', 'run' and 'bench' sections
    """

    root = Config()

    data = root.add(Config(name = "data"))
    data.add(Option(name = "time", value = "time", type = str))
    data.add(Option(name = "status", value = "status", type = str))
    data.add(Option(name = "covariates", type = list, nullable = True))

    split = root.add(Config(name = "split"))
    split.add(Option(name = "shape", value = 50.0, type = float, minimum = 0.0, exclusive = True))
    split.add(Option(name = "switch", value = 20, type = int, minimum = 2))
    split.add(Option(name = "method", value = "auto", type = str, choices = ["auto", "gs", "sss"]))
    split.add(Option(name = "minChildSize", value = 20, type = int, minimum = 1))
    split.add(Option(name = "minChildEvents", value = 5, type = int, minimum = 1))
    split.add(Option(name = "maxSubsetLevels", value = 12, type = int, minimum = 2))
    split.add(Option(name = "gridPoints", value = 50, type = int, minimum = 3))
    split.add(Option(name = "tolerance", value = 1e-4, type = float, minimum = 0.0, exclusive = True))

    grow = root.add(Config(name = "grow"))
    grow.add(Option(name = "maxDepth", value = 4, type = int, minimum = 0))
    grow.add(Option(name = "minNodeSize", value = 30, type = int, minimum = 2))
    grow.add(Option(name = "minNodeEvents", value = 8, type = int, minimum = 1))
    grow.add(Option(name = "mode", value = "iv", type = str, choices = ["iv", "plain"]))
    grow.add(Option(name = "ivMinSize", value = 30, type = int, minimum = 3))
    grow.add(Option(name = "ivMinEvents", value = 9, type = int, minimum = 3))

    fusion = root.add(Config(name = "fusion"))
    fusion.add(Option(name = "sortBy", value = "mple", type = str, choices = ["mple", "median"]))
    fusion.add(Option(name = "lambdaCount", value = 100, type = int, minimum = 2))
    fusion.add(Option(name = "lambdaRatio", value = 1e-3, type = float, minimum = 0.0, maximum = 1.0, exclusive = True))
    fusion.add(Option(name = "preDepth", type = int, minimum = 0, nullable = True))

    select = root.add(Config(name = "select"))
    select.add(Option(name = "mode", value = "cv", type = str, choices = ["test", "cv", "aic", "bic"]))
    select.add(Option(name = "folds", value = 10, type = int, minimum = 2))
    select.add(Option(name = "testFraction", value = 1.0 / 3.0, type = float, minimum = 0.0, maximum = 1.0, exclusive = True))
    select.add(Option(name = "oneSe", value = False, type = bool))
    select.add(Option(name = "foldMode", value = "plain", type = str, choices = ["plain", "iv"]))

    bbc = root.add(Config(name = "bbc"))
    bbc.add(Option(name = "replicates", value = 25, type = int, minimum = 0))
    bbc.add(Option(name = "direction", value = "add", type = str, choices = ["add", "subtract"]))
    bbc.add(Option(name = "level", value = 0.95, type = float, minimum = 0.0, maximum = 1.0, exclusive = True))

    run = root.add(Config(name = "run"))
    run.add(Option(name = "seed", value = 0, type = int, minimum = 0))
    run.add(Option(name = "threads", value = 0, type = int, minimum = 0))
    run.add(Option(name = "output", value = ".", type = str))
    run.add(Option(name = "allowDivergence", value = False, type = bool))

    bench = root.add(Config(name = "bench"))
    bench.add(Option(name = "study", value = "comparison", type = str, choices = ["comparison", "bias", "split"]))
    bench.add(Option(name = "models", value = "A,B,C,D,E,F,G", type = str))
    bench.add(Option(name = "size", value = 600, type = int, minimum = 10))
    bench.add(Option(name = "testSize", value = 1000, type = int, minimum = 10))
    bench.add(Option(name = "truthSize", value = 20000, type = int, minimum = 100))
    bench.add(Option(name = "splitSize", value = 200, type = int, minimum = 10))
    bench.add(Option(name = "replicates", value = 50, type = int, minimum = 1))
    bench.add(Option(name = "censoring", value = 0.5, type = float, minimum = 0.0, maximum = 1.0))

    return root
