"""
Survival data: schemas, datasets and stratified sampling
"""

from .dataset import Dataset
from .dataset import Record
from .random import deriveSeed
from .random import makeGenerator
from .sample import SampleIndex
from .sampling import largestRemainder
from .sampling import outOfBag
from .sampling import stratifiedBootstrap
from .sampling import stratifiedPartition
from .sampling import stratifiedSplit
from .schema import Covariate
from .schema import Schema

__all__ = [
    "Covariate",
    "Schema",

    "Dataset",
    "Record",
    "SampleIndex",

    "deriveSeed",
    "makeGenerator",

    "largestRemainder",
    "outOfBag",
    "stratifiedBootstrap",
    "stratifiedPartition",
    "stratifiedSplit",
]
