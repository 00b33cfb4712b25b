"""
Configuration options, sections and storage
"""

from .config import Config
from .defaults import makeDefaultConfig
from .option import Option
from .yaml import YamlBackend

__all__ = [
    "Config",
    "Option",

    "YamlBackend",

    "makeDefaultConfig",
]
