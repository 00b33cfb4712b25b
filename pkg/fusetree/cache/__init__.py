"""
Package caching
"""

import os
import typing

from .cache import Cache

__all__ = [
    "Cache",

    "getCache"
]

DirectoryVariable = "FUSETREE_CACHE"
"""The environment variable that moves the cache directory"""

def getCache(namespace: typing.Optional[str] = "root") -> Cache:
    """Gets a fusetree cache

    :param namespace:
        The namespace to get a cache for

    :return Cache:
        The cache
    """

    import fusetree

    directory = os.environ.get(DirectoryVariable)

    # Default to our package's installation directory
    if not directory:
        directory = os.path.join(os.path.dirname(fusetree.__file__), "__pycache__", ".fusetreecache")

    return Cache(directory = directory, namespace = namespace)
