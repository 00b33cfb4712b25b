"""
Seeded random streams

All randomness in the package flows through counter-based Philox generators
keyed by a hash of (seed, purpose label, indices). Two consumers with
different labels never share a stream, so adding a sampler somewhere does not
perturb any other sampler's draws, and parallel tasks keyed by their index
reproduce regardless of scheduling.
"""

import hashlib

import numpy as np

def _digest(seed: int, label: str, *indices: int) -> bytes:
    """Hashes a stream key

    :param seed:
        The root seed
    :param label:
        The consumer's purpose
    :param indices:
        Any further discriminators, such as a replicate number

    :return bytes:
        The key digest
    """

    key = "/".join([str(int(seed)), label] + [str(int(index)) for index in indices])

    return hashlib.sha256(key.encode("utf-8")).digest()

def deriveSeed(seed: int, label: str, *indices: int) -> int:
    """Derives a child seed

    :param seed:
        The root seed
    :param label:
        The consumer's purpose
    :param indices:
        Any further discriminators

    :return int:
        A non-negative 63-bit child seed
    """

    return int.from_bytes(_digest(seed, label, *indices)[:8], "little") & 0x7FFFFFFFFFFFFFFF

def makeGenerator(seed: int, label: str, *indices: int) -> np.random.Generator:
    """Makes a generator for one consumer

    :param seed:
        The root seed
    :param label:
        The consumer's purpose
    :param indices:
        Any further discriminators

    :return np.random.Generator:
        The generator
    """

    key = int.from_bytes(_digest(seed, label, *indices)[:16], "little")

    return np.random.Generator(np.random.Philox(key = key))
