"""
Row indexes into a parent dataset
"""

import typing

import numpy as np

class SampleIndex:
    """A multiset of row indices into a parent dataset

    Indices keep the order they were given in; repeated indices are allowed so
    bootstrap samples can be described.
    """

    def __init__(self, indices: typing.Sequence[int], parentSize: typing.Optional[int] = None) -> None:
        """Creates a new sample index

        :param self:
            Self
        :param indices:
            The row indices
        :param parentSize:
            The parent dataset's size, if it should be checked

        :raise ValueError:
            An index is out of range

        :return none:
        """

        indices = np.array(indices, dtype = np.int64).reshape(-1)

        if len(indices) > 0:
            if indices.min() < 0:
                raise ValueError("Sample indices can't be negative")

            if (parentSize is not None) and (indices.max() >= parentSize):
                raise ValueError(f"Sample index {indices.max()} out of range for {parentSize} rows")

        indices.setflags(write = False)

        self._indices = indices

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    def __len__(self) -> int:
        return len(self._indices)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(int(index) for index in self._indices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SampleIndex):
            return False

        return np.array_equal(self._indices, other._indices)

    def __add__(self, other: "SampleIndex") -> "SampleIndex":
        """Joins two indexes as a multiset union

        :param self:
            Self
        :param other:
            The other index

        :return SampleIndex:
            Our indices followed by theirs
        """

        return SampleIndex(indices = np.concatenate([self._indices, other._indices]))

    def distinct(self) -> np.ndarray:
        """Gets our distinct indices

        :param self:
            Self

        :return np.ndarray:
            The sorted distinct indices
        """

        return np.unique(self._indices)

    def __str__(self) -> str:
        return f"SampleIndex({len(self)} rows, {len(self.distinct())} distinct)"
