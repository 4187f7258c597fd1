import itertools
from typing import Iterable, Sequence
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing import Any as Self

import numpy as np

from .rings import RingDescriptor, RingKind
from ..utils.errors import MalformedMatrix, WrongRing

__all__ = ['Matrix', 'block_diagonal', 'all_matrices']


class Matrix:
    r"""Dense square matrix over one :class:`RingDescriptor`.

    Entries are kept in a read-only object array in normal form, so
    equality is entrywise equality of exact values.

    Args:
        ring (RingDescriptor): the coefficient ring.
        entries: ``n×n`` nested sequence or array of ring elements
            (scalar strings are parsed).

    Raises:
        MalformedMatrix: the entries are not a non-empty square array.
    """

    __slots__ = ('ring', 'entries')

    def __init__(self, ring: RingDescriptor, entries):
        raw = np.asarray(entries, dtype=object)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] == 0:
            raise MalformedMatrix(f'expected a non-empty square matrix, got shape {raw.shape}')
        array = ring.array(raw)
        array.setflags(write=False)
        self.ring = ring
        self.entries = array

    @classmethod
    def _wrap(cls, ring: RingDescriptor, array: np.ndarray) -> Self:
        # entries already in normal form
        obj = cls.__new__(cls)
        array = ring.reduce(array)
        array.setflags(write=False)
        obj.ring = ring
        obj.entries = array
        return obj

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> Self:
        return cls._wrap(ring, ring.identity_array(n))

    @classmethod
    def zeros(cls, ring: RingDescriptor, n: int) -> Self:
        return cls._wrap(ring, ring.zeros((n, n)))

    @classmethod
    def from_array(cls, ring: RingDescriptor, array: np.ndarray) -> Self:
        r"""Wrap an object array whose entries are already ring elements."""
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise MalformedMatrix(f'expected a non-empty square matrix, got shape {array.shape}')
        return cls._wrap(ring, np.array(array, dtype=object))

    @classmethod
    def outer(cls, ring: RingDescriptor, column: np.ndarray, row: np.ndarray) -> Self:
        return cls._wrap(ring, np.outer(column, row).astype(object))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, index):
        return self.entries[index]

    def _check(self, other: 'Matrix'):
        if not isinstance(other, Matrix):
            raise TypeError(f'expected a Matrix, got {type(other).__name__}')
        if other.ring != self.ring:
            raise WrongRing(f'cannot combine matrices over {self.ring} and {other.ring}')
        if other.n != self.n:
            raise MalformedMatrix(f'dimension mismatch: {self.n} vs {other.n}')

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix._wrap(self.ring, self.entries @ other.entries)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix._wrap(self.ring, self.entries + other.entries)

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix._wrap(self.ring, self.entries - other.entries)

    def __neg__(self) -> 'Matrix':
        return Matrix._wrap(self.ring, -self.entries)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.ring.reduce(self.entries @ vector)

    def power(self, k: int) -> 'Matrix':
        result = Matrix.identity(self.ring, self.n)
        for _ in range(k):
            result = result @ self
        return result

    @property
    def T(self) -> 'Matrix':
        return Matrix._wrap(self.ring, self.entries.T.copy())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries.flat)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.n == other.n
                and bool(np.all(self.entries == other.entries)))

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self.entries.flat)))

    def rows(self) -> list[list[str]]:
        return [[self.ring.render(x) for x in row] for row in self.entries]

    def __repr__(self) -> str:
        body = ','.join('[' + ','.join(row) + ']' for row in self.rows())
        return f'Matrix({self.ring}, [{body}])'

    def __str__(self) -> str:
        rows = self.rows()
        width = max(len(x) for row in rows for x in row)
        return '\n'.join(' '.join(x.rjust(width) for x in row) for row in rows)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    r"""Assemble ``diag(B_1, …, B_k)`` from square blocks over one ring."""
    if not blocks:
        raise MalformedMatrix('block_diagonal needs at least one block')
    ring = blocks[0].ring
    for block in blocks:
        if block.ring != ring:
            raise WrongRing(f'blocks over {ring} and {block.ring}')
    total = sum(block.n for block in blocks)
    array = ring.zeros((total, total))
    offset = 0
    for block in blocks:
        array[offset:offset + block.n, offset:offset + block.n] = block.entries
        offset += block.n
    return Matrix.from_array(ring, array)


def all_matrices(ring: RingDescriptor, n: int) -> Iterable[Matrix]:
    r"""Every matrix of M_n(F_p) in lexicographic order of entries."""
    if ring.kind != RingKind.FP:
        raise WrongRing(f'enumeration needs a finite field, got {ring}')
    for values in itertools.product(range(ring.p), repeat=n * n):
        yield Matrix._wrap(ring, np.array(values, dtype=object).reshape(n, n))
