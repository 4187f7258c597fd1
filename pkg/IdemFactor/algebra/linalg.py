"""Exact elimination, spans, complements and projections.

All kernels come out of one local elimination with full pivoting: the
pivot is an entry of minimum valuation (over a field every nonzero entry
qualifies, so this is the first nonzero entry in column order). Column
operations are recorded in an invertible transform ``V``; the trailing
``n - rank`` columns of ``V`` span the kernel. Over Z_(p) ``V`` lies in
``GL_n(Z_(p))``, so those columns are a basis of a direct summand.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .matrix import Matrix
from .rings import RingDescriptor
from ..utils.errors import ImpureSpan, MalformedMatrix, NotInvertible

__all__ = ['ColumnSpan', 'SplitBasis',
           'eliminate', 'rank', 'kernel_basis', 'fix_basis', 'image_basis',
           'left_kernel_basis', 'is_pure', 'complement', 'projection',
           'inverse', 'column_rank']


@dataclass(frozen=True, eq=False)
class ColumnSpan:
    r"""Generators of a free direct summand of the ambient module.

    Args:
        ring (RingDescriptor): coefficient ring.
        n (int): ambient dimension.
        generators (tuple[numpy.ndarray, ...]): column vectors of length ``n``.
        pure (bool): whether the generators extend to a basis. Only
            :func:`image_basis` may produce ``False``.
    """
    ring: RingDescriptor
    n: int
    generators: tuple[np.ndarray, ...] = ()
    pure: bool = True

    @property
    def k(self) -> int:
        return len(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def matrix(self) -> np.ndarray:
        r"""``n×k`` object array with the generators as columns."""
        if not self.generators:
            return self.ring.zeros((self.n, 0))
        return np.column_stack(self.generators).astype(object)

    def head(self, k: int) -> 'ColumnSpan':
        return ColumnSpan(self.ring, self.n, self.generators[:k], self.pure)

    def __add__(self, other: 'ColumnSpan') -> 'ColumnSpan':
        return ColumnSpan(self.ring, self.n, self.generators + other.generators,
                          self.pure and other.pure)


@dataclass(frozen=True, eq=False)
class SplitBasis:
    r"""An ordered basis cut into labeled consecutive segments.

    Build it with :meth:`from_segments`; the constructor checks that the
    vectors form a basis and caches the basis matrix ``P`` and its inverse.

    Attributes:
        segments (tuple[tuple[str, int], ...]): ``(label, size)`` in basis order.
        P (Matrix): basis vectors as columns.
        P_inv (Matrix): its inverse; its rows are the dual basis.
    """
    ring: RingDescriptor
    vectors: tuple[np.ndarray, ...]
    segments: tuple[tuple[str, int], ...]
    P: Matrix = field(init=False)
    P_inv: Matrix = field(init=False)

    def __post_init__(self):
        n = len(self.vectors)
        if sum(size for _, size in self.segments) != n:
            raise MalformedMatrix('segment sizes do not add up to the number of vectors')
        if n == 0 or any(len(v) != n for v in self.vectors):
            raise MalformedMatrix(f'{n} vectors cannot form a basis of their ambient module')
        P = Matrix.from_array(self.ring, np.column_stack(self.vectors).astype(object))
        object.__setattr__(self, 'P', P)
        object.__setattr__(self, 'P_inv', inverse(P))

    @classmethod
    def from_segments(cls, segments: Sequence[tuple[str, ColumnSpan]]) -> 'SplitBasis':
        ring = segments[0][1].ring
        vectors: list[np.ndarray] = []
        for _, span in segments:
            vectors.extend(span.generators)
        return cls(ring, tuple(vectors), tuple((label, span.k) for label, span in segments))

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.segments]

    def indices(self, label: str) -> range:
        start = 0
        for name, size in self.segments:
            if name == label:
                return range(start, start + size)
            start += size
        raise KeyError(f'no segment {label!r} in {self.labels}')

    def span(self, label: str) -> ColumnSpan:
        return ColumnSpan(self.ring, self.n, tuple(self.vectors[i] for i in self.indices(label)))

    def dual(self, i: int) -> np.ndarray:
        r"""The ``i``-th dual functional, a row of ``P⁻¹``."""
        return self.P_inv.entries[i]

    def coordinates(self, a: Matrix) -> Matrix:
        r"""``P⁻¹AP``: the matrix of ``a`` in this basis."""
        return self.P_inv @ a @ self.P

    def from_coordinates(self, a: Matrix) -> Matrix:
        return self.P @ a @ self.P_inv


def _find_pivot(ring: RingDescriptor, a: np.ndarray, k: int) -> tuple[int, int] | None:
    best, best_val = None, math.inf
    rows, cols = a.shape
    for j in range(k, cols):
        for i in range(k, rows):
            x = a[i, j]
            if x == 0:
                continue
            v = ring.valuation(x)
            if v < best_val:
                best, best_val = (i, j), v
                if v == 0:
                    return best
    return best


def eliminate(ring: RingDescriptor, a: np.ndarray) -> tuple[int, np.ndarray]:
    r"""Local elimination of a (possibly rectangular) object array.

    Returns:
        (int, numpy.ndarray): the rank and the column transform ``V``,
        invertible over ``ring``, with ``a @ V[:, rank:] == 0``.
    """
    a = np.array(a, dtype=object)
    rows, cols = a.shape
    v = ring.identity_array(cols)
    r = 0
    for k in range(min(rows, cols)):
        pivot = _find_pivot(ring, a, k)
        if pivot is None:
            break
        i, j = pivot
        a[[k, i], :] = a[[i, k], :]
        a[:, [k, j]] = a[:, [j, k]]
        v[:, [k, j]] = v[:, [j, k]]
        head = a[k, k]
        for row in range(k + 1, rows):
            if a[row, k] != 0:
                c = ring.quotient(a[row, k], head)
                a[row, k:] = ring.reduce(a[row, k:] - c * a[k, k:])
        for col in range(k + 1, cols):
            if a[k, col] != 0:
                c = ring.quotient(a[k, col], head)
                a[:, col] = ring.reduce(a[:, col] - c * a[:, k])
                v[:, col] = ring.reduce(v[:, col] - c * v[:, k])
        r += 1
    return r, v


def column_rank(ring: RingDescriptor, columns: np.ndarray) -> int:
    if columns.size == 0:
        return 0
    return eliminate(ring, columns)[0]


def rank(a: Matrix) -> int:
    r"""Rank over the fraction field (over Z_(p): rank over Q)."""
    return eliminate(a.ring, a.entries)[0]


def kernel_basis(a: Matrix) -> ColumnSpan:
    r"""Basis of ``ker(a)``; a basis of a direct summand over Z_(p)."""
    r, v = eliminate(a.ring, a.entries)
    return ColumnSpan(a.ring, a.n, tuple(v[:, j].copy() for j in range(r, a.n)))


def fix_basis(a: Matrix) -> ColumnSpan:
    r"""Basis of ``fix(a) = ker(1 - a)``."""
    return kernel_basis(Matrix.identity(a.ring, a.n) - a)


def left_kernel_basis(a: Matrix) -> ColumnSpan:
    r"""Row vectors ``x`` with ``x·a = 0``, returned as columns of ``ker(aᵀ)``."""
    return kernel_basis(a.T)


def is_pure(ring: RingDescriptor, n: int, vectors: Sequence[np.ndarray]) -> bool:
    r"""Whether ``vectors`` extend to a basis of the ambient free module.

    Over a field this is linear independence; over Z_(p) it is linear
    independence of the reductions mod ``p``.
    """
    if not vectors:
        return True
    if len(vectors) > n:
        return False
    columns = np.column_stack(vectors).astype(object)
    if ring.is_field:
        return column_rank(ring, columns) == len(vectors)
    residue = ring.residue_field
    reduced = np.vectorize(ring.residue, otypes=[object])(columns)
    return column_rank(residue, reduced) == len(vectors)


def image_basis(a: Matrix) -> ColumnSpan:
    r"""A maximal independent subset of the columns of ``a``.

    Over Z_(p) the column span is not saturated; :attr:`ColumnSpan.pure`
    records whether the chosen columns happen to span a direct summand.
    """
    chosen: list[np.ndarray] = []
    for j in range(a.n):
        column = a.entries[:, j].copy()
        if column_rank(a.ring, np.column_stack(chosen + [column]).astype(object)) > len(chosen):
            chosen.append(column)
    return ColumnSpan(a.ring, a.n, tuple(chosen), is_pure(a.ring, a.n, chosen))


def _pivot_columns(ring: RingDescriptor, rows: np.ndarray) -> list[int]:
    # row echelon over a field, pivots taken leftmost first
    a = np.array(rows, dtype=object)
    height, width = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == height:
            break
        found = next((i for i in range(r, height) if a[i, c] != 0), None)
        if found is None:
            continue
        a[[r, found], :] = a[[found, r], :]
        for i in range(r + 1, height):
            if a[i, c] != 0:
                factor = ring.div(a[i, c], a[r, c])
                a[i, :] = ring.reduce(a[i, :] - factor * a[r, :])
        pivots.append(c)
        r += 1
    return pivots


def complement(span: ColumnSpan) -> ColumnSpan:
    r"""Standard basis vectors completing ``span`` to a basis.

    The generators are reduced to row echelon form (mod ``p`` over Z_(p))
    and the standard vectors at the non-pivot columns are returned in
    ascending index order.

    Raises:
        ImpureSpan: ``span`` does not extend to a basis.
    """
    ring, n = span.ring, span.n
    if not is_pure(ring, n, span.generators):
        raise ImpureSpan(f'span of {span.k} vectors is not a direct summand of {ring}^{n}')
    if span.k == 0:
        pivots: list[int] = []
    else:
        rows = span.matrix().T
        if not ring.is_field:
            rows = np.vectorize(ring.residue, otypes=[object])(rows)
        pivots = _pivot_columns(ring.residue_field, rows)
    identity = ring.identity_array(n)
    return ColumnSpan(ring, n, tuple(identity[:, c].copy() for c in range(n) if c not in pivots))


def inverse(a: Matrix) -> Matrix:
    r"""Gauss–Jordan inverse with unit pivots.

    Raises:
        NotInvertible: the determinant is not a unit of the ring.
    """
    ring, n = a.ring, a.n
    work = np.array(a.entries, dtype=object)
    inv = ring.identity_array(n)
    for c in range(n):
        found = next((i for i in range(c, n) if ring.is_unit(work[i, c])), None)
        if found is None:
            raise NotInvertible(f'matrix is not invertible over {ring}')
        work[[c, found], :] = work[[found, c], :]
        inv[[c, found], :] = inv[[found, c], :]
        head = ring.inverse(work[c, c])
        work[c, :] = ring.reduce(work[c, :] * head)
        inv[c, :] = ring.reduce(inv[c, :] * head)
        for i in range(n):
            if i != c and work[i, c] != 0:
                factor = work[i, c]
                work[i, :] = ring.reduce(work[i, :] - factor * work[c, :])
                inv[i, :] = ring.reduce(inv[i, :] - factor * inv[c, :])
    return Matrix.from_array(ring, inv)


def projection(basis: SplitBasis, segment: str | Iterable[str]) -> Matrix:
    r"""Projection onto the chosen segment(s) along all the others.

    Args:
        basis (SplitBasis): the basis.
        segment (str | ~collections.abc.Iterable[str]): one label, several
            labels, or ``'all'`` for the identity.
    """
    if isinstance(segment, str):
        labels = basis.labels if segment == 'all' else [segment]
    else:
        labels = list(segment)
    mask = basis.ring.zeros((basis.n, basis.n))
    for label in labels:
        for i in basis.indices(label):
            mask[i, i] = basis.ring.one
    return basis.P @ Matrix.from_array(basis.ring, mask) @ basis.P_inv
