"""Finite monoids given by Cayley tables and their rFix-preorder.

``rfix(a) = {x : a·x = x}`` and ``a ⪯ b`` iff ``rfix(b) ⊆ rfix(a)``.
Heights, quarks and degree-``s`` irreducibles are computed on the table;
the factorization recursions return lists of element indices.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
import numpy as np

from ..utils.errors import (HypothesisFailed, InternalInconsistency,
                            InvalidTable, UnitInput)

__all__ = ['FiniteMonoid', 'PreorderView', 'HeightTable']

logger = logging.getLogger(__name__)


class FiniteMonoid:
    r"""Monoid on ``{0, …, m-1}`` with ``table[a, b] = a·b``.

    Args:
        table: ``m×m`` array of element indices.
        identity (int): index of the identity.
        labels (~collections.abc.Sequence[str] | None): element names.
            Defaults to the indices.
        exhaustive_limit (int): largest ``m`` for which associativity is
            checked on every triple. Defaults to ``300``.
        samples (int): random triples checked above that size.
            Defaults to ``1_000_000``.
        seed (int): seed of the sampled check. Defaults to ``0``.

    Attributes:
        associativity_sampled (bool): associativity was only sampled.

    Raises:
        InvalidTable: the table is not square, has out-of-range entries,
            the identity laws fail, or a non-associative triple is found.
    """

    def __init__(self, table, identity: int, labels: Sequence[str] | None = None,
                 exhaustive_limit: int = 300, samples: int = 1_000_000, seed: int = 0):
        try:
            table = np.array(table, dtype=np.int64)
        except (TypeError, ValueError, OverflowError):
            raise InvalidTable('Cayley table must be a square array of integers') from None
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidTable(f'Cayley table must be a non-empty square array, got shape {table.shape}')
        m = table.shape[0]
        if table.min() < 0 or table.max() >= m:
            raise InvalidTable(f'Cayley table entries must lie in [0, {m})')
        if not isinstance(identity, (int, np.integer)) or not 0 <= identity < m:
            raise InvalidTable(f'identity index {identity!r} out of range')
        arange = np.arange(m)
        if not (np.array_equal(table[identity], arange) and np.array_equal(table[:, identity], arange)):
            raise InvalidTable(f'element {identity} does not act as the identity')
        if labels is None:
            labels = [str(i) for i in range(m)]
        if len(labels) != m:
            raise InvalidTable(f'{len(labels)} labels for {m} elements')
        table.setflags(write=False)
        self.table = table
        self.identity = int(identity)
        self.labels = [str(label) for label in labels]
        self.associativity_sampled = m > exhaustive_limit
        if self.associativity_sampled:
            logger.log(logging.WARNING, f'associativity of a monoid of size {m} checked on {samples} random triples only')
            self._check_sampled(samples, seed)
        else:
            self._check_exhaustive()

    def _check_exhaustive(self):
        t = self.table
        for a in range(self.size):
            # (a·b)·c against a·(b·c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                b, c = np.argwhere(t[t[a]] != t[a][t])[0]
                raise InvalidTable(f'not associative at ({a}, {b}, {c})')

    def _check_sampled(self, samples: int, seed: int):
        t = self.table
        rng = np.random.default_rng(seed)
        chunk = 100_000
        for start in range(0, samples, chunk):
            a, b, c = rng.integers(0, self.size, size=(3, min(chunk, samples - start)))
            bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
            if bad.size:
                i = bad[0]
                raise InvalidTable(f'not associative at ({a[i]}, {b[i]}, {c[i]})')

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def product(self, elements: Sequence[int]) -> int:
        result = self.identity
        for x in elements:
            result = int(self.table[result, x])
        return result

    def direct_product(self, other: 'FiniteMonoid') -> 'FiniteMonoid':
        r"""``H × K`` with componentwise multiplication; ``(h, k)`` has index ``h·|K| + k``."""
        m, k = self.size, other.size
        left = np.repeat(np.arange(m), k)
        right = np.tile(np.arange(k), m)
        table = self.table[np.ix_(left, left)] * k + other.table[np.ix_(right, right)]
        labels = [f'({self.labels[a]}, {other.labels[b]})' for a, b in zip(left, right)]
        return FiniteMonoid(table, self.identity * k + other.identity, labels)

    def to_json(self) -> dict:
        return {'size': self.size, 'identity': self.identity,
                'table': self.table.tolist(), 'labels': list(self.labels)}

    @classmethod
    def from_json(cls, payload: dict, **kwargs) -> 'FiniteMonoid':
        if not isinstance(payload, dict) or not {'size', 'identity', 'table'} <= payload.keys():
            raise InvalidTable('Cayley table JSON needs "size", "identity" and "table"')
        table = payload['table']
        if not isinstance(table, list) or len(table) != payload['size']:
            raise InvalidTable(f'table has {len(table) if isinstance(table, list) else "no"} rows, size says {payload["size"]}')
        return cls(table, payload['identity'], payload.get('labels'), **kwargs)


@dataclass(frozen=True, eq=False)
class HeightTable:
    r"""Per-element heights, quark flags and irreducible flags by degree."""
    heights: np.ndarray
    quarks: np.ndarray
    irreducible: dict[int, np.ndarray] = field(default_factory=dict)


class PreorderView:
    r"""The rFix-preorder of a :class:`FiniteMonoid`.

    Attributes:
        rfix (numpy.ndarray): ``rfix[a, x]`` iff ``a·x = x``.
        leq (numpy.ndarray): ``leq[a, b]`` iff ``a ⪯ b``.
        below (numpy.ndarray): ``below[a, b]`` iff ``a ≺ b``.
        units (numpy.ndarray): mask of ⪯-units.
        heights (numpy.ndarray): height of every element.
    """

    def __init__(self, monoid: FiniteMonoid):
        self.monoid = monoid
        t = monoid.table
        m = monoid.size
        self.rfix = t == np.arange(m)[None, :]
        rfix = self.rfix.astype(np.int64)
        # outside[b, a] = |rfix(b) \ rfix(a)|
        outside = rfix @ (1 - rfix).T
        self.leq = (outside == 0).T
        self.below = self.leq & ~self.leq.T
        one = monoid.identity
        self.units = self.leq[:, one] & self.leq[one, :]
        if np.flatnonzero(self.units).tolist() != [one]:
            raise InternalInconsistency('the identity is not the only rfix-unit')
        self.nonunits = ~self.units
        self.heights = self._heights()
        self._irreducible: dict[int, np.ndarray] = {}
        self._reach: dict[tuple[bytes, int], np.ndarray] = {}

    def _heights(self) -> np.ndarray:
        nodes = np.flatnonzero(self.nonunits)
        graph = nx.DiGraph()
        graph.add_nodes_from(nodes.tolist())
        # edge a -> b whenever b ⪯ a
        sub = self.leq[np.ix_(nodes, nodes)].T
        rows, cols = np.nonzero(sub)
        graph.add_edges_from((int(nodes[i]), int(nodes[j])) for i, j in zip(rows, cols) if i != j)
        dag = nx.condensation(graph)
        members = nx.get_node_attributes(dag, 'members')
        level: dict[int, int] = {}
        for c in reversed(list(nx.topological_sort(dag))):
            level[c] = 1 + max((level[s] for s in dag.successors(c)), default=0)
        heights = np.zeros(self.monoid.size, dtype=np.int64)
        for c, elements in members.items():
            heights[list(elements)] = level[c]
        return heights

    def rfix_set(self, a: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.rfix[a]).tolist())

    def preorder_units(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.units).tolist())

    def height(self, x: int) -> int:
        return int(self.heights[x])

    def quarks(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.heights == 1).tolist())

    def _products(self, allowed: np.ndarray, k: int) -> np.ndarray:
        r"""Mask of products of exactly ``k`` elements of ``allowed``."""
        key = (allowed.tobytes(), k)
        if key not in self._reach:
            if k == 1:
                reach = allowed.copy()
            else:
                previous = np.flatnonzero(self._products(allowed, k - 1))
                reach = np.zeros(self.monoid.size, dtype=bool)
                reach[self.monoid.table[np.ix_(previous, np.flatnonzero(allowed))].ravel()] = True
            self._reach[key] = reach
        return self._reach[key]

    def irreducible_mask(self, s: int) -> np.ndarray:
        if s < 2:
            raise ValueError(f'degree must be at least 2, got {s}')
        if s not in self._irreducible:
            mask = self.nonunits.copy()
            for a in np.flatnonzero(self.nonunits):
                allowed = self.below[:, a] & self.nonunits
                if any(self._products(allowed, k)[a] for k in range(2, s + 1)):
                    mask[a] = False
            self._irreducible[s] = mask
            self._reach.clear()
        return self._irreducible[s]

    def irreducibles_of_degree(self, s: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.irreducible_mask(s)).tolist())

    def height_table(self, s: int = 2) -> HeightTable:
        return HeightTable(self.heights.copy(), self.heights == 1,
                           {k: self.irreducible_mask(k) for k in range(2, s + 1)})

    def _find_product(self, target: int, k: int, allowed: np.ndarray,
                      budget: int | None) -> tuple[int, ...] | None:
        # first k-tuple of allowed elements, lexicographic, with product target
        if k == 1:
            ok = allowed[target] and (budget is None or self.heights[target] <= budget)
            return (target,) if ok else None
        reach = self._products(allowed, k - 1)
        for y in np.flatnonzero(allowed):
            if budget is not None and self.heights[y] > budget - (k - 1):
                continue
            for r in np.flatnonzero(reach & (self.monoid.table[y] == target)):
                rest = self._find_product(int(r), k - 1, allowed,
                                          None if budget is None else budget - int(self.heights[y]))
                if rest is not None:
                    return (int(y),) + rest
        return None

    def factor_into_irreducibles(self, x: int, s: int = 2) -> list[int]:
        r"""Factor ``x`` into at most ``s^(hgt(x)-1)`` degree-``s`` irreducibles.

        Raises:
            UnitInput: ``x`` is a unit.
        """
        if self.units[x]:
            raise UnitInput(f'element {x} is a unit')
        if self.irreducible_mask(s)[x]:
            return [x]
        allowed = self.below[:, x] & self.nonunits
        for k in range(2, s + 1):
            split = self._find_product(x, k, allowed, None)
            if split is not None:
                return [f for y in split for f in self.factor_into_irreducibles(y, s)]
        raise InternalInconsistency(f'reducible element {x} has no split')

    def factor_into_quarks(self, x: int, s: int = 2) -> list[int]:
        r"""Factor ``x`` into at most ``(s-1)·hgt(x) - (s-2)`` quarks.

        Every split ``x = y_1 ⋯ y_k`` (``2 ≤ k ≤ s``) uses non-units
        ``y_i ⪯ x`` with ``Σ hgt(y_i) ≤ hgt(x) + k - 2``.

        Raises:
            UnitInput: ``x`` is a unit.
            HypothesisFailed: some element on the way has no such split.
        """
        if self.units[x]:
            raise UnitInput(f'element {x} is a unit')
        if self.heights[x] == 1:
            return [x]
        allowed = self.leq[:, x] & self.nonunits
        for k in range(2, s + 1):
            split = self._find_product(x, k, allowed, int(self.heights[x]) + k - 2)
            if split is not None:
                return [f for y in split for f in self.factor_into_quarks(y, s)]
        raise HypothesisFailed(x, self.monoid.labels[x])
