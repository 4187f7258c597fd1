"""Brute-force ground truth on small monoids.

Nothing here calls the elimination, preorder or certificate code of the
package: ranks, idempotency, rfix sets and chain heights are recomputed
from scratch so the two sides can be cross-checked.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

from ..algebra.matrix import Matrix
from ..algebra.rings import RingDescriptor, RingKind
from ..monoid.preorder import FiniteMonoid
from ..utils.errors import CompositeModulus, InternalInconsistency, TooLarge

__all__ = ['MonoidSnapshot', 'VerificationReport', 'singular_monoid', 'snapshot_of',
           'transformation_monoid', 'min_lengths_over', 'min_idempotent_lengths',
           'brute_height', 'idempotent_depth', 'verify_factorization']

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class MonoidSnapshot:
    r"""A finite monoid with everything the oracle knows about it.

    Attributes:
        monoid (FiniteMonoid): the Cayley table.
        idempotent (numpy.ndarray): idempotent mask.
        min_lengths (numpy.ndarray): minimum number of non-identity
            idempotents multiplying to each element; ``-1`` outside ``E(H)``.
        heights (numpy.ndarray): chain heights from :func:`brute_height`.
        q (int | None): field size for matrix monoids.
        n (int | None): matrix size for matrix monoids.
        matrices (numpy.ndarray | None): ``(m, n, n)`` integer entries.
        ranks (numpy.ndarray | None): matrix ranks.
    """
    monoid: FiniteMonoid
    idempotent: np.ndarray
    min_lengths: np.ndarray = field(init=False)
    heights: np.ndarray = field(init=False)
    q: int | None = None
    n: int | None = None
    matrices: np.ndarray | None = None
    ranks: np.ndarray | None = None
    _codes: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.min_lengths = min_lengths_over(self.monoid, self.idempotent)
        self.heights = np.array([brute_height(self, x) for x in range(self.size)], dtype=np.int64)

    @property
    def size(self) -> int:
        return self.monoid.size

    @property
    def generated(self) -> np.ndarray:
        r"""Membership in ``E(H)``, the submonoid generated by the idempotents."""
        return self.min_lengths >= 0

    def _code(self, entries) -> int:
        code = 0
        for x in np.asarray(entries).ravel():
            code = code * self.q + int(x) % self.q
        return code

    def index_of(self, matrix: Matrix | np.ndarray) -> int:
        entries = matrix.entries if isinstance(matrix, Matrix) else matrix
        return self._codes[self._code(entries)]

    def matrix(self, i: int) -> Matrix:
        return Matrix(RingDescriptor.prime_field(self.q), self.matrices[i].tolist())

    def fix_dimension(self, i: int) -> int:
        r"""``n - rank(1 - M_i)`` computed mod ``q``."""
        one = np.eye(self.n, dtype=np.int64)
        return self.n - _rank_mod((one - self.matrices[i]) % self.q, self.q)


def _rank_mod(a: np.ndarray, q: int) -> int:
    rows = [[int(x) % q for x in row] for row in a]
    r = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _matrix_label(m: np.ndarray) -> str:
    return '[' + ','.join('[' + ','.join(str(int(x)) for x in row) + ']' for row in m) + ']'


def singular_monoid(q: int, n: int, max_elements: int = 1_000_000, **monoid_kwargs) -> MonoidSnapshot:
    r"""The singular monoid of ``M_n(F_q)`` with the identity adjoined.

    Index 0 is the identity; the singular matrices follow in lexicographic
    order of their entries.

    Raises:
        CompositeModulus: ``q`` is not prime.
        TooLarge: ``q^(n²)`` exceeds ``max_elements``.
    """
    if not isprime(q):
        raise CompositeModulus(f'q={q} is not prime')
    if n < 1 or q ** (n * n) > max_elements:
        raise TooLarge(f'M_{n}(F_{q}) has {q}^{n * n} elements, limit is {max_elements}')
    everything = np.array(list(itertools.product(range(q), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
    singular = [m for m in everything if _rank_mod(m, q) < n]
    matrices = np.stack([np.eye(n, dtype=np.int64)] + singular)
    weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    lookup = np.full(q ** (n * n), -1, dtype=np.int64)
    codes = matrices.reshape(len(matrices), -1) @ weights
    lookup[codes] = np.arange(len(matrices))
    table = np.empty((len(matrices), len(matrices)), dtype=np.int64)
    for i, left in enumerate(matrices):
        products = np.einsum('ij,kjl->kil', left, matrices) % q
        table[i] = lookup[products.reshape(len(matrices), -1) @ weights]
    if (table < 0).any():
        raise InternalInconsistency(f'singular matrices of M_{n}(F_{q}) are not closed under products')
    monoid = FiniteMonoid(table, 0, [_matrix_label(m) for m in matrices], **monoid_kwargs)
    idempotent = np.array([np.array_equal(m @ m % q, m) for m in matrices])
    ranks = np.array([_rank_mod(m, q) for m in matrices], dtype=np.int64)
    logger.log(logging.INFO, f'enumerated M_{n}(F_{q})^#: {len(matrices)} elements, {idempotent.sum()} idempotents')
    return MonoidSnapshot(monoid, idempotent, q=q, n=n, matrices=matrices, ranks=ranks,
                          _codes={int(c): i for i, c in enumerate(codes)})


def snapshot_of(monoid: FiniteMonoid) -> MonoidSnapshot:
    r"""Snapshot of an abstract monoid, idempotents read off the table."""
    idempotent = np.array([monoid.table[x, x] == x for x in range(monoid.size)])
    return MonoidSnapshot(monoid, idempotent)


def transformation_monoid(n: int) -> FiniteMonoid:
    r"""Non-bijective self-maps of ``{0, …, n-1}`` plus the identity.

    ``(f·g)(i) = f(g(i))``; maps are labelled by their image tuples.
    """
    maps = [tuple(range(n))] + [f for f in itertools.product(range(n), repeat=n) if len(set(f)) < n]
    index = {f: i for i, f in enumerate(maps)}
    table = [[index[tuple(f[g[i]] for i in range(n))] for g in maps] for f in maps]
    return FiniteMonoid(table, 0, [str(f) for f in maps])


def min_lengths_over(monoid: FiniteMonoid, generators: np.ndarray) -> np.ndarray:
    r"""Breadth-first closure under right multiplication by ``generators``.

    The identity has length 0; ``-1`` marks elements outside the generated
    submonoid.
    """
    gens = [g for g in np.flatnonzero(generators) if g != monoid.identity]
    dist = np.full(monoid.size, -1, dtype=np.int64)
    dist[monoid.identity] = 0
    frontier = np.array(gens, dtype=np.int64)
    dist[frontier] = 1
    level = 1
    while frontier.size and gens:
        level += 1
        reached = np.unique(monoid.table[np.ix_(frontier, gens)].ravel())
        frontier = reached[dist[reached] < 0]
        dist[frontier] = level
    return dist


def min_idempotent_lengths(snapshot: MonoidSnapshot) -> np.ndarray:
    return snapshot.min_lengths


def _strictly_lower(monoid: FiniteMonoid) -> list[list[int]]:
    t = monoid.table
    rfix = [frozenset(x for x in range(monoid.size) if t[a, x] == x) for a in range(monoid.size)]
    everything = frozenset(range(monoid.size))
    nonunits = [a for a in range(monoid.size) if rfix[a] != everything]
    return [[b for b in nonunits if rfix[a] < rfix[b]] if rfix[a] != everything else []
            for a in range(monoid.size)]


def _longest(x: int, lower: list[list[int]]) -> int:
    return 1 + max((_longest(y, lower) for y in lower[x]), default=0)


def brute_height(snapshot: MonoidSnapshot, x: int) -> int:
    r"""Longest strictly decreasing chain of non-units starting at ``x``.

    Plain recursion over every chain; 0 for a unit.
    """
    lower = snapshot.__dict__.get('_lower')
    if lower is None:
        lower = _strictly_lower(snapshot.monoid)
        snapshot.__dict__['_lower'] = lower
    t = snapshot.monoid.table
    if all(t[x, y] == y for y in range(snapshot.size)):
        return 0
    return _longest(x, lower)


def idempotent_depth(snapshot: MonoidSnapshot) -> tuple[int, bool]:
    r"""``(depth, generated)``: the largest minimum length over ``E(H)``, and
    whether ``E(H)`` is the whole monoid."""
    finite = snapshot.min_lengths[snapshot.min_lengths >= 0]
    return int(finite.max()), bool((snapshot.min_lengths >= 0).all())


@dataclass
class VerificationReport:
    r"""Independent re-check of a factorization.

    Attributes:
        product (bool): exact product equals the target.
        idempotent (list[bool]): per factor.
        ranks (list[int]): per factor.
        length (int): number of factors.
        bound (int | None): declared bound.
        failures (list[str]): one message per failed check.
    """
    product: bool
    idempotent: list[bool]
    ranks: list[int]
    length: int
    bound: int | None
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {'ok': self.ok, 'product': self.product, 'idempotent': self.idempotent,
                'ranks': self.ranks, 'length': self.length, 'bound': self.bound,
                'failures': self.failures}


def _plain(matrix: Matrix) -> list[list]:
    return [[Fraction(x) if matrix.ring.kind != RingKind.FP else int(x) for x in row]
            for row in matrix.entries]


def _times(a: list[list], b: list[list], p: int | None) -> list[list]:
    n = len(a)
    out = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    if p is not None:
        out = [[x % p for x in row] for row in out]
    return out


def _exact_rank(a: list[list], p: int | None) -> int:
    if p is not None:
        return _rank_mod(np.array(a, dtype=object), p)
    rows = [list(row) for row in a]
    r = 0
    for c in range(len(rows[0])):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def verify_factorization(target: Matrix, factors: Sequence[Matrix], expected_rank: int | None,
                         bound: int | None = None) -> VerificationReport:
    r"""Re-multiply and re-check a factorization in plain Python arithmetic.

    Args:
        target (Matrix): the factored matrix.
        factors (~collections.abc.Sequence[Matrix]): claimed factors, left to right.
        expected_rank (int | None): required rank of every factor; ``None``
            skips the rank check.
        bound (int | None): declared length bound, checked when given.
    """
    failures: list[str] = []
    p = target.ring.p if target.ring.kind == RingKind.FP else None
    n = target.n
    for i, factor in enumerate(factors):
        if factor.ring != target.ring or factor.n != n:
            failures.append(f'factor {i} does not match the target ring or dimension')
    if failures:
        return VerificationReport(False, [], [], len(factors), bound, failures)
    plain = [_plain(f) for f in factors]
    product = [[Fraction(int(i == j)) if p is None else int(i == j) for j in range(n)] for i in range(n)]
    for f in plain:
        product = _times(product, f, p)
    product_ok = product == _plain(target)
    if not product_ok:
        failures.append('product mismatch')
    idempotent = [_times(f, f, p) == f for f in plain]
    ranks = [_exact_rank(f, p) for f in plain]
    for i, (ok, r) in enumerate(zip(idempotent, ranks)):
        if not ok:
            failures.append(f'factor {i} is not idempotent')
        if expected_rank is not None and r != expected_rank:
            failures.append(f'factor {i} has rank {r}, expected {expected_rank}')
    if not factors:
        failures.append('empty factor list')
    if bound is not None and len(factors) > bound:
        failures.append(f'bound exceeded: {len(factors)} > {bound}')
    return VerificationReport(product_ok, idempotent, ranks, len(factors), bound, failures)
