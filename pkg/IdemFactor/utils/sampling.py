from fractions import Fraction

import numpy as np

from ..algebra.matrix import Matrix
from ..algebra.rings import RingDescriptor, RingKind

__all__ = ['random_entry', 'random_rectangular', 'random_matrix', 'random_singular']

_UNITS = tuple(Fraction(a, b) for a in (1, -1, 2, -2, 3, -3, 5) for b in (1, 2, 3))


def _local_unit(u: Fraction, p: int) -> bool:
    return u.numerator % p != 0 and u.denominator % p != 0


def random_entry(ring: RingDescriptor, rng: np.random.Generator,
                 max_valuation: int = 2, density: float = 0.7):
    r"""Zero with probability ``1 - density``, otherwise ``u·p^s``.

    Over F_p the nonzero entries are uniform residues.
    """
    if rng.random() >= density:
        return ring.zero
    if ring.kind == RingKind.FP:
        return int(rng.integers(1, ring.p))
    units = [u for u in _UNITS if ring.kind == RingKind.Q or _local_unit(u, ring.p)]
    u = units[int(rng.integers(len(units)))]
    s = int(rng.integers(0, max_valuation + 1))
    return ring.element(u * (ring.p or 2) ** s)


def random_rectangular(ring: RingDescriptor, rows: int, cols: int, rng: np.random.Generator,
                       max_valuation: int = 2, density: float = 0.7) -> np.ndarray:
    out = ring.zeros((rows, cols))
    for index in np.ndindex(rows, cols):
        out[index] = random_entry(ring, rng, max_valuation, density)
    return out


def random_matrix(ring: RingDescriptor, n: int, rng: np.random.Generator,
                  max_valuation: int = 2, density: float = 0.7) -> Matrix:
    return Matrix.from_array(ring, random_rectangular(ring, n, n, rng, max_valuation, density))


def random_singular(ring: RingDescriptor, n: int, rng: np.random.Generator,
                    max_valuation: int = 2, density: float = 0.7) -> Matrix:
    r"""A random singular ``n×n`` matrix.

    Built as ``X·Y`` with ``X`` of shape ``n×r`` and ``Y`` of shape ``r×n``;
    ``r = n - 1`` three times out of four, otherwise uniform in ``[0, n)``.
    """
    r = n - 1 if rng.random() < 0.75 else int(rng.integers(0, n))
    x = random_rectangular(ring, n, r, rng, max_valuation, density)
    y = random_rectangular(ring, r, n, rng, max_valuation, density)
    product = x @ y if r else ring.zeros((n, n))
    return Matrix.from_array(ring, product)
