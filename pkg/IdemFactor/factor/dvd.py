"""Factorization of singular matrices over Z_(p) into at most ``2n - 2``
idempotents of rank ``n - 1``.

The orchestration keeps a left list, a current matrix and a right list
with ``A = left · current · right`` throughout:

* a kernel of rank at least 2 is split off on the right;
* a fix-free current matrix loses one idempotent on the left;
* otherwise one or two idempotents are split off around it.

Each step strictly enlarges the fixed space of the current matrix, which
ends as a coprimitive idempotent.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .certificate import IdempotentFactorization, certify
from .splitting import split_off_kernel_line
from ..algebra.idempotents import (DependenceWitness, idempotent_certificate,
                                   min_valuation_dependence)
from ..algebra.linalg import SplitBasis, complement, fix_basis, kernel_basis, rank
from ..algebra.matrix import Matrix
from ..algebra.rings import RingDescriptor, RingKind
from ..utils.errors import (ConstructionFailure, InternalInconsistency,
                            NotSingular, PreconditionViolated, WrongRing)

__all__ = ['AdaptedBasis', 'reduce_kernel_rank', 'adapted_basis',
           'dge1_split_fixfree', 'dge1_split_general', 'factor_singular_dvd',
           'dvd_bound', 'reduce_mod_p']

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AdaptedBasis:
    r"""Basis ``FIX | Q | KER`` of ``M = fix ⊕ Q ⊕ ker``.

    Attributes:
        basis (SplitBasis): the basis with segments ``FIX``, ``Q``, ``KER``.
        d (int): rank of ``fix``.
        coefficients (Matrix): ``P⁻¹AP``; column ``j`` holds the
            coordinates ``a_{i,j}`` of ``A e_j``.
        v (tuple[numpy.ndarray, ...]): for ``i = d, …, n - 1`` the row
            ``(a_{i,j})_{d ≤ j < n-1}``.
        witness (DependenceWitness): dependence among the ``v``; its
            :attr:`~DependenceWitness.ell` and keys are basis indices.
    """
    basis: SplitBasis
    d: int
    coefficients: Matrix
    v: tuple[np.ndarray, ...]
    witness: DependenceWitness

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def ell(self) -> int:
        return self.witness.ell

    def b(self, i: int):
        return self.witness.coefficient(i)

    def a(self, i: int, j: int):
        return self.coefficients.entries[i, j]


def _require_local(a: Matrix):
    if a.ring.kind != RingKind.ZP:
        raise WrongRing(f'expected Z_(p), got {a.ring}')


def reduce_kernel_rank(a: Matrix) -> tuple[Matrix, Matrix]:
    r"""``A = G·H`` with ``H`` an idempotent whose kernel is the first kernel line.

    Raises:
        KernelTooSmall: ``rk ker(A) < 2``.
    """
    _require_local(a)
    return split_off_kernel_line(a)


def adapted_basis(a: Matrix) -> AdaptedBasis:
    r"""Adapt a basis to ``fix(A) ⊕ Q ⊕ ker(A)`` and find the dependence.

    Raises:
        PreconditionViolated: ``rk ker(A) ≠ 1``.
        InternalInconsistency: the witness fails the coefficient identity
            ``a_{ell,j} = Σ_{i≠ell} a_{i,j} b_i`` on the ``Q`` columns.
    """
    _require_local(a)
    ring, n = a.ring, a.n
    kernel = kernel_basis(a)
    if kernel.k != 1:
        raise PreconditionViolated(f'expected a kernel of rank 1, got {kernel.k}')
    fix = fix_basis(a)
    d = fix.k
    basis = SplitBasis.from_segments([('FIX', fix), ('Q', complement(fix + kernel)), ('KER', kernel)])
    coefficients = basis.coordinates(a)
    q_columns = list(basis.indices('Q'))
    v = tuple(np.array([coefficients.entries[i, j] for j in q_columns], dtype=object)
              for i in range(d, n))
    local = min_valuation_dependence(ring, v)
    witness = DependenceWitness(local.ell + d, {i + d: b for i, b in local.coefficients.items()})
    for j in q_columns:
        total = ring.zero
        for i, b in witness.coefficients.items():
            total = ring.add(total, ring.mul(coefficients.entries[i, j], b))
        if total != coefficients.entries[witness.ell, j]:
            raise InternalInconsistency(f'dependence fails on column {j}')
    return AdaptedBasis(basis, d, coefficients, v, witness)


def _unit(ring: RingDescriptor, n: int, i: int) -> np.ndarray:
    out = ring.zeros(n)
    out[i] = ring.one
    return out


def _eta(adapted: AdaptedBasis) -> Matrix:
    # e_i -> e_i + e_{n-1} b_i on the Q indices
    ring, n, d = adapted.coefficients.ring, adapted.n, adapted.d
    eta = ring.identity_array(n)
    for i in range(d, n - 1):
        eta[n - 1, i] = adapted.b(i)
    return Matrix.from_array(ring, eta)


def _split_last(adapted: AdaptedBasis) -> tuple[Matrix, Matrix]:
    # ell = n - 1: conjugate so the image avoids e_{n-1}, split, conjugate back
    ring, n, d = adapted.coefficients.ring, adapted.n, adapted.d
    eta = _eta(adapted)
    eta_inv = Matrix.from_array(ring, _invert_unitriangular(eta))
    alpha = eta_inv @ adapted.coefficients @ eta
    if any(x != 0 for x in alpha.entries[n - 1]):
        raise ConstructionFailure('conjugated map still reaches the kernel direction')
    beta = ring.identity_array(n)
    beta[:, n - 1] = alpha.entries[:, d] - _unit(ring, n, d)
    gamma = np.array(alpha.entries, dtype=object)
    gamma[:, d] = _unit(ring, n, d) + _unit(ring, n, n - 1)
    beta = eta @ Matrix.from_array(ring, beta) @ eta_inv
    gamma = eta @ Matrix.from_array(ring, gamma) @ eta_inv
    return beta, gamma


def _invert_unitriangular(eta: Matrix) -> np.ndarray:
    # eta = 1 + N with N² = 0
    return eta.ring.reduce(2 * eta.ring.identity_array(eta.n) - eta.entries)


def dge1_split_fixfree(a: Matrix, adapted: AdaptedBasis) -> tuple[Matrix, Matrix]:
    r"""``A = β·γ`` for a fix-free ``A`` with kernel of rank 1.

    ``β`` is a coprimitive idempotent and ``fix(γ) ≠ 0``.

    Raises:
        PreconditionViolated: ``d ≠ 0``.
    """
    _require_local(a)
    if adapted.d != 0:
        raise PreconditionViolated(f'expected a fix-free map, rk fix = {adapted.d}')
    ring, n, ell = a.ring, adapted.n, adapted.ell
    if ell == n - 1:
        beta, gamma = _split_last(adapted)
    else:
        others = [i for i in range(n) if i != ell]
        beta = ring.zeros((n, n))
        gamma = ring.zeros((n, n))
        for j in others:
            beta[:, j] = _unit(ring, n, j)
            beta[ell, j] = adapted.b(j)
        gamma[ell, ell] = ring.one
        for i in others:
            gamma[i, ell] = adapted.a(i, ell)
        for j in others[:-1]:
            for i in others:
                gamma[i, j] = adapted.a(i, j)
        beta = Matrix.from_array(ring, beta)
        gamma = Matrix.from_array(ring, gamma)
    return (adapted.basis.from_coordinates(beta),
            adapted.basis.from_coordinates(gamma))


def dge1_split_general(a: Matrix, adapted: AdaptedBasis) -> tuple[Matrix, ...]:
    r"""Split ``A`` with ``1 ≤ rk fix(A) < n - 1`` and kernel of rank 1.

    Returns ``(β, γ, δ)`` when ``ell < n - 1`` and ``(β, γ)`` otherwise; ``β``
    and ``δ`` are coprimitive idempotents and ``fix(γ) ⊋ fix(A)``.

    Raises:
        PreconditionViolated: ``d`` is out of range.
    """
    _require_local(a)
    ring, n, d, ell = a.ring, adapted.n, adapted.d, adapted.ell
    if not 1 <= d < n - 1:
        raise PreconditionViolated(f'expected 1 <= rk fix < {n - 1}, got {d}')
    if ell == n - 1:
        beta, gamma = _split_last(adapted)
        return (adapted.basis.from_coordinates(beta),
                adapted.basis.from_coordinates(gamma))
    beta = ring.identity_array(n)
    beta[:, ell] = ring.zeros(n)
    for j in range(d, n):
        if j != ell:
            beta[ell, j] = adapted.b(j)
    gamma = ring.identity_array(n)
    for j in range(d, n - 1):
        gamma[:, j] = adapted.coefficients.entries[:, j]
        gamma[ell, j] = ring.zero
    delta = ring.identity_array(n)
    delta[n - 1, n - 1] = ring.zero
    return tuple(adapted.basis.from_coordinates(Matrix.from_array(ring, x))
                 for x in (beta, gamma, delta))


def dvd_bound(n: int, d: int) -> int:
    if n == 1:
        return 1
    return 2 * n - 2 if d == 0 else 2 * (n - d) - 1


def factor_singular_dvd(a: Matrix) -> IdempotentFactorization:
    r"""Factor a singular matrix over Z_(p) into coprimitive idempotents.

    The length is at most ``2n - 2``, and at most ``2(n - d) - 1`` when
    ``d = rk fix(A) ≥ 1``.

    Raises:
        WrongRing: the ring is not Z_(p).
        NotSingular: ``A`` is invertible.
    """
    _require_local(a)
    n = a.n
    if rank(a) == n:
        raise NotSingular('matrix is not singular')
    d = fix_basis(a).k
    bound = dvd_bound(n, d)
    left: list[Matrix] = []
    right: list[Matrix] = []
    current = a
    while True:
        cert = idempotent_certificate(current)
        if cert.coprimitive:
            break
        if cert.kernel.k >= 2:
            step = 'kernel'
            current, h = reduce_kernel_rank(current)
            right.insert(0, h)
        else:
            adapted = adapted_basis(current)
            if adapted.d == n - 1:
                raise ConstructionFailure('rank n-1 fixed space on a non-idempotent map')
            if adapted.d == 0:
                step = 'fixfree'
                beta, current = dge1_split_fixfree(current, adapted)
                left.append(beta)
            else:
                parts = dge1_split_general(current, adapted)
                step = f'general/{len(parts)}'
                left.append(parts[0])
                current = parts[1]
                if len(parts) == 3:
                    right.insert(0, parts[2])
        grown = fix_basis(current).k
        logger.log(logging.DEBUG, f'{step} step: rk fix {cert.fix.k} -> {grown}')
        if grown <= cert.fix.k:
            raise ConstructionFailure(f'{step} step did not enlarge the fixed space')
    return certify(a, left + [current] + right, bound)


def reduce_mod_p(factorization: IdempotentFactorization) -> tuple[Matrix, tuple[Matrix, ...]] | None:
    r"""Images of the target and factors in ``M_n(F_p)``.

    Returns ``None`` when the reduced target is not singular with the same
    kernel rank as the target, in which case nothing is claimed mod ``p``.
    """
    ring = factorization.target.ring
    _require_local(factorization.target)
    field = ring.residue_field

    def reduce(m: Matrix) -> Matrix:
        return Matrix.from_array(field, np.vectorize(ring.residue, otypes=[object])(m.entries))

    target = reduce(factorization.target)
    if kernel_basis(target).k != kernel_basis(factorization.target).k:
        return None
    return target, tuple(reduce(f) for f in factorization.factors)
