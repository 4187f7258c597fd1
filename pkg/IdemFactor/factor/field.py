"""Factorization of singular matrices over a field into at most
``n - dim fix(A)`` idempotents of rank ``n - 1``.

Every step writes the current matrix as ``A = B·C`` with ``C`` a rank
``n - 1`` idempotent, emits ``C`` on the right and continues with ``B``,
whose fixed space is strictly larger than that of ``A``.
"""

import logging
from typing import Sequence

import numpy as np

from .certificate import IdempotentFactorization, certify
from .splitting import split_along, split_off_kernel_line
from ..algebra.idempotents import idempotent_certificate, kernel_projection
from ..algebra.linalg import (ColumnSpan, SplitBasis, column_rank, fix_basis,
                              image_basis, kernel_basis, rank)
from ..algebra.matrix import Matrix, block_diagonal
from ..utils.errors import (AllInvertible, ConstructionFailure,
                            NotAField, NotSingular, PreconditionViolated)

__all__ = ['split_decomposable_kernel', 'split_unstable_kernel', 'split_stable_rank1',
           'factor_singular_field', 'factor_block_diagonal']

logger = logging.getLogger(__name__)


def split_decomposable_kernel(a: Matrix) -> tuple[Matrix, Matrix]:
    r"""``A = B·C`` along a line of a kernel of dimension at least 2.

    Raises:
        KernelTooSmall: ``dim ker(A) < 2``.
    """
    return split_off_kernel_line(a)


def split_unstable_kernel(a: Matrix) -> tuple[Matrix, Matrix]:
    r"""``A = B·C`` for a one-dimensional kernel with ``ker(A) ≠ ker(A²)``.

    The split idempotent is the projection onto ``ker(A)`` along its
    standard complement, so ``ker(C) = ker(A)``; ``B`` stays singular
    because ``ker(A²)`` is larger than ``ker(A)``.

    Raises:
        PreconditionViolated: the kernel is not one-dimensional or
            ``ker(A) = ker(A²)``.
    """
    k = kernel_basis(a).k
    if k != 1:
        raise PreconditionViolated(f'expected a one-dimensional kernel, got {k}')
    if kernel_basis(a @ a).k == k:
        raise PreconditionViolated('ker(A) = ker(A²): use split_stable_rank1')
    return split_along(a, kernel_projection(a))


def _stable_basis(a: Matrix) -> SplitBasis:
    kernel = kernel_basis(a)
    fix = fix_basis(a)
    # im(A) = FIX ⊕ REST, the REST vectors drawn from the column basis
    rest: list[np.ndarray] = []
    chosen = list(fix.generators)
    for w in image_basis(a):
        if len(chosen) == a.n - 1:
            break
        lead = next(x for x in w if x != 0)
        w = a.ring.reduce(w * a.ring.inverse(lead))
        if column_rank(a.ring, np.column_stack(chosen + [w]).astype(object)) > len(chosen):
            chosen.append(w)
            rest.append(w)
    return SplitBasis.from_segments([
        ('KER', kernel),
        ('FIX', fix),
        ('REST', ColumnSpan(a.ring, a.n, tuple(rest))),
    ])


def split_stable_rank1(a: Matrix) -> tuple[Matrix, Matrix]:
    r"""``A = B·C`` when ``ker(A) = ker(A²)`` is a line and ``A² ≠ A``.

    With the basis ``k | FIX | r_1, r_2, …`` of ``ker ⊕ im`` and its dual
    basis, put ``e_1 = k k*``, ``e_3 = r_1 r_1*``, ``e_2 = 1 - e_1 - e_3``,
    ``y = r_1 k*`` and ``z = k r_1*`` (so ``yz = e_3``). Then::

        B = e_3 + A e_2 + (A - 1) y,    C = 1 - e_1 + z

    ``C`` is idempotent with ``ker(C) = ker(A)``, and ``B`` fixes
    ``fix(A) ⊕ r_1``.

    Raises:
        PreconditionViolated: the preconditions above fail.
        ConstructionFailure: ``yz ≠ e_3``.
    """
    kernel = kernel_basis(a)
    if kernel.k != 1:
        raise PreconditionViolated(f'expected a one-dimensional kernel, got {kernel.k}')
    if kernel_basis(a @ a).k != 1:
        raise PreconditionViolated('ker(A) ≠ ker(A²): use split_unstable_kernel')
    if a @ a == a:
        raise PreconditionViolated('A is idempotent')
    basis = _stable_basis(a)
    ring, n = a.ring, a.n
    k_vec, k_dual = basis.vectors[0], basis.dual(0)
    r_index = basis.indices('REST')[0]
    r_vec, r_dual = basis.vectors[r_index], basis.dual(r_index)
    one = Matrix.identity(ring, n)
    e1 = Matrix.outer(ring, k_vec, k_dual)
    e3 = Matrix.outer(ring, r_vec, r_dual)
    e2 = one - e1 - e3
    y = Matrix.outer(ring, r_vec, k_dual)
    z = Matrix.outer(ring, k_vec, r_dual)
    if y @ z != e3:
        raise ConstructionFailure('yz differs from e_3')
    b = e3 + a @ e2 + (a - one) @ y
    c = one - e1 + z
    return b, c


def _dispatch(a: Matrix) -> tuple[str, tuple[Matrix, Matrix]]:
    k = kernel_basis(a).k
    if k >= 2:
        return 'decomposable', split_decomposable_kernel(a)
    if kernel_basis(a @ a).k != k:
        return 'unstable', split_unstable_kernel(a)
    return 'stable', split_stable_rank1(a)


def factor_singular_field(a: Matrix) -> IdempotentFactorization:
    r"""Factor a singular matrix over Q or F_p into rank ``n - 1`` idempotents.

    The length is at most ``n - dim fix(A)``.

    Raises:
        NotAField: the ring is Z_(p).
        NotSingular: ``A`` is invertible.
    """
    if not a.ring.is_field:
        raise NotAField(f'{a.ring} is not a field')
    n = a.n
    if rank(a) == n:
        raise NotSingular('matrix is not singular')
    d = fix_basis(a).k
    bound = n - d
    if n == 1:
        return certify(a, [a], bound)
    right: list[Matrix] = []
    current = a
    while True:
        cert = idempotent_certificate(current)
        if cert.coprimitive:
            break
        step, (b, c) = _dispatch(current)
        grown = fix_basis(b).k
        logger.log(logging.DEBUG, f'{step} split: dim fix {cert.fix.k} -> {grown}')
        if grown <= cert.fix.k:
            raise ConstructionFailure(f'{step} split did not enlarge the fixed space')
        right.insert(0, c)
        current = b
    return certify(a, [current] + right, bound)


def factor_block_diagonal(blocks: Sequence[Matrix]) -> IdempotentFactorization:
    r"""Factor ``diag(B_1, …, B_k)`` blockwise.

    Singular blocks are factored on their own; shorter factor lists are
    padded with identity blocks, so the length is ``max`` over blocks and at
    most the largest block size.

    Raises:
        AllInvertible: no block is singular.
        PreconditionViolated: a block is invertible but not the identity.
    """
    if not blocks:
        raise PreconditionViolated('no blocks given')
    lists: list[list[Matrix]] = []
    for i, block in enumerate(blocks):
        if block.is_identity():
            lists.append([])
        elif rank(block) == block.n:
            raise PreconditionViolated(f'block {i} is invertible but not the identity')
        else:
            lists.append(list(factor_singular_field(block).factors))
    if not any(lists):
        raise AllInvertible('every block is the identity')
    length = max(len(factors) for factors in lists)
    padded = [factors + [Matrix.identity(block.ring, block.n)] * (length - len(factors))
              for factors, block in zip(lists, blocks)]
    assembled = [block_diagonal([factors[t] for factors in padded]) for t in range(length)]
    return certify(block_diagonal(blocks), assembled, max(block.n for block in blocks),
                   block_sizes=[block.n for block in blocks])
