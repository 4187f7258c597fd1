"""The one-sided split ``a = b·c`` shared by both factorizers.

For an idempotent ``e`` with ``a·e = 0``::

    b = e + (1 - e)·a,    c = 1 - e + e·a

gives ``a = b·c``, ``c² = c`` and ``ker(c) = im(e)``; both ``fix(b)`` and
``fix(c)`` contain ``fix(a)``, and ``fix(b)`` also contains ``im(e)``.
"""

from ..algebra.idempotents import kernel_projection
from ..algebra.linalg import kernel_basis
from ..algebra.matrix import Matrix
from ..utils.errors import InternalInconsistency, KernelTooSmall

__all__ = ['split_along', 'split_off_kernel_line']


def split_along(a: Matrix, e: Matrix) -> tuple[Matrix, Matrix]:
    one = Matrix.identity(a.ring, a.n)
    if not (a @ e).is_zero():
        raise InternalInconsistency('split idempotent does not lie in the kernel')
    b = e + (one - e) @ a
    c = one - e + e @ a
    return b, c


def split_off_kernel_line(a: Matrix) -> tuple[Matrix, Matrix]:
    r"""Split along the projection onto the first kernel basis vector.

    Raises:
        KernelTooSmall: ``ker(a)`` has rank below 2.
    """
    k = kernel_basis(a).k
    if k < 2:
        raise KernelTooSmall(f'kernel has rank {k}, need at least 2')
    return split_along(a, kernel_projection(a, 1))
