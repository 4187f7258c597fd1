import logging
from dataclasses import dataclass
from typing import Sequence

from ..algebra.idempotents import idempotent_certificate
from ..algebra.matrix import Matrix
from ..utils.errors import ConstructionFailure

__all__ = ['FactorizationCertificate', 'IdempotentFactorization', 'certify']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationCertificate:
    r"""What the factorizer checked about its own output.

    Attributes:
        product (bool): the factors multiply (left to right) to the target.
        idempotent (tuple[bool, ...]): per factor, ``F² = F``.
        ranks (tuple[int, ...]): per factor rank.
        kernel_dims (tuple[int, ...]): per factor kernel rank.
        within_bound (bool): length does not exceed the declared bound.
        block_ranks (tuple[tuple[int, ...], ...] | None): per factor, the rank
            of each diagonal block (block-diagonal factorizations only).
    """
    product: bool
    idempotent: tuple[bool, ...]
    ranks: tuple[int, ...]
    kernel_dims: tuple[int, ...]
    within_bound: bool
    block_ranks: tuple[tuple[int, ...], ...] | None = None

    def to_json(self) -> dict:
        return {'product': self.product, 'idempotent': list(self.idempotent), 'ranks': list(self.ranks)}


@dataclass(frozen=True, eq=False)
class IdempotentFactorization:
    r"""``target = factors[0] · factors[1] ⋯ factors[-1]``.

    Attributes:
        target (Matrix): the factored matrix.
        factors (tuple[Matrix, ...]): idempotents, applied right to left.
        bound (int): declared upper bound on the length.
        certificate (FactorizationCertificate): self-check of the output.
        block_sizes (tuple[int, ...] | None): sizes of diagonal blocks, if any.
    """
    target: Matrix
    factors: tuple[Matrix, ...]
    bound: int
    certificate: FactorizationCertificate
    block_sizes: tuple[int, ...] | None = None

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def ok(self) -> bool:
        cert = self.certificate
        if not (cert.product and all(cert.idempotent) and cert.within_bound):
            return False
        if self.block_sizes is None:
            return all(k == 1 for k in cert.kernel_dims)
        return all(r in (size - 1, size)
                   for ranks in cert.block_ranks for r, size in zip(ranks, self.block_sizes))


def _blocks(matrix: Matrix, sizes: Sequence[int]) -> list[Matrix]:
    out, offset = [], 0
    for size in sizes:
        out.append(Matrix.from_array(matrix.ring, matrix.entries[offset:offset + size, offset:offset + size]))
        offset += size
    return out


def certify(target: Matrix, factors: Sequence[Matrix], bound: int,
            block_sizes: Sequence[int] | None = None) -> IdempotentFactorization:
    r"""Build the factorization record and check it.

    Raises:
        ConstructionFailure: some check fails; the factorizers never
            return an unverified result.
    """
    product = Matrix.identity(target.ring, target.n)
    for factor in factors:
        product = product @ factor
    certificates = [idempotent_certificate(factor) for factor in factors]
    block_ranks = None
    if block_sizes is not None:
        block_ranks = tuple(tuple(idempotent_certificate(block).rank for block in _blocks(factor, block_sizes))
                            for factor in factors)
    cert = FactorizationCertificate(
        product=product == target,
        idempotent=tuple(c.idempotent for c in certificates),
        ranks=tuple(c.rank for c in certificates),
        kernel_dims=tuple(c.kernel.k for c in certificates),
        within_bound=len(factors) <= bound,
        block_ranks=block_ranks,
    )
    result = IdempotentFactorization(target, tuple(factors), bound, cert,
                                     None if block_sizes is None else tuple(block_sizes))
    if not result.ok:
        raise ConstructionFailure(f'factorization of length {len(factors)} failed its certificate: {cert}')
    logger.log(logging.DEBUG, f'certified {len(factors)} factors (bound {bound}) over {target.ring}')
    return result
