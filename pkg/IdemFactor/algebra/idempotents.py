"""Idempotent toolkit: certificates, nesting, perturbation, conjugation and
the minimum-valuation dependence used to adapt bases over Z_(p)."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (ColumnSpan, SplitBasis, column_rank, complement, eliminate,
                     fix_basis, inverse, is_pure, kernel_basis, projection, rank)
from .matrix import Matrix
from .rings import RingDescriptor, RingKind, Scalar
from ..utils.errors import (BadPerturbation, Independent, Injective,
                            InternalInconsistency, NotIdempotent, NotNested,
                            PreconditionViolated)

__all__ = ['IdempotentCertificate', 'PeirceBasis', 'DependenceWitness',
           'is_idempotent', 'idempotent_certificate', 'idempotent_between',
           'orthogonal_sum_idempotent', 'kernel_idempotent_avoiding_fix',
           'kernel_projection', 'conjugate', 'min_valuation_dependence']


def is_idempotent(a: Matrix) -> bool:
    return a @ a == a


@dataclass(frozen=True, eq=False)
class IdempotentCertificate:
    r"""Outcome of the three equivalent idempotency tests.

    Attributes:
        squares (bool): ``A² = A``.
        splits (bool): ``ker(A) ⊕ fix(A)`` is the whole module.
        image_is_fix (bool): ``im(A) = fix(A)``.
        rank (int): rank of ``A``.
        kernel (ColumnSpan): basis of ``ker(A)``.
        fix (ColumnSpan): basis of ``fix(A)``.
    """
    squares: bool
    splits: bool
    image_is_fix: bool
    rank: int
    kernel: ColumnSpan
    fix: ColumnSpan

    @property
    def idempotent(self) -> bool:
        return self.squares

    @property
    def coprimitive(self) -> bool:
        r"""Idempotent with a kernel of rank one."""
        return self.squares and self.kernel.k == 1


def idempotent_certificate(a: Matrix) -> IdempotentCertificate:
    r"""Check ``A² = A``, ``ker ⊕ fix = M`` and ``im = fix`` together.

    Raises:
        InternalInconsistency: the three tests disagree.
    """
    squares = is_idempotent(a)
    kernel = kernel_basis(a)
    fix = fix_basis(a)
    r = rank(a)
    splits = kernel.k + fix.k == a.n and is_pure(a.ring, a.n, kernel.generators + fix.generators)
    # fix is saturated, so equal rational spans already force im ⊆ fix
    stacked = np.concatenate([a.entries, fix.matrix()], axis=1)
    image_is_fix = r == fix.k and column_rank(a.ring, stacked) == fix.k
    if not squares == splits == image_is_fix:
        raise InternalInconsistency(
            f'idempotency tests disagree: squares={squares}, splits={splits}, image_is_fix={image_is_fix}')
    return IdempotentCertificate(squares, splits, image_is_fix, r, kernel, fix)


def _require_idempotent(a: Matrix, name: str):
    if not is_idempotent(a):
        raise NotIdempotent(f'{name} is not idempotent')


def idempotent_between(e: Matrix, f: Matrix) -> tuple[Matrix, Matrix]:
    r"""Split ``fR = e₀R ⊕ f₀R`` for idempotents with ``eR ⊆ fR``.

    Returns ``e₀ = ef`` (same column space as ``e``, absorbed by ``f`` on both
    sides) and ``f₀ = f - e₀``.

    Raises:
        NotIdempotent: ``e`` or ``f`` is not idempotent.
        NotNested: the column space of ``e`` is not inside that of ``f``.
    """
    _require_idempotent(e, 'e')
    _require_idempotent(f, 'f')
    if f @ e != e:
        raise NotNested('column space of e is not contained in that of f')
    e0 = e @ f
    f0 = f - e0
    zero = Matrix.zeros(e.ring, e.n)
    if not (is_idempotent(e0) and is_idempotent(f0) and e0 @ f0 == zero and f0 @ e0 == zero
            and rank(e0) + rank(f0) == rank(f)):
        raise InternalInconsistency('e0, f0 do not split f')
    return e0, f0


def orthogonal_sum_idempotent(e: Matrix, z: Matrix) -> Matrix:
    r"""``e + z`` for a square-zero ``z`` with ``ez + ze = z``.

    Raises:
        NotIdempotent: ``e`` is not idempotent.
        BadPerturbation: ``z² ≠ 0`` or ``ez + ze ≠ z``.
    """
    _require_idempotent(e, 'e')
    if not (z @ z).is_zero():
        raise BadPerturbation('z does not square to zero')
    if e @ z + z @ e != z:
        raise BadPerturbation('ez + ze differs from z')
    result = e + z
    if not is_idempotent(result):
        raise InternalInconsistency('e + z is not idempotent')
    return result


def kernel_projection(a: Matrix, k: int | None = None) -> Matrix:
    r"""Projection onto (the first ``k`` vectors of) ``ker(a)`` along the
    standard complement.

    Raises:
        Injective: ``ker(a) = 0``.
    """
    kernel = kernel_basis(a)
    if kernel.k == 0:
        raise Injective('matrix has trivial kernel')
    if k is not None:
        kernel = kernel.head(k)
    basis = SplitBasis.from_segments([('KER', kernel), ('REST', complement(kernel))])
    return projection(basis, 'KER')


def kernel_idempotent_avoiding_fix(a: Matrix) -> Matrix:
    r"""Idempotent ``e = f - fa`` with ``im(e) = ker(a)`` and ``fix(a) ⊆ ker(e)``.

    ``f`` is the projection onto ``ker(a)`` along its standard complement.

    Raises:
        Injective: ``ker(a) = 0``.
    """
    f = kernel_projection(a)
    e = f - f @ a
    if not is_idempotent(e) or not (a @ e).is_zero():
        raise InternalInconsistency('f - fa is not an idempotent inside ker(a)')
    return e


def conjugate(a: Matrix, u: Matrix) -> Matrix:
    r"""``U⁻¹AU``.

    Raises:
        NotInvertible: ``U`` is not invertible over the ring.
    """
    return inverse(u) @ a @ u


@dataclass(frozen=True, eq=False)
class PeirceBasis:
    r"""Pairwise orthogonal idempotents summing to the identity.

    Raises:
        PreconditionViolated: the tuple is empty, not orthogonal, or does not
            sum to the identity.
        NotIdempotent: a member is not idempotent.
    """
    idempotents: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.idempotents:
            raise PreconditionViolated('a Peirce basis needs at least one idempotent')
        ring, n = self.idempotents[0].ring, self.idempotents[0].n
        total = Matrix.zeros(ring, n)
        for i, e in enumerate(self.idempotents):
            _require_idempotent(e, f'e_{i}')
            total = total + e
            for j, f in enumerate(self.idempotents):
                if i != j and not (e @ f).is_zero():
                    raise PreconditionViolated(f'e_{i} and e_{j} are not orthogonal')
        if not total.is_identity():
            raise PreconditionViolated('idempotents do not sum to the identity')

    @classmethod
    def from_split_basis(cls, basis: SplitBasis) -> 'PeirceBasis':
        return cls(tuple(projection(basis, label) for label in basis.labels))

    def __len__(self) -> int:
        return len(self.idempotents)

    def __getitem__(self, i: int) -> Matrix:
        return self.idempotents[i]


@dataclass(frozen=True)
class DependenceWitness:
    r"""``x_ell = Σ_{i≠ell} x_i·b_i`` with every ``b_i`` in the ring.

    Attributes:
        ell (int): index of the vector expressed by the others (0-based).
        coefficients (dict[int, Scalar]): ``b_i`` for every ``i ≠ ell``.
    """
    ell: int
    coefficients: dict[int, Scalar]

    def coefficient(self, i: int) -> Scalar:
        return self.coefficients[i]


def min_valuation_dependence(ring: RingDescriptor, vectors: Sequence[np.ndarray]) -> DependenceWitness:
    r"""Express one vector of a dependent family through the others.

    A relation ``Σ x_i a_i = 0`` is read off the kernel of the matrix with
    columns ``x_i``, divided by ``p^s`` for ``s`` the least valuation among
    the ``a_i``; ``ell`` is the smallest index whose coefficient is then a
    unit and ``b_i = -a_i / a_ell``.

    Raises:
        PreconditionViolated: ``vectors`` is empty.
        Independent: the family is linearly independent.
    """
    if not vectors:
        raise PreconditionViolated('dependence needs at least one vector')
    m = len(vectors)
    dim = len(vectors[0])
    columns = np.column_stack(vectors).astype(object) if dim else ring.zeros((0, m))
    r, v = eliminate(ring, columns)
    if r == m:
        raise Independent(f'{m} vectors are linearly independent over {ring}')
    relation = v[:, r]
    s = min(ring.valuation(x) for x in relation)
    if ring.kind == RingKind.ZP and s > 0:
        relation = relation / ring.element(ring.p ** s)
    ell = next(i for i, x in enumerate(relation) if ring.is_unit(x))
    coefficients = {i: ring.neg(ring.div(relation[i], relation[ell])) for i in range(m) if i != ell}
    rebuilt = ring.zeros(dim)
    for i, b in coefficients.items():
        rebuilt = ring.reduce(rebuilt + vectors[i] * b)
    if dim and not bool(np.all(rebuilt == ring.reduce(np.asarray(vectors[ell], dtype=object)))):
        raise InternalInconsistency('dependence witness does not rebuild its vector')
    return DependenceWitness(ell, coefficients)
