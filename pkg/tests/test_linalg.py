from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from IdemFactor.algebra import (ColumnSpan, Matrix, RingDescriptor, SplitBasis, all_matrices,
                                block_diagonal, complement, fix_basis, image_basis, inverse,
                                is_pure, kernel_basis, left_kernel_basis, projection, rank)
from IdemFactor.utils.errors import ImpureSpan, MalformedMatrix, NotInvertible, WrongRing

Q = RingDescriptor.rationals()
F2 = RingDescriptor.prime_field(2)
F3 = RingDescriptor.prime_field(3)
F5 = RingDescriptor.prime_field(5)
Z2 = RingDescriptor.local_integers(2)
Z3 = RingDescriptor.local_integers(3)

square_entries = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


def vectors(span: ColumnSpan) -> list[list]:
    return [v.tolist() for v in span.generators]


def span(ring, *columns) -> ColumnSpan:
    return ColumnSpan(ring, len(columns[0]) if columns else 2,
                      tuple(ring.array(c) for c in columns))


def test_matrix_basics():
    a = Matrix(Q, [['1/2', 0], [0, 1]])
    assert a.n == 2 and a[0, 0] == Fraction(1, 2)
    assert a @ Matrix.identity(Q, 2) == a
    assert (a - a).is_zero()
    assert a.T == a and a.power(0).is_identity()
    assert repr(a) == 'Matrix(Q, [[1/2,0],[0,1]])'
    assert hash(a) == hash(Matrix(Q, [[Fraction(1, 2), 0], [0, 1]]))
    assert Matrix(F5, [[7, -1], [0, 0]]).rows() == [['2', '4'], ['0', '0']]


def test_matrix_rejects_mixing():
    with pytest.raises(WrongRing):
        Matrix(Q, [[1]]) @ Matrix(F2, [[1]])
    with pytest.raises(MalformedMatrix):
        Matrix(Q, [[1, 2]])
    with pytest.raises(MalformedMatrix):
        Matrix(Q, [[1]]) + Matrix.identity(Q, 2)


def test_block_diagonal():
    m = block_diagonal([Matrix(Q, [[2]]), Matrix(Q, [[0, 1], [0, 0]])])
    assert m == Matrix(Q, [[2, 0, 0], [0, 0, 1], [0, 0, 0]])


def test_all_matrices():
    assert sum(1 for _ in all_matrices(F2, 2)) == 16
    assert sum(1 for m in all_matrices(F3, 2) if rank(m) == 2) == 48
    with pytest.raises(WrongRing):
        next(all_matrices(Q, 2))


@pytest.mark.parametrize('ring, rows, expected', [
    (Q, [[1, 2], [2, 4]], 1),
    (F2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    (F5, [[0, 1], [0, 0]], 1),
    (Z2, [[2, 0], [0, 4]], 2),
])
def test_rank(ring, rows, expected):
    assert rank(Matrix(ring, rows)) == expected


@pytest.mark.parametrize('ring, rows, expected', [
    (F2, [[0, 1], [0, 0]], [[1, 0]]),
    (Z2, [[2, 0], [0, 0]], [[0, 1]]),
    (Q, [[1, 0], [0, 1]], []),
])
def test_kernel_basis(ring, rows, expected):
    assert vectors(kernel_basis(Matrix(ring, rows))) == expected


@pytest.mark.parametrize('ring, rows, expected', [
    (Q, [[1, 0], [0, 0]], [[1, 0]]),
    (F2, [[0, 1], [0, 0]], []),
    (F3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    (F2, [[0, 1], [0, 1]], [[1, 1]]),
])
def test_fix_basis(ring, rows, expected):
    assert vectors(fix_basis(Matrix(ring, rows))) == expected


@pytest.mark.parametrize('ring, rows, expected, pure', [
    (Q, [[1, 0], [1, 0]], [[1, 1]], True),
    (F2, [[0, 0], [0, 0]], [], True),
    (Z2, [[1, 1], [0, 0]], [[1, 0]], True),
    (Z2, [[2, 0], [0, 0]], [[2, 0]], False),
])
def test_image_basis(ring, rows, expected, pure):
    image = image_basis(Matrix(ring, rows))
    assert vectors(image) == expected
    assert image.pure is pure


@pytest.mark.parametrize('ring, generators, expected', [
    (Q, [[1, 0]], [[0, 1]]),
    (F2, [[1, 1]], [[0, 1]]),
    (Z3, [], [[1, 0], [0, 1]]),
    (Z3, [[3, 1]], [[1, 0]]),
])
def test_complement(ring, generators, expected):
    s = span(ring, *generators) if generators else ColumnSpan(ring, 2)
    result = complement(s)
    assert vectors(result) == expected
    assert is_pure(ring, 2, s.generators + result.generators)


def test_complement_rejects_impure():
    with pytest.raises(ImpureSpan):
        complement(span(Z2, [2, 0]))


def test_projection():
    standard = SplitBasis.from_segments([('A', span(Q, [1, 0])), ('B', span(Q, [0, 1]))])
    assert projection(standard, 'A') == Matrix(Q, [[1, 0], [0, 0]])
    skew = SplitBasis.from_segments([('A', span(F2, [1, 1])), ('B', span(F2, [0, 1]))])
    assert projection(skew, 'A') == Matrix(F2, [[1, 0], [1, 0]])
    assert projection(skew, 'all').is_identity()
    assert projection(skew, ['A', 'B']).is_identity()


def test_split_basis_requires_a_basis():
    with pytest.raises(NotInvertible):
        SplitBasis.from_segments([('A', span(Q, [1, 0], [2, 0]))])
    with pytest.raises(NotInvertible):
        SplitBasis.from_segments([('A', span(Z2, [2, 0])), ('B', span(Z2, [0, 1]))])


@pytest.mark.parametrize('ring, rows, expected', [
    (Q, [[1, 2], [3, 4]], [[-2, 1], ['3/2', '-1/2']]),
    (Z2, [[2, 1], [1, 1]], [[1, -1], [-1, 2]]),
    (F3, [[0, 1], [1, 0]], [[0, 1], [1, 0]]),
])
def test_inverse(ring, rows, expected):
    assert inverse(Matrix(ring, rows)) == Matrix(ring, expected)


def test_inverse_needs_unit_determinant():
    with pytest.raises(NotInvertible):
        inverse(Matrix(Z2, [[2, 0], [0, 1]]))
    with pytest.raises(NotInvertible):
        inverse(Matrix(Q, [[1, 2], [2, 4]]))


@pytest.mark.parametrize('ring, rows, expected', [
    (Q, [[0, 1], [0, 0]], [[0, 1]]),
    (Q, [[1, 0], [0, 1]], []),
    (F3, [[0, 0], [0, 0]], [[1, 0], [0, 1]]),
])
def test_left_kernel_basis(ring, rows, expected):
    assert vectors(left_kernel_basis(Matrix(ring, rows))) == expected


@settings(max_examples=300)
@given(square_entries, st.sampled_from([Z2, Z3]))
def test_local_kernel_is_a_pure_kernel(rows, ring):
    a = Matrix(ring, rows)
    kernel = kernel_basis(a)
    assert kernel.k == a.n - rank(a)
    assert is_pure(ring, a.n, kernel.generators)
    for v in kernel:
        assert all(x == 0 for x in a.apply(v))
    rest = complement(kernel)
    SplitBasis.from_segments([('KER', kernel), ('REST', rest)])


@settings(max_examples=300)
@given(square_entries)
def test_rank_agrees_across_rings(rows):
    # Z_(p) rank is the rank over the fraction field
    assert rank(Matrix(Z3, rows)) == rank(Matrix(Q, rows))
    a = Matrix(Q, rows)
    assert rank(a) == rank(a.T)
