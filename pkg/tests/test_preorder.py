import ast
import itertools
import logging

import numpy as np
import pytest

from IdemFactor.algebra import RingDescriptor, all_matrices, conjugate, rank
from IdemFactor.monoid import FiniteMonoid, PreorderView
from IdemFactor.oracle import transformation_monoid
from IdemFactor.utils.errors import InvalidTable, UnitInput

TWO = [[0, 1], [1, 1]]
NON_ASSOCIATIVE = [[0, 1, 2], [1, 2, 1], [2, 2, 1]]
MONOIDS = ['m2f2', 'm2f3', 'm3f2']


def test_two_element_monoid():
    view = PreorderView(FiniteMonoid(TWO, 0))
    assert view.rfix_set(0) == {0, 1}
    assert view.rfix_set(1) == {1}
    assert view.preorder_units() == {0}
    assert view.heights.tolist() == [0, 1]
    assert view.quarks() == {1}
    assert view.irreducibles_of_degree(2) == {1}
    assert view.factor_into_quarks(1) == [1]


def test_leq_is_rfix_containment(m2f2):
    view = PreorderView(m2f2.monoid)
    for a, b in itertools.product(range(m2f2.size), repeat=2):
        assert view.leq[a, b] == (view.rfix_set(b) <= view.rfix_set(a))
        assert view.below[a, b] == (view.rfix_set(b) < view.rfix_set(a))


def test_quarks_are_rank_one_idempotents(m2f2):
    view = PreorderView(m2f2.monoid)
    expected = {m2f2.index_of(np.array(rows)) for rows in (
        [[0, 0], [0, 1]], [[0, 0], [1, 1]], [[0, 1], [0, 1]],
        [[1, 0], [0, 0]], [[1, 0], [1, 0]], [[1, 1], [0, 0]],
    )}
    assert view.quarks() == expected
    assert view.irreducibles_of_degree(2) == expected


@pytest.mark.parametrize('name', MONOIDS)
def test_irreducibles_shrink_with_degree(name, request):
    view = PreorderView(request.getfixturevalue(name).monoid)
    quarks = view.quarks()
    previous = view.irreducibles_of_degree(2)
    assert quarks <= previous
    for s in (3, 4):
        current = view.irreducibles_of_degree(s)
        assert quarks <= current <= previous
        previous = current


@pytest.mark.parametrize('name', MONOIDS)
def test_heights_are_codimension_of_fix(name, request):
    snapshot = request.getfixturevalue(name)
    view = PreorderView(snapshot.monoid)
    for x in range(snapshot.size):
        assert view.height(x) == snapshot.n - snapshot.fix_dimension(x)


def test_height_examples(m2f2):
    view = PreorderView(m2f2.monoid)
    assert view.height(m2f2.index_of(np.zeros((2, 2), dtype=np.int64))) == 2
    assert view.height(m2f2.index_of(np.array([[0, 1], [0, 0]]))) == 2
    assert view.height(m2f2.index_of(np.array([[1, 0], [0, 0]]))) == 1
    assert view.height(m2f2.monoid.identity) == 0


def test_transformation_monoid_heights():
    monoid = transformation_monoid(3)
    view = PreorderView(monoid)
    assert monoid.size == 22
    for x, label in enumerate(monoid.labels):
        f = ast.literal_eval(label)
        fixed = sum(f[i] == i for i in range(3))
        assert view.height(x) == 3 - fixed


@pytest.mark.parametrize('s', [2, 3])
@pytest.mark.parametrize('name', MONOIDS)
def test_factor_into_quarks(name, s, request):
    monoid = request.getfixturevalue(name).monoid
    view = PreorderView(monoid)
    quarks = view.quarks()
    for x in np.flatnonzero(view.nonunits):
        factors = view.factor_into_quarks(int(x), s)
        assert monoid.product(factors) == x
        assert set(factors) <= quarks
        assert len(factors) <= (s - 1) * view.height(int(x)) - (s - 2)


@pytest.mark.parametrize('s', [2, 3])
@pytest.mark.parametrize('name', MONOIDS)
def test_factor_into_irreducibles(name, s, request):
    monoid = request.getfixturevalue(name).monoid
    view = PreorderView(monoid)
    irreducibles = view.irreducibles_of_degree(s)
    for x in np.flatnonzero(view.nonunits):
        factors = view.factor_into_irreducibles(int(x), s)
        assert monoid.product(factors) == x
        assert set(factors) <= irreducibles
        assert len(factors) <= s ** (view.height(int(x)) - 1)


def test_units_are_rejected(m2f2):
    view = PreorderView(m2f2.monoid)
    with pytest.raises(UnitInput):
        view.factor_into_quarks(m2f2.monoid.identity)
    with pytest.raises(UnitInput):
        view.factor_into_irreducibles(m2f2.monoid.identity)
    with pytest.raises(ValueError):
        view.irreducible_mask(1)


@pytest.mark.parametrize('table, identity', [
    (NON_ASSOCIATIVE, 0),
    ([[0, 1]], 0),
    ([[0, 2], [2, 0]], 0),
    (TWO, 1),
    (TWO, 5),
    ([], 0),
    ([['a', 'b'], ['b', 'a']], 0),
])
def test_invalid_tables(table, identity):
    with pytest.raises(InvalidTable):
        FiniteMonoid(table, identity)


def test_labels_must_match_size():
    with pytest.raises(InvalidTable):
        FiniteMonoid(TWO, 0, ['one'])


def test_sampled_associativity(caplog, m2f2):
    with caplog.at_level(logging.WARNING):
        monoid = FiniteMonoid(m2f2.monoid.table, 0, exhaustive_limit=4, samples=1000)
    assert monoid.associativity_sampled
    assert 'random triples only' in caplog.text
    assert not FiniteMonoid(TWO, 0).associativity_sampled
    with pytest.raises(InvalidTable):
        FiniteMonoid(NON_ASSOCIATIVE, 0, exhaustive_limit=1, samples=10_000)


def test_json():
    monoid = FiniteMonoid(TWO, 0, ['1', '0'])
    payload = monoid.to_json()
    assert payload == {'size': 2, 'identity': 0, 'table': TWO, 'labels': ['1', '0']}
    assert FiniteMonoid.from_json(payload).labels == ['1', '0']
    with pytest.raises(InvalidTable):
        FiniteMonoid.from_json({'size': 2, 'table': TWO})
    with pytest.raises(InvalidTable):
        FiniteMonoid.from_json({'size': 3, 'identity': 0, 'table': TWO})


def test_direct_product():
    two = FiniteMonoid(TWO, 0)
    product = two.direct_product(two)
    assert product.size == 4 and product.identity == 0
    assert product.labels[3] == '(1, 1)'
    view = PreorderView(product)
    assert view.heights.tolist() == [0, 1, 1, 2]
    assert view.quarks() == {1, 2}
    assert view.factor_into_quarks(3) == [1, 2]


def test_height_table(m2f2):
    table = PreorderView(m2f2.monoid).height_table(3)
    assert sorted(table.irreducible) == [2, 3]
    assert np.array_equal(table.quarks, table.heights == 1)
    assert table.quarks.sum() == 6


def test_heights_invariant_under_conjugation(m2f3):
    field = RingDescriptor.prime_field(3)
    view = PreorderView(m2f3.monoid)
    units = [u for u in all_matrices(field, 2) if rank(u) == 2]
    assert len(units) == 48
    for x in range(1, m2f3.size):
        a = m2f3.matrix(x)
        for u in units:
            assert view.height(m2f3.index_of(conjugate(a, u))) == view.height(x)
