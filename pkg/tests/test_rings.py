import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from IdemFactor.algebra import RingDescriptor, RingKind
from IdemFactor.utils.errors import (CompositeModulus, DivisionByNonUnit, InvalidInput,
                                     MalformedMatrix, MalformedScalar, NotInRing)
from IdemFactor.utils.sampling import random_entry

Q = RingDescriptor.rationals()
F5 = RingDescriptor.prime_field(5)
F7 = RingDescriptor.prime_field(7)
Z2 = RingDescriptor.local_integers(2)
Z3 = RingDescriptor.local_integers(3)


@pytest.mark.parametrize('ring, x, expected', [
    (Z2, Fraction(12), 2),
    (Z2, Fraction(3, 5), 0),
    (RingDescriptor.local_integers(7), Fraction(0), math.inf),
    (Z3, Fraction(-18, 5), 2),
    (Q, Fraction(12), 0),
    (F5, 3, 0),
])
def test_valuation(ring, x, expected):
    assert ring.valuation(x) == expected


@pytest.mark.parametrize('ring, x, expected', [
    (F7, 5, True),
    (Z3, Fraction(6), False),
    (Z2, Fraction(3, 5), True),
    (Q, Fraction(0), False),
])
def test_is_unit(ring, x, expected):
    assert ring.is_unit(x) is expected


@pytest.mark.parametrize('ring, a, b, op, expected', [
    (Q, Fraction(1, 3), Fraction(1, 6), 'add', Fraction(1, 2)),
    (F7, 4, 5, 'mul', 6),
    (F7, 2, 5, 'sub', 4),
    (F7, 1, 3, 'div', 5),
    (Z2, Fraction(2), Fraction(3), 'div', Fraction(2, 3)),
])
def test_arithmetic(ring, a, b, op, expected):
    assert ring.arithmetic(a, b, op) == expected


def test_division_by_non_unit():
    with pytest.raises(DivisionByNonUnit):
        Z2.arithmetic(Fraction(2), Fraction(4), 'div')
    with pytest.raises(ZeroDivisionError):
        F5.inverse(0)


def test_quotient_allows_matching_valuation():
    assert Z2.quotient(Fraction(4), Fraction(2)) == 2
    with pytest.raises(DivisionByNonUnit):
        Z2.quotient(Fraction(2), Fraction(4))


@pytest.mark.parametrize('ring, text, expected', [
    (Q, '-3/7', Fraction(-3, 7)),
    (Q, ' 4 ', Fraction(4)),
    (F5, '-1', 4),
    (F5, '1/2', 3),
    (Z3, '5/2', Fraction(5, 2)),
])
def test_parse(ring, text, expected):
    assert ring.parse(text) == expected


@pytest.mark.parametrize('ring, text, error', [
    (Q, '1.5', MalformedScalar),
    (Q, '1/0', MalformedScalar),
    (Q, 'x', MalformedScalar),
    (Z3, '1/3', NotInRing),
    (F5, '2/5', NotInRing),
])
def test_parse_rejects(ring, text, error):
    with pytest.raises(error):
        ring.parse(text)
    assert issubclass(error, InvalidInput)


def test_element_rejects_floats():
    with pytest.raises(MalformedScalar):
        Q.element(0.5)


@pytest.mark.parametrize('kind, p', [('Fp', 4), ('Zp', 1), ('Fp', None), ('Q', 3)])
def test_bad_modulus(kind, p):
    with pytest.raises(CompositeModulus):
        RingDescriptor(kind, p)


def test_residue():
    assert Z3.residue(Fraction(5, 2)) == 1
    assert Z2.residue(Fraction(-1, 3)) == 1
    assert Z2.residue_field == RingDescriptor.prime_field(2)
    assert F5.residue_field is F5


def test_reduce_keeps_normal_form():
    values = np.array([7, -1, 12], dtype=object)
    assert F5.reduce(values).tolist() == [2, 4, 2]


@pytest.mark.parametrize('ring', [Q, F5, Z3])
def test_json(ring):
    assert RingDescriptor.from_json(ring.to_json()) == ring


def test_json_rejects_unknown_kind():
    with pytest.raises(MalformedMatrix):
        RingDescriptor.from_json({'kind': 'Zq', 'p': 3})
    assert RingKind('Zp') == RingKind.ZP


def elements(ring: RingDescriptor) -> st.SearchStrategy:
    numerators = st.integers(-60, 60)
    match ring.kind:
        case RingKind.FP:
            return st.integers(0, ring.p - 1)
        case RingKind.ZP:
            return st.builds(Fraction, numerators, st.integers(1, 40).filter(lambda b: b % ring.p != 0))
    return st.builds(Fraction, numerators, st.integers(1, 40))


FIELDS = [Q, F5, F7, RingDescriptor.prime_field(2)]
LOCAL = [Z2, Z3, RingDescriptor.local_integers(5)]


def triples(rings):
    return st.sampled_from(rings).flatmap(lambda ring: st.tuples(st.just(ring), elements(ring), elements(ring),
                                                                 elements(ring)))


@settings(max_examples=500)
@given(triples(FIELDS + LOCAL))
def test_ring_axioms(args):
    ring, a, b, c = args
    add, mul = ring.add, ring.mul
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, ring.neg(a)) == ring.zero and mul(a, ring.one) == a
    assert ring.sub(add(a, b), b) == a
    for x in (add(a, b), mul(a, b), ring.sub(a, c)):
        assert ring.element(x) == x


@settings(max_examples=500)
@given(triples(FIELDS))
def test_field_inverses(args):
    ring, a, b, _ = args
    if a != 0:
        assert ring.is_unit(a)
        assert ring.mul(a, ring.inverse(a)) == ring.one
        assert ring.mul(ring.div(b, a), a) == b


@settings(max_examples=500)
@given(triples(LOCAL))
def test_valuation_laws(args):
    ring, a, b, _ = args
    assert ring.valuation(ring.mul(a, b)) == ring.valuation(a) + ring.valuation(b)
    assert ring.valuation(ring.add(a, b)) >= min(ring.valuation(a), ring.valuation(b))
    assert ring.is_unit(a) == (ring.valuation(a) == 0)
    if ring.is_unit(a):
        assert ring.element(ring.inverse(a)) == ring.inverse(a)
    elif a != 0:
        with pytest.raises(DivisionByNonUnit):
            ring.inverse(a)
    p = ring.p
    assert ring.residue(ring.mul(a, b)) == ring.residue(a) * ring.residue(b) % p
    assert ring.residue(ring.add(a, b)) == (ring.residue(a) + ring.residue(b)) % p


@settings(max_examples=500)
@given(triples(FIELDS + LOCAL))
def test_render_parse(args):
    ring, a, _, _ = args
    assert ring.parse(ring.render(a)) == a


@pytest.mark.parametrize('p', [2, 3, 5])
def test_random_entries_lie_in_ring(p):
    ring = RingDescriptor.local_integers(p)
    rng = np.random.default_rng(p)
    for _ in range(2000):
        x = random_entry(ring, rng, max_valuation=2, density=0.9)
        assert ring.element(x) == x
        assert x == 0 or ring.valuation(x) <= 2
