import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from IdemFactor.algebra import (Matrix, RingDescriptor, block_diagonal, conjugate, fix_basis,
                                idempotent_certificate, is_idempotent, kernel_basis, rank)
from IdemFactor.factor import (adapted_basis, dge1_split_fixfree, dge1_split_general, dvd_bound,
                               factor_singular_dvd, reduce_kernel_rank, reduce_mod_p)
from IdemFactor.oracle import verify_factorization
from IdemFactor.utils.errors import NotInvertible, NotSingular, PreconditionViolated, WrongRing
from IdemFactor.utils.sampling import random_matrix, random_singular

Q = RingDescriptor.rationals()
Z2 = RingDescriptor.local_integers(2)
Z3 = RingDescriptor.local_integers(3)

seeds = st.integers(0, 2 ** 32 - 1)


def product(factors):
    result = Matrix.identity(factors[0].ring, factors[0].n)
    for f in factors:
        result = result @ f
    return result


def test_reduce_kernel_rank():
    g, h = reduce_kernel_rank(Matrix.zeros(Z2, 2))
    assert g == Matrix(Z2, [[1, 0], [0, 0]]) and h == Matrix(Z2, [[0, 0], [0, 1]])
    a = Matrix(Z2, [[0, 0, 0], [0, 0, 0], [0, 0, 2]])
    g, h = reduce_kernel_rank(a)
    assert g @ h == a
    assert idempotent_certificate(h).idempotent and rank(h) == 2
    assert kernel_basis(g).k == 1


def test_adapted_basis_examples():
    adapted = adapted_basis(Matrix(Z2, [[2, 0], [0, 0]]))
    assert adapted.d == 0 and adapted.ell == 1 and adapted.b(0) == 0
    assert [v.tolist() for v in adapted.basis.span('KER')] == [[0, 1]]
    assert [v.tolist() for v in adapted.basis.span('Q')] == [[1, 0]]

    adapted = adapted_basis(Matrix(Z2, [[1, 0, 0], [0, 2, 0], [0, 0, 0]]))
    assert adapted.d == 1
    assert [v.tolist() for v in adapted.basis.span('FIX')] == [[1, 0, 0]]
    assert [v.tolist() for v in adapted.basis.span('Q')] == [[0, 1, 0]]
    assert [v.tolist() for v in adapted.basis.span('KER')] == [[0, 0, 1]]

    adapted = adapted_basis(Matrix(Z3, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    assert adapted.d == 2 and adapted.ell == 2 and not adapted.basis.span('Q').generators


def test_adapted_basis_needs_a_kernel_line():
    with pytest.raises(PreconditionViolated):
        adapted_basis(Matrix.zeros(Z2, 2))
    with pytest.raises(WrongRing):
        adapted_basis(Matrix(Q, [[2, 0], [0, 0]]))


def test_dge1_split_fixfree_example():
    a = Matrix(Z2, [[2, 0], [0, 0]])
    beta, gamma = dge1_split_fixfree(a, adapted_basis(a))
    assert beta == Matrix(Z2, [[1, 1], [0, 0]])
    assert gamma == Matrix(Z2, [[1, 0], [1, 0]])
    assert beta @ gamma == a
    assert [v.tolist() for v in fix_basis(gamma)] == [[1, 1]]


def test_dge1_split_general_example():
    a = Matrix(Z2, [[1, 0, 0], [0, 2, 0], [0, 0, 0]])
    parts = dge1_split_general(a, adapted_basis(a))
    assert len(parts) == 2
    assert product(parts) == a
    assert idempotent_certificate(parts[0]).coprimitive
    assert fix_basis(parts[1]).k > 1


def test_dge1_splits_check_fixed_rank():
    fixed = Matrix(Z2, [[1, 0, 0], [0, 2, 0], [0, 0, 0]])
    with pytest.raises(PreconditionViolated):
        dge1_split_fixfree(fixed, adapted_basis(fixed))
    fixfree = Matrix(Z2, [[2, 0], [0, 0]])
    with pytest.raises(PreconditionViolated):
        dge1_split_general(fixfree, adapted_basis(fixfree))


@pytest.mark.parametrize('rows, length', [
    ([[2, 0], [0, 0]], 2),
    ([[0, 2], [0, 0]], 2),
    ([[1, 1, 0], [0, 0, 0], [0, 0, 1]], 1),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 0]], 1),
    ([[0]], 1),
])
def test_factor_singular_dvd_examples(rows, length):
    a = Matrix(Z2, rows)
    result = factor_singular_dvd(a)
    assert result.length == length
    assert result.ok and product(result.factors) == a


def test_factor_singular_dvd_rejects():
    with pytest.raises(NotSingular):
        factor_singular_dvd(Matrix(Z2, [[1, 2], [0, 1]]))
    with pytest.raises(WrongRing):
        factor_singular_dvd(Matrix(Q, [[0, 1], [0, 0]]))


@pytest.mark.parametrize('n, d, bound', [(1, 0, 1), (2, 0, 2), (3, 0, 4), (3, 1, 3), (4, 2, 3), (4, 1, 5)])
def test_dvd_bound(n, d, bound):
    assert dvd_bound(n, d) == bound


@pytest.mark.parametrize('p', [2, 3])
@pytest.mark.parametrize('n', [2, 3, 4])
def test_random_batches(n, p):
    ring = RingDescriptor.local_integers(p)
    rng = np.random.default_rng(1000 * n + p)
    for _ in range(500):
        a = random_singular(ring, n, rng)
        d = fix_basis(a).k
        result = factor_singular_dvd(a)
        assert result.length <= 2 * n - 2
        if d >= 1:
            assert result.length <= 2 * (n - d) - 1
        report = verify_factorization(a, result.factors, n - 1, result.bound)
        assert report.ok, report.failures


@settings(max_examples=1000)
@given(seeds, st.sampled_from([Z2, Z3]), st.integers(2, 4))
def test_fixfree_split_contracts(seed, ring, n):
    a = random_singular(ring, n, np.random.default_rng(seed))
    assume(kernel_basis(a).k == 1 and fix_basis(a).k == 0)
    beta, gamma = dge1_split_fixfree(a, adapted_basis(a))
    assert beta @ gamma == a
    assert idempotent_certificate(beta).coprimitive
    assert fix_basis(gamma).k >= 1


def _with_fixed_part(ring, n, d, rng) -> Matrix:
    block = random_singular(ring, n - d, rng)
    while True:
        u = random_matrix(ring, n, rng, max_valuation=1, density=0.8)
        try:
            return conjugate(block_diagonal([Matrix.identity(ring, d), block]), u)
        except NotInvertible:
            continue


@settings(max_examples=1000)
@given(seeds, st.sampled_from([Z2, Z3]), st.integers(3, 4))
def test_general_split_contracts(seed, ring, n):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, n - 1))
    a = _with_fixed_part(ring, n, d, rng)
    cert = idempotent_certificate(a)
    assume(cert.kernel.k == 1 and 1 <= cert.fix.k < n - 1)
    parts = dge1_split_general(a, adapted_basis(a))
    assert product(parts) == a
    assert idempotent_certificate(parts[0]).coprimitive
    if len(parts) == 3:
        assert idempotent_certificate(parts[2]).coprimitive
    assert fix_basis(parts[1]).k > cert.fix.k


def test_reduce_mod_p():
    result = factor_singular_dvd(Matrix(Z2, [[3, 0], [0, 0]]))
    target, factors = reduce_mod_p(result)
    assert target == Matrix(RingDescriptor.prime_field(2), [[1, 0], [0, 0]])
    assert product(factors) == target and all(is_idempotent(f) for f in factors)
    assert reduce_mod_p(factor_singular_dvd(Matrix(Z2, [[2, 0], [0, 0]]))) is None


@pytest.mark.parametrize('p', [2, 3])
@pytest.mark.parametrize('n', [2, 3])
def test_reduce_mod_p_random(n, p):
    ring = RingDescriptor.local_integers(p)
    rng = np.random.default_rng(7000 + 10 * n + p)
    reduced = 0
    for _ in range(200):
        result = factor_singular_dvd(random_singular(ring, n, rng))
        images = reduce_mod_p(result)
        if images is None:
            continue
        target, factors = images
        assert target.ring == ring.residue_field
        assert all(f.ring == target.ring and is_idempotent(f) for f in factors)
        assert product(factors) == target
        assert kernel_basis(target).k == kernel_basis(result.target).k
        reduced += 1
    assert reduced > 0
