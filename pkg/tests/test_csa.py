import random

import pytest

from csaforge.codes import random_ratfunc
from csaforge.csa import (FixedBasis, MatRep, alg_inverse, cyclic_as_symbol,
                          idempotent_from_zero_divisor, is_normal, k_rank, lemma_beta,
                          matrix_units_from_idempotent, normal_element, orthogonal_idempotent_system,
                          split_idempotent_system)
from csaforge.errors import InvalidInput
from csaforge.fields import ff_make, ff_root_of_unity
from csaforge.local import invariant_profile
from csaforge.matrix import identity, matmul
from csaforge.ore import AlgElem, CyclicAlgebra, FieldAut, SkewPoly
from csaforge.ratfunc import RatFunc


def split_algebra(q, n):
    F = ff_make(q)
    z = ff_root_of_unity(F, n)
    sigma = FieldAut(F, 0, (z, 0, 0, 1), order=n)
    t = RatFunc.t(F)
    mu = t if n % 2 == 0 else -t
    return CyclicAlgebra(sigma, n, -(t ** n)), mu


def index_two_algebra():
    F = ff_make(5)
    sigma = FieldAut(F, 0, (2, 0, 0, 1), order=4)
    t = RatFunc.t(F)
    A = CyclicAlgebra(sigma, 4, t ** 4)
    w = A.elem([0 * t, t, 0 * t, 0 * t])
    return A, w * w - A.scalar(2 * t ** 4)


def rand_elem(A, rng):
    return AlgElem(A, [random_ratfunc(A.F, rng, 1) for _ in range(A.n)])


def test_normal_elements():
    F = ff_make(3, 3)
    sigma = FieldAut(F, 1)
    alpha = normal_element(sigma, 3)
    assert is_normal(sigma, alpha, 3)
    assert not is_normal(sigma, RatFunc.const(F, 1), 3)
    A, _ = split_algebra(7, 3)
    assert is_normal(A.sigma, normal_element(A.sigma, 3), 3)


def test_fixed_basis_roundtrip():
    A, _ = split_algebra(7, 3)
    fb = FixedBasis(A)
    rng = random.Random(0)
    for _ in range(5):
        x = random_ratfunc(A.F, rng, 2)
        coords = fb.decompose(x)
        assert all(A.sigma.is_fixed(c) for c in coords)
        assert fb.compose(coords) == x
        u = rand_elem(A, rng)
        assert fb.element(fb.coords(u)) == u
    assert fb.dim == 9


@pytest.mark.parametrize("q,n", [(7, 2), (7, 3), (5, 4)])
def test_matrep_multiplicative(q, n):
    A, mu = split_algebra(q, n)
    rep = MatRep(A, mu)
    zero, one = rep.fb.zero, rep.fb.one
    assert rep(A.one()) == identity(n, zero, one)
    rng = random.Random(q * n)
    for _ in range(6):
        u, v = rand_elem(A, rng), rand_elem(A, rng)
        assert rep(u * v) == matmul(rep(u), rep(v), zero)
        assert rep.inverse(rep(u)) == u


def test_matrep_rejects_wrong_norm():
    A, mu = split_algebra(7, 3)
    with pytest.raises(InvalidInput):
        MatRep(A, mu + RatFunc.const(A.F, 1))


def test_inverse_and_rank():
    A, mu = split_algebra(7, 2)
    fb = FixedBasis(A)
    u = A.one() + A.x()
    assert alg_inverse(fb, u) * u == A.one()
    assert k_rank(A, [A.one(), A.x(), A.one() + A.x()]) == 2


def test_idempotent_from_zero_divisor():
    A, z = index_two_algebra()
    fb = FixedBasis(A)
    e, primitive = idempotent_from_zero_divisor(A, z, 2, fb)
    assert primitive
    assert e * e == e and z * e == z
    e2, _ = idempotent_from_zero_divisor(A, e, 2, fb)
    assert e2 * e2 == e2 and e * e2 == e
    with pytest.raises(InvalidInput):
        idempotent_from_zero_divisor(A, A.one(), 2, fb)
    units = matrix_units_from_idempotent(A, e, fb)
    assert units.k == 2
    units.verify()


def test_index_two_profile():
    A, _ = index_two_algebra()
    prof = invariant_profile(cyclic_as_symbol(A))
    assert prof.lcm_denominator() == 2


def test_orthogonal_system_from_units():
    A, z = index_two_algebra()
    fb = FixedBasis(A)
    e, _ = idempotent_from_zero_divisor(A, z, 2, fb)
    units = matrix_units_from_idempotent(A, e, fb)
    S = orthogonal_idempotent_system(A, units, 2, fb)
    S.verify()
    assert S.count == 2 and len(S.members) == 2


@pytest.mark.parametrize("q,n", [(7, 2), (7, 3), (5, 4)])
def test_split_systems(q, n):
    A, mu = split_algebra(q, n)
    S = split_idempotent_system(A, mu)
    S.verify()
    es = S.members
    assert sum(es[1:], es[0]) == A.one()


@pytest.mark.parametrize("q,n", [(7, 2), (7, 3)])
def test_lemma_beta(q, n):
    A, mu = split_algebra(q, n)
    rep = MatRep(A, mu)
    S = split_idempotent_system(A, mu, rep)
    e = A.one() - S.e0
    beta = lemma_beta(rep, e)
    ideal = [A.x(i) * A.from_skew(SkewPoly.linear(A.sigma, beta)) for i in range(n)]
    # K-dimension n-1, i.e. K^sigma-dimension n(n-1)
    assert k_rank(A, ideal) == n - 1
    assert lemma_beta(rep, A.zero()) == mu
    with pytest.raises(InvalidInput):
        lemma_beta(rep, A.one())
