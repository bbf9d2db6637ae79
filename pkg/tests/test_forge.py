import random
from fractions import Fraction

import pytest

from csaforge.errors import InvalidInput
from csaforge.fields import ff_make, ff_root_of_unity
from csaforge.forge import (InvariantSpec, build_quaternion, build_symbol, swap_infinity,
                            symbol_structure_constants, unswap_infinity)
from csaforge.local import (SymbolAlgebra, conic_solvable_infinity, invariant_profile,
                            quaternion_ramification)
from csaforge.poly import Poly, poly_irreducible
from csaforge.ratfunc import INFINITY, Place, RatFunc

F3, F5, F13 = ff_make(3), ff_make(5), ff_make(13)


def place(F, s):
    return Place.parse(F, s)


def P(F, s):
    return Poly.parse(F, s)


def test_quaternion_two_places():
    S = {place(F3, "finite:t"), place(F3, "finite:t+1")}
    a, b = build_quaternion(S, F3, random.Random(7))
    assert quaternion_ramification(RatFunc(a), RatFunc(b)) == S


def test_quaternion_with_infinity():
    S = {place(F5, "finite:t"), INFINITY}
    a, b = build_quaternion(S, F5, random.Random(0))
    assert quaternion_ramification(RatFunc(a), RatFunc(b)) == S
    assert not conic_solvable_infinity(Poly.const(F5, 1), -a, -b)


def test_quaternion_empty_set_splits():
    a, b = build_quaternion([], F3, random.Random(0))
    assert quaternion_ramification(RatFunc(a), RatFunc(b)) == set()


def test_quaternion_rejects_bad_sets():
    with pytest.raises(InvalidInput):
        build_quaternion([place(F3, "finite:t")], F3, random.Random(0))
    with pytest.raises(InvalidInput):
        build_quaternion([place(F3, "finite:t"), place(F3, "finite:t")], F3, random.Random(0))
    with pytest.raises(InvalidInput):
        build_quaternion([], ff_make(2, 2), random.Random(0))


@pytest.mark.parametrize("seed", range(8))
def test_quaternion_random_sets(seed):
    rng = random.Random(seed)
    F = ff_make(3, 2)
    quad = next(f for c in range(1, F.q) if poly_irreducible(f := Poly(F, [c, 1, 1])))
    cands = [place(F, "finite:t"), place(F, "finite:t+1"), Place.finite(quad), INFINITY]
    S = set(rng.sample(cands, 2 * rng.randint(0, 2)))
    a, b = build_quaternion(S, F, rng)
    assert quaternion_ramification(RatFunc(a), RatFunc(b)) == S


def test_quaternion_is_deterministic():
    S = [place(F5, "finite:t"), place(F5, "finite:t^2+2")]
    assert build_quaternion(S, F5, random.Random(3)) == build_quaternion(S, F5, random.Random(3))


def test_symbol_q13_n3():
    spec = InvariantSpec(3, ((P(F13, "t"), Fraction(1, 3)), (P(F13, "t+1"), Fraction(2, 3))))
    A = build_symbol(spec, F13, random.Random(1))
    assert invariant_profile(A) == spec.profile()


def test_symbol_index_two_in_degree_four():
    spec = InvariantSpec(4, ((P(F5, "t"), Fraction(1, 2)),), Fraction(1, 2))
    A = build_symbol(spec, F5, random.Random(2))
    prof = invariant_profile(A)
    assert prof == spec.profile()
    assert A.n == 4 and prof.lcm_denominator() == 2


def test_symbol_auxiliary_case():
    # deg F = 2 is not coprime to n = 4, so an auxiliary place is added
    spec = InvariantSpec(4, ((P(F13, "t^2+2"), Fraction(1, 4)),), Fraction(3, 4))
    A = build_symbol(spec, F13, random.Random(5))
    assert invariant_profile(A) == spec.profile()


def test_symbol_split_spec():
    A = build_symbol(InvariantSpec(3, ()), F13, random.Random(0))
    assert invariant_profile(A) == {}


def test_spec_validation():
    with pytest.raises(InvalidInput):
        InvariantSpec(3, ((P(F13, "t"), Fraction(1, 3)),))
    with pytest.raises(InvalidInput):
        InvariantSpec(3, ((P(F13, "t"), Fraction(1, 2)), (P(F13, "t+1"), Fraction(1, 2))))
    with pytest.raises(InvalidInput):
        InvariantSpec(2, ((P(F13, "t^2"), Fraction(1, 2)),), Fraction(1, 2))
    with pytest.raises(InvalidInput):
        build_symbol(InvariantSpec(4, ()), ff_make(7), random.Random(0))


@pytest.mark.parametrize("q,n", [(5, 2), (7, 3), (5, 4), (13, 4)])
def test_structure_constants_associative(q, n):
    F = ff_make(q)
    eps = ff_root_of_unity(F, n)
    A = SymbolAlgebra(n, eps, RatFunc.parse(F, "t+1"), RatFunc.parse(F, "2*t^2"))
    sc = symbol_structure_constants(A)
    assert sc.dim == n * n
    assert sc.identity_index() == 0
    assert sc.associativity_failures() == 0


def test_structure_constants_relations():
    F = F13
    n = 3
    eps = ff_root_of_unity(F, n)
    a, b = RatFunc.parse(F, "t"), RatFunc.parse(F, "t+2")
    sc = symbol_structure_constants(SymbolAlgebra(n, eps, a, b))
    one = RatFunc.const(F, 1)
    u, v = {n: one}, {1: one}
    uv, vu = sc.mul(u, v), sc.mul(v, u)
    assert uv == {n + 1: one}
    assert vu == {n + 1: one.scale(F.inv(eps))}
    cube = sc.mul(u, sc.mul(u, u))
    assert cube == {0: a}


def test_swap_infinity():
    F = F5
    eps = ff_root_of_unity(F, 2)
    A = SymbolAlgebra(2, eps, RatFunc.parse(F, "t+3"), RatFunc.parse(F, "2"))
    sc = symbol_structure_constants(A)
    sw = swap_infinity(sc, 3)
    s = RatFunc.t(F)
    # u^2 = t + 3 becomes 1/s; constants stay put
    assert sw.gamma[2][2] == {0: s.inv()}
    assert sw.gamma[1][1] == {0: RatFunc.const(F, 2)}
    assert unswap_infinity(sw, 3).gamma == sc.gamma
    assert sw.associativity_failures() == 0
