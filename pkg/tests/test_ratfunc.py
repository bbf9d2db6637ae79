import random

import pytest
from hypothesis import given, settings, strategies as st

from csaforge.errors import InvalidInput, SamplingFailure
from csaforge.fields import ff_make
from csaforge.poly import (Poly, factor, poly_crt, poly_gcd, poly_irreducible, poly_xgcd,
                          sample_irreducible_in_class)
from csaforge.ratfunc import (INFINITY, Place, RatFunc, ResidueField, moebius_apply,
                              moebius_substitute, moebius_unsubstitute, support, valuation)

F3, F5, F9 = ff_make(3), ff_make(5), ff_make(3, 2)


def P(F, s):
    return Poly.parse(F, s)


def polys(F, max_deg=4):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(lambda c: Poly(F, c))


def ratfuncs(F, max_deg=3):
    return st.tuples(polys(F, max_deg), polys(F, max_deg)).filter(lambda nd: nd[1]).map(
        lambda nd: RatFunc(nd[0], nd[1]))


def test_poly_oracles():
    assert P(F3, "t+1") * P(F3, "t-1") == P(F3, "t^2+2")
    q, r = divmod(P(F5, "t^2"), P(F5, "t-2"))
    assert q == P(F5, "t+2") and r == Poly.const(F5, 4)
    assert poly_gcd(P(F5, "t^2-1"), P(F5, "t-1")) == P(F5, "t+4")


def test_crt_oracles():
    assert poly_crt([(Poly.const(F3, 1), P(F3, "t")), (Poly.const(F3, 0), P(F3, "t+1"))]) == P(F3, "t+1")
    assert poly_crt([(P(F3, "t"), P(F3, "t^2+1"))]) == P(F3, "t")
    with pytest.raises(InvalidInput):
        poly_crt([(Poly.const(F3, 1), P(F3, "t")), (Poly.const(F3, 1), P(F3, "t"))])


def test_irreducibility_oracles():
    assert poly_irreducible(P(F5, "t"))
    assert not poly_irreducible(P(F3, "t^2"))
    assert poly_irreducible(P(F3, "t^2+1"))
    assert not poly_irreducible(P(F3, "t^2+2"))
    assert poly_irreducible(P(F9, "t^2+w"))


@pytest.mark.parametrize("F", [F3, F5, F9])
def test_irreducible_count_degree_3(F):
    q = F.q
    count = 0
    for c0 in range(q):
        for c1 in range(q):
            for c2 in range(q):
                count += poly_irreducible(Poly(F, [c0, c1, c2, 1]))
    assert count == (q ** 3 - q) // 3


@settings(max_examples=80, deadline=None)
@given(polys(F5), polys(F5))
def test_xgcd_bezout(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    if g:
        assert a % g == Poly(F5, []) and b % g == Poly(F5, [])


@settings(max_examples=40, deadline=None)
@given(polys(F9, 5))
def test_factor_reconstructs(f):
    if f.deg < 1:
        return
    fs = factor(f.monic())
    prod = Poly.const(F9, 1)
    for g, e in fs:
        assert poly_irreducible(g)
        prod = prod * g ** e
    assert prod == f.monic()


def test_sampling_oracles():
    rng = random.Random(1)
    Fm = P(F3, "t^2+t")
    u = sample_irreducible_in_class(Poly.const(F3, 1), Fm, 1, 0, rng)
    assert u.deg == 8 and poly_irreducible(u) and u % Fm == Poly.const(F3, 1) and u.is_monic()
    u = sample_irreducible_in_class(Poly.const(F3, 1), P(F3, "t"), 1, 1, rng)
    assert u.deg == 5 and poly_irreducible(u)
    u = sample_irreducible_in_class(Poly.const(F5, 3), P(F5, "t+1"), 2, 1, rng)
    assert u.lc == 2 and u % P(F5, "t+1") == Poly.const(F5, 3)
    with pytest.raises(InvalidInput):
        sample_irreducible_in_class(P(F3, "t"), P(F3, "t"), 1, 0, rng)


def test_sampling_budget_is_finite():
    # with a degree-0 cofactor the only candidate over F_2 is t^2, so every draw fails
    F2 = ff_make(2)
    with pytest.raises(SamplingFailure):
        sample_irreducible_in_class(Poly.const(F2, 1), P(F2, "t^2+1"), 1, 0, random.Random(0), extra_degree=0)


@settings(max_examples=80, deadline=None)
@given(ratfuncs(F5), ratfuncs(F5), ratfuncs(F5))
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == RatFunc.const(F5, 0)
    if a:
        assert a * a.inv() == RatFunc.const(F5, 1)


@settings(max_examples=80, deadline=None)
@given(ratfuncs(F9))
def test_format_parse_roundtrip(x):
    assert RatFunc.parse(F9, x.format()) == x


def test_parse_rejects_noncanonical():
    for s in ["(t^2-1)/(t-1)", "t/(2*t+1)", "1/0"]:
        with pytest.raises(InvalidInput):
            RatFunc.parse(F3, s)


def test_valuations():
    t = RatFunc.t(F3)
    x = RatFunc.parse(F3, "(t^2)/(t^2+1)")
    assert valuation(x, Place.finite(P(F3, "t"))) == 2
    assert valuation(x, Place.finite(P(F3, "t^2+1"))) == -1
    assert valuation(x, INFINITY) == 0
    assert valuation(t, INFINITY) == -1
    assert set(support(x)) == {Place.finite(P(F3, "t")), Place.finite(P(F3, "t^2+1"))}


@settings(max_examples=60, deadline=None)
@given(ratfuncs(F5), ratfuncs(F5))
def test_valuation_is_additive(a, b):
    if not a or not b:
        return
    for v in [Place.finite(P(F5, "t")), Place.finite(P(F5, "t^2+2")), INFINITY]:
        assert valuation(a * b, v) == valuation(a, v) + valuation(b, v)


@settings(max_examples=60, deadline=None)
@given(ratfuncs(F5), ratfuncs(F5), st.integers(0, 4))
def test_moebius_is_ring_map(a, b, c):
    m = (2, c, 1, 3) if c != 1 else (1, c, 0, 2)
    assert moebius_apply(a * b, m) == moebius_apply(a, m) * moebius_apply(b, m)
    assert moebius_apply(a + b, m) == moebius_apply(a, m) + moebius_apply(b, m)
    assert moebius_unsubstitute(moebius_substitute(a, c), c) == a


def test_substitution_oracle():
    c = 2
    s = RatFunc.t(F5)
    assert moebius_substitute(RatFunc.parse(F5, "t+2"), c) == s.inv()
    assert moebius_substitute(RatFunc.const(F5, 3), c) == RatFunc.const(F5, 3)


def test_residue_fields():
    R = ResidueField(P(F3, "t"))
    assert R.q == 3
    assert R.reduce(P(F3, "t^2+t+2")) == R.reduce(Poly.const(F3, 2))
    R9 = ResidueField(P(F3, "t^2+1"))
    assert R9.q == 9
    els = list(R9.elements())
    g = R9.gen
    assert len({R9.reduce(R9.pow(g, k)) for k in range(8)}) == 8
    for x in els[1:4]:
        assert R9.mul(x, R9.inv(x)) == R9.one
    with pytest.raises(InvalidInput):
        ResidueField(P(F3, "t^2"))


def test_place_format():
    for s in ["inf", "finite:t", "finite:t^2+1"]:
        assert Place.parse(F3, s).format() == s
    with pytest.raises(InvalidInput):
        Place.parse(F3, "finite:t^2")
    assert Place.parse(F3, "finite:t") < INFINITY
