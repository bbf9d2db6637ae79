import pytest
from hypothesis import given, settings, strategies as st

from csaforge.errors import InvalidInput
from csaforge.fields import (ff_embed, ff_make, ff_norm, ff_norm_solve, ff_normal_element,
                             ff_power_class, ff_root_of_unity)

FIELDS = [(2, 1), (3, 1), (13, 1), (3, 2), (2, 4), (5, 2), (3, 3), (3, 4)]


def elems(F):
    return st.integers(0, F.q - 1)


@pytest.mark.parametrize("p,e", FIELDS)
def test_axioms_exhaustive_small(p, e):
    F = ff_make(p, e)
    if F.q > 27:
        pytest.skip("exhaustive only for small fields")
    xs = list(F.elements())
    for a in xs:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in xs:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)


@pytest.mark.parametrize("p,e", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_distributive_and_frobenius(p, e, data):
    F = ff_make(p, e)
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    # Frobenius is a ring map of order e
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a, e) == a


@pytest.mark.parametrize("p,e", FIELDS)
def test_generator_is_primitive(p, e):
    F = ff_make(p, e)
    assert F.order_of(F.gen) == F.q - 1
    assert F.pow(F.gen, F.q - 1) == 1


@pytest.mark.parametrize("p,e", FIELDS)
def test_format_parse_roundtrip(p, e):
    F = ff_make(p, e)
    for a in F.elements():
        assert F.parse(F.format(a)) == a


def test_parse_rejects_unreduced():
    F = ff_make(3, 2)
    with pytest.raises(InvalidInput):
        F.parse("w^2")
    with pytest.raises(InvalidInput):
        ff_make(5).parse("w")


def test_from_int_is_prime_subfield():
    F = ff_make(3, 2)
    assert F.from_int(4) == F.from_int(1) == 1
    assert F.add(F.from_int(2), 1) == 0


@pytest.mark.parametrize("sub,sup", [((3, 1), (3, 2)), ((3, 2), (3, 4)), ((2, 2), (2, 4)), ((5, 1), (5, 2))])
def test_embedding_is_homomorphism(sub, sup):
    K, M = ff_make(*sub), ff_make(*sup)
    emb = ff_embed(K, M)
    for a in K.elements():
        assert emb.preimage(emb(a)) == a
        for b in K.elements():
            assert emb(K.mul(a, b)) == M.mul(emb(a), emb(b))
            assert emb(K.add(a, b)) == M.add(emb(a), emb(b))


def test_embeddings_commute():
    F3, F9, F81 = ff_make(3), ff_make(3, 2), ff_make(3, 4)
    e1, e2, e3 = ff_embed(F3, F9), ff_embed(F9, F81), ff_embed(F3, F81)
    for a in F3.elements():
        assert e2(e1(a)) == e3(a)
    # the image of F_9 is the fixed field of Frobenius squared
    img = {e2(a) for a in F9.elements()}
    assert img == {b for b in F81.elements() if F81.frobenius(b, 2) == b}


def test_embedding_rejects_non_subfield():
    with pytest.raises(InvalidInput):
        ff_embed(ff_make(3, 2), ff_make(3, 3))
    M = ff_make(3, 2)
    emb = ff_embed(ff_make(3), M)
    outside = next(b for b in M.elements() if not emb.contains(b))
    with pytest.raises(InvalidInput):
        emb.preimage(outside)


@pytest.mark.parametrize("q,n", [(13, 3), (13, 4), (7, 6), (9, 8), (5, 4)])
def test_root_of_unity(q, n):
    F = ff_make(*{13: (13, 1), 7: (7, 1), 9: (3, 2), 5: (5, 1)}[q])
    z = ff_root_of_unity(F, n)
    assert F.order_of(z) == n
    assert ff_power_class(F, z, n) == (F.q - 1) // n % n


def test_root_of_unity_requires_divisibility():
    with pytest.raises(InvalidInput):
        ff_root_of_unity(ff_make(7), 4)


@pytest.mark.parametrize("p,e", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_squares_and_sqrt(p, e):
    F = ff_make(p, e)
    squares = {F.mul(a, a) for a in F.elements() if a}
    for a in F.elements():
        if a:
            assert F.is_square(a) == (a in squares)
            if F.is_square(a):
                r = F.sqrt(a)
                assert F.mul(r, r) == a


@pytest.mark.parametrize("sub,sup", [((3, 1), (3, 2)), ((3, 1), (3, 4)), ((5, 1), (5, 2)), ((2, 2), (2, 4))])
def test_norm_solve(sub, sup):
    K, M = ff_make(*sub), ff_make(*sup)
    emb = ff_embed(K, M)
    for lam in K.elements():
        if lam:
            a = ff_norm_solve(K, M, lam)
            assert ff_norm(K, M, a) == emb(lam)


def test_normal_element_spans():
    K, M = ff_make(3), ff_make(3, 3)
    a = ff_normal_element(K, M)
    conj = [a, M.frobenius(a), M.frobenius(a, 2)]
    # the conjugates are linearly independent over F_3
    combos = {M.add(M.add(M.mul(x, conj[0]), M.mul(y, conj[1])), M.mul(z, conj[2]))
              for x in range(3) for y in range(3) for z in range(3)}
    assert len(combos) == 27


def test_small_field_oracles():
    F3, F9, F5, F13 = ff_make(3), ff_make(3, 2), ff_make(5), ff_make(13)
    assert list(F3.elements()) == [0, 1, 2] and F3.gen == 2
    assert F9.frobenius(F9.gen, 2) == F9.gen != F9.frobenius(F9.gen)
    assert F5.order_of(2) == 4
    assert ff_root_of_unity(F13, 3) == 3
    assert ff_power_class(F5, 1, 4) == 0
    assert ff_power_class(F5, 2, 4) == 1
    assert ff_power_class(F13, 4, 3) != 0
    a = ff_norm_solve(F3, F9, 2)
    assert F9.order_of(a) == 8
    assert ff_norm_solve(F3, F9, 1) == 1
