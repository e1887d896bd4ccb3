import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpatch import matrices as mx
from relpatch.dvr import (
    decompose_GK,
    field_elementary_word,
    iwasawa_decompose,
    local_integers,
    local_polynomials,
)
from relpatch.errors import NotInGroup
from relpatch.groups import SL, Sp
from relpatch.scalars import RatFunc, UPoly
from relpatch.selftest import random_sl3_dyadic
from relpatch.subschemes import RelRootWord, borel_context

AT2 = local_integers(2)
F = Fraction


@given(st.fractions(max_denominator=10**4).filter(bool), st.fractions(max_denominator=10**4).filter(bool))
def test_valuation_is_multiplicative(x, y):
    assert AT2.valuation(x * y) == AT2.valuation(x) + AT2.valuation(y)
    assert AT2.contains(x) == (AT2.valuation(x) >= 0)


def test_valuation_examples():
    assert AT2.valuation(F(12)) == 2
    assert AT2.valuation(F(3, 8)) == -3
    assert AT2.valuation(0) == float("inf")
    t = local_polynomials(UPoly([0, 1]))
    T = RatFunc(UPoly([0, 1]))
    assert t.valuation(T ** 3 / (T + 1)) == 3


def test_iwasawa_integral_input():
    x = ((F(1), F(3)), (F(0), F(1)))
    r = iwasawa_decompose(AT2, SL(2), x)
    assert r.y == x and mx.is_identity(r.t)


def test_iwasawa_triangular_input():
    x = mx.diag([F(1, 2), F(2)])
    r = iwasawa_decompose(AT2, SL(2), x)
    assert mx.is_identity(r.y) and r.t == x


def test_iwasawa_pivot_swap():
    x = ((F(1), F(0)), (F(1, 2), F(1)))
    r = iwasawa_decompose(AT2, SL(2), x)
    assert r.pivots[0]["row"] == 1
    assert mx.mat_eq(mx.mat_mul(r.y, r.t), x)
    assert all(AT2.contains(c) for c in mx.entries(r.y))


def test_iwasawa_random_sl3():
    rng = random.Random(4)
    for _ in range(100):
        x = random_sl3_dyadic(rng)
        r = iwasawa_decompose(AT2, SL(3), x)
        assert mx.mat_eq(mx.mat_mul(r.y, r.t), x)
        assert all(AT2.contains(c) for c in mx.entries(r.y))
        assert all(r.t[i][j] == 0 for i in range(3) for j in range(i))
        for p in r.pivots:
            assert p["valuation"] == p["column_min"]


def test_iwasawa_sp_fallback():
    G = Sp(4)
    x = G.x(G.root_system.roots[0], F(1, 2))
    r = iwasawa_decompose(AT2, G, x)
    assert r.fallback and mx.is_identity(r.y) and r.t == x


def test_field_word_examples():
    ctx = borel_context(SL(2))
    assert field_elementary_word(ctx, mx.identity(2)) == RelRootWord()
    g = mx.diag([F(1, 2), F(2)])
    w = field_elementary_word(ctx, g)
    assert ctx.ep_eval(w) == g
    # h(u) = w(u) w(-1): two Weyl triples
    assert len(w) == 6
    assert [a for a, _ in w.factors] == [(1,), (-1,), (1,)] * 2


@pytest.mark.parametrize("G", [SL(3), Sp(4)], ids=lambda g: g.name)
def test_field_word_random(G):
    ctx = borel_context(G)
    rng = random.Random(9)
    for _ in range(25):
        g = mx.identity(G.size)
        for _ in range(5):
            g = mx.mat_mul(g, G.x(rng.choice(G.root_system.roots), F(rng.randint(-6, 6), rng.randint(1, 6))))
        assert mx.mat_eq(ctx.ep_eval(field_elementary_word(ctx, g)), g)


def test_field_word_rejects_non_members():
    with pytest.raises(NotInGroup):
        field_elementary_word(borel_context(SL(2)), mx.diag([F(2), F(2)]))


def test_decompose_examples():
    G = SL(2)
    x = ((F(1), F(5)), (F(0), F(1)))
    y, z = decompose_GK(AT2, G, x)
    assert y == x and len(z) == 0
    y, z = decompose_GK(AT2, G, ((F(1), F(1, 2)), (F(0), F(1))))
    assert mx.is_identity(y)
    assert z == RelRootWord((((1,), (F(1, 2),)),))


def test_decompose_random_sl3():
    rng = random.Random(7)
    ctx = borel_context(SL(3))
    for _ in range(100):
        x = random_sl3_dyadic(rng)
        y, z = decompose_GK(AT2, SL(3), x)
        assert mx.mat_eq(mx.mat_mul(y, ctx.ep_eval(z)), x)
        assert all(AT2.valuation(c) >= 0 for c in mx.entries(y))


def test_decompose_over_polynomials():
    dvr = local_polynomials(UPoly([0, 1]))
    T = RatFunc(UPoly([0, 1]))
    G = SL(2)
    x = ((RatFunc(1), RatFunc(0)), (T.inverse(), RatFunc(1)))
    y, z = decompose_GK(dvr, G, x)
    assert mx.mat_eq(mx.mat_mul(y, borel_context(G).ep_eval(z)), x)
    assert all(dvr.contains(c) for c in mx.entries(y))
