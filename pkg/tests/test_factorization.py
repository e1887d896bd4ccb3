import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relpatch import matrices as mx
from relpatch.errors import NonProperParabolic
from relpatch.factorization import (
    SubringPair,
    conjugation_clearance,
    factor_ep_word,
    split_coefficient,
    verify_factorization,
)
from relpatch.groups import SL, Sp
from relpatch.polys import MPoly
from relpatch.rings import Integers, RestrictedRationals
from relpatch.selftest import factorization_pairs, random_ah_coefficient, random_word
from relpatch.subschemes import RelRootWord, borel_context, get_context

ZZ_PAIR = SubringPair(Integers(), RestrictedRationals([3]), 2)
SL2 = borel_context(SL(2))


def _word(*factors):
    return RelRootWord(tuple((root, tuple(Fraction(c) for c in u)) for root, u in factors))


def test_split_worked_example():
    a, b, M = split_coefficient(ZZ_PAIR, (Fraction(1, 6),), 1)
    assert (a, b, M) == ((Fraction(-2, 3),), (3,), 1)
    assert a[0] * 2 + Fraction(b[0], 2 ** M) == Fraction(1, 6)


@pytest.mark.parametrize("c", [Fraction(5, 2), Fraction(1, 3), Fraction(0), Fraction(-7, 96)])
def test_split_identity(c):
    for N in (1, 2, 3):
        (a,), (b,), M = split_coefficient(ZZ_PAIR, (c,), N)
        assert a * 2 ** N + b / Fraction(2) ** M == c
        assert ZZ_PAIR.A.contains(a) and ZZ_PAIR.B.contains(b)
    if c == Fraction(1, 3):
        assert split_coefficient(ZZ_PAIR, (c,), 1)[2] == 0


@given(st.integers(-500, 500), st.integers(0, 5), st.integers(0, 5), st.integers(1, 4))
def test_split_identity_property(num, e2, e3, N):
    c = Fraction(num, 2 ** e2 * 3 ** e3)
    (a,), (b,), M = split_coefficient(ZZ_PAIR, (c,), N)
    assert a * 2 ** N + b / Fraction(2) ** M == c
    assert ZZ_PAIR.A.contains(a) and ZZ_PAIR.B.contains(b)
    # M is the exact 2-adic denominator exponent of c
    expected = max(0, e2 - _v2(num)) if num else 0
    assert M == expected


def _v2(n):
    k = 0
    while n and n % 2 == 0:
        n //= 2
        k += 1
    return k


def test_clearance_examples():
    z = _word(((-1,), (Fraction(1, 2),)))
    assert conjugation_clearance(ZZ_PAIR, SL2, z, (1,), 0) == 2
    assert conjugation_clearance(ZZ_PAIR, SL2, RelRootWord(), (1,), 0) == 0
    assert conjugation_clearance(ZZ_PAIR, SL2, _word(((-1,), (5,))), (1,), 0) == 0


def _rescaled_conjugate(ctx, z, beta, i, scale):
    Z = MPoly.var("Z")
    e = [0] * ctx.rank(beta)
    e[i] = Z * scale
    zm = ctx.ep_eval(z)
    return mx.mat_mul(zm, mx.mat_mul(ctx.X(beta, tuple(e)), mx.mat_inverse(zm)))


@pytest.mark.parametrize("ctx", [SL2, borel_context(SL(3)), get_context(Sp(4), (0,))],
                         ids=["SL2", "SL3", "Sp4"])
def test_clearance_rescaling_identity(ctx):
    rng = random.Random(11)
    for _ in range(15):
        z = random_word(rng, ctx, lambda: Fraction(rng.randint(-5, 5), 2 ** rng.randint(0, 3)))
        beta = rng.choice(ctx.relative_roots)
        for i in range(ctx.rank(beta)):
            N = conjugation_clearance(ZZ_PAIR, ctx, z, beta, i)
            m = _rescaled_conjugate(ctx, z, beta, i, Fraction(2) ** N)
            for entry in mx.entries(m):
                p = MPoly.coerce(entry)
                assert all(ZZ_PAIR.A.contains(c) for c in p.terms.values())
            at_zero = mx.mat_map(lambda x: MPoly.coerce(x).subs({"Z": 0}), m)
            assert mx.is_identity(at_zero)
            if N > 0:
                # minimality: one fewer power of h leaves a denominator
                m = _rescaled_conjugate(ctx, z, beta, i, Fraction(2) ** (N - 1))
                assert not all(ZZ_PAIR.A.contains(c) for x in mx.entries(m)
                               for c in MPoly.coerce(x).terms.values())


def test_factor_trivial_cases():
    over_bh = _word(((1,), (Fraction(5, 2),)))
    r = factor_ep_word(ZZ_PAIR, SL2, over_bh)
    assert mx.is_identity(r.y) and r.z == over_bh
    over_a = _word(((1,), (Fraction(1, 3),)))
    r = factor_ep_word(ZZ_PAIR, SL2, over_a)
    assert r.y == SL2.X((1,), (Fraction(1, 3),)) and len(r.z) == 0


def test_factor_sl2_worked_example():
    x = _word(((-1,), (3,)), ((1,), (Fraction(5, 6),)))
    r = factor_ep_word(ZZ_PAIR, SL2, x)
    assert verify_factorization(ZZ_PAIR, SL2, x, r)
    # regression pin for the deterministic algorithm
    assert r.y == ((1, Fraction(-2, 3)), (3, -1))
    assert r.z == _word(((1,), (Fraction(3, 2),)))


def test_verify_rejects_tampering():
    x = _word(((-1,), (3,)), ((1,), (Fraction(5, 6),)))
    r = factor_ep_word(ZZ_PAIR, SL2, x)
    r.z = _word(((1,), (Fraction(1, 2),)))
    assert not verify_factorization(ZZ_PAIR, SL2, x, r)


def test_degenerate_pair():
    pair = SubringPair(Integers(), RestrictedRationals([2]), 2)
    assert pair.degenerate
    x = _word(((1,), (Fraction(1, 8),)))
    r = factor_ep_word(pair, SL2, x)
    assert r.y == SL2.ep_eval(x)


def test_non_proper_parabolic():
    ctx = get_context(SL(2), ())
    with pytest.raises(NonProperParabolic):
        factor_ep_word(ZZ_PAIR, ctx, RelRootWord())


def test_pair_surjectivity_witness():
    assert ZZ_PAIR.check_surjective()


@pytest.mark.parametrize("group,J,words", [
    (SL(2), (0,), 40), (SL(3), (0, 1), 40), (SL(4), (1,), 25), (Sp(4), (0,), 25),
])
def test_random_words_over_integers(group, J, words):
    ctx = get_context(group, J)
    _, pair, other = factorization_pairs()[0]
    rng = random.Random(group.name)
    max_multiple = max(max(ctx.datum.multiples(a)) for a in ctx.relative_roots)
    for _ in range(words):
        x = random_word(rng, ctx, lambda: random_ah_coefficient(rng, pair, other))
        r = factor_ep_word(pair, ctx, x)
        assert verify_factorization(pair, ctx, x, r)
        depth = max([0] + [s.get("depth", 0) for s in r.transcript])
        assert depth <= max_multiple - 1


@pytest.mark.parametrize("group,J,words", [(SL(3), (0, 1), 10), (SL(4), (1,), 4), (Sp(4), (0,), 6)])
def test_random_words_over_polynomials(group, J, words):
    ctx = get_context(group, J)
    _, pair, other = factorization_pairs()[1]
    rng = random.Random(group.name)
    for _ in range(words):
        x = random_word(rng, ctx, lambda: random_ah_coefficient(rng, pair, other))
        r = factor_ep_word(pair, ctx, x)
        assert verify_factorization(pair, ctx, x, r)
