import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpatch.errors import NoEmbedding, NotInRing, NotSurjective, RingMismatch
from relpatch.polys import MPoly
from relpatch.rings import (
    ZZ,
    Integers,
    LaurentPolynomials,
    Localization,
    PolyPID,
    Rationals,
    RationalFunctions,
    Residue,
    RestrictedRationals,
    RingElement,
    SemilocalPolynomials,
    UnivariatePolynomials,
    denom_exponent,
    embed,
    residue_lift,
    substitute,
)
from relpatch.scalars import RatFunc, UPoly

T = RatFunc(UPoly([0, 1]))


def _q(rng, primes=(2, 3, 5, 7)):
    den = 1
    for p in primes:
        den *= p ** rng.randint(0, 2)
    return Fraction(rng.randint(-30, 30), den)


def _poly(rng, coef=lambda r: Fraction(r.randint(-5, 5))):
    return RatFunc(UPoly([coef(rng) for _ in range(rng.randint(1, 4))]))


FAMILIES = {
    "ZZ": (Integers(), lambda r: r.randint(-10**6, 10**6)),
    "QQ": (Rationals(), _q),
    "ZZ[1/3]": (RestrictedRationals([3]), lambda r: _q(r, (3,))),
    "ZZ_(2,3)": (RestrictedRationals([2, 3], allowed=False), lambda r: _q(r, (5, 7))),
    "ZZ[1/3][1/2]": (Localization(RestrictedRationals([3]), 2), lambda r: _q(r, (2, 3))),
    "ZZ/8": (Residue(Integers(), 8), lambda r: r.randint(-100, 100)),
    "QQ[t]": (UnivariatePolynomials(Rationals()), _poly),
    "QQ(t)": (RationalFunctions(), lambda r: _poly(r, _q) * _poly(r).inverse()
              if _poly(r) else _poly(r)),
    "QQ[t]_(t,t-1)": (SemilocalPolynomials([[0, 1], [-1, 1]]),
                     lambda r: _poly(r) * (T + 2 + r.randint(0, 3)).inverse()),
    "QQ[s,1/s]": (LaurentPolynomials(Rationals(), "s"),
                  lambda r: sum((MPoly.var("s", r.randint(-3, 3)) * r.randint(-4, 4)
                                 for _ in range(3)), MPoly())),
}


def _nonzero_qt(rng):
    while True:
        p = _poly(rng)
        if p:
            return p


FAMILIES["QQ(t)"] = (RationalFunctions(), lambda r: _poly(r, _q) * _nonzero_qt(r).inverse())


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_commutative_and_associative_on_1000_triples(family):
    ring, gen = FAMILIES[family]
    rng = random.Random(family)
    for _ in range(1000):
        x, y, z = (RingElement(ring, gen(rng)) for _ in range(3))
        assert (x + y).value == (y + x).value
        assert ((x * y) * z).value == (x * (y * z)).value
        assert (x * (y + z)).value == (x * y + x * z).value
        assert ring.contains((x - y * z).value)


def test_canonical_payload_is_unique():
    a = RingElement(Rationals(), Fraction(2, 4))
    b = RingElement(Rationals(), Fraction(1, 2))
    assert a.value == b.value
    r = RingElement(Residue(Integers(), 8), 13)
    assert r.value == RingElement(Residue(Integers(), 8), -3).value == 5


def test_membership_is_enforced():
    with pytest.raises(NotInRing):
        RingElement(Integers(), Fraction(1, 2))
    with pytest.raises(NotInRing):
        RingElement(RestrictedRationals([2, 3], allowed=False), Fraction(1, 6))
    assert RestrictedRationals([2, 3], allowed=False).contains(Fraction(5, 7))


def test_embed_examples():
    assert embed(RingElement(Integers(), 3), Rationals()).value == 3
    loc = Localization(Integers(), 2)
    assert embed(RingElement(Integers(), 5), loc).value == 5
    third = RingElement(RestrictedRationals([3]), Fraction(1, 3))
    assert embed(third, Rationals()).value == Fraction(1, 3)
    with pytest.raises(NoEmbedding):
        embed(third, Integers())


def test_embed_is_a_homomorphism():
    rng = random.Random(1)
    A = RestrictedRationals([3])
    Ah = Localization(A, 2)
    for _ in range(200):
        x, y = RingElement(A, _q(rng, (3,))), RingElement(A, _q(rng, (3,)))
        assert embed(x + y, Ah) == embed(x, Ah) + embed(y, Ah)
        assert embed(x * y, Ah) == embed(x, Ah) * embed(y, Ah)


def test_denom_exponent_examples():
    ring = Localization(RestrictedRationals([3]), 2)
    assert denom_exponent(Fraction(1, 12), ring) == 2
    assert denom_exponent(7, ring) == 0
    assert denom_exponent(Fraction(1, 2), Localization(Integers(), 2)) == 1


def test_denom_exponent_is_subadditive():
    ring = Localization(RestrictedRationals([3]), 2)
    rng = random.Random(2)
    for _ in range(300):
        x, y = _q(rng, (2, 3)), _q(rng, (2, 3))
        assert denom_exponent(x * y, ring) <= denom_exponent(x, ring) + denom_exponent(y, ring)


def test_denom_exponent_over_polynomials():
    ring = Localization(FAMILIES["QQ[t]_(t,t-1)"][0], T)
    assert denom_exponent(T.inverse() ** 3, ring) == 3


def test_residue_lift_examples():
    A, B = RestrictedRationals([3]), Integers()
    assert residue_lift(Fraction(1, 3), A, 2, 3, B) == 3
    assert residue_lift(0, A, 2, 3, B) == 0


def test_residue_lift_failure():
    # ZZ -> ZZ[x]/2ZZ[x] misses the class of x
    A = UnivariatePolynomials(Integers(), "x")
    with pytest.raises(NotSurjective):
        residue_lift(MPoly.var("x"), A, 2, 1, Integers())


@given(st.integers(-10**4, 10**4), st.integers(0, 6), st.integers(1, 6))
def test_residue_lift_congruence(num, e, k):
    A, B = RestrictedRationals([3]), Integers()
    c = Fraction(num, 3 ** e)
    b = residue_lift(c, A, 2, k, B)
    assert B.contains(b)
    assert A.contains((c - b) / 2 ** k)


def test_residue_lift_over_polynomials():
    B = SemilocalPolynomials([[0, 1], [-1, 1]])
    A = Localization(B, T - 1)
    c = (T + 3).inverse()
    b = residue_lift(c, A, T, 2, B)
    assert A.contains((c - b) / T ** 2)


def test_substitute_examples():
    Z = MPoly.var("Z")
    assert substitute(Z * Z + 1, 2) == 5
    hz = MPoly.var("Z") * 2
    assert substitute(Z, hz) == hz
    assert substitute(Z ** 3 * 3, 0) == 0
    assert substitute(T * T + 1, Fraction(1, 2)) == Fraction(5, 4)
    with pytest.raises(RingMismatch):
        substitute(T.inverse(), 1)


def test_pid_operations():
    pid = PolyPID("t")
    a = UPoly([-1, 0, 1])
    assert pid.gcd(a, UPoly([1, 1])) == UPoly([1, 1])
    assert pid.exquo(a, UPoly([-1, 1])) == UPoly([1, 1])
    assert ZZ.inv_mod(3, 8) == 3
