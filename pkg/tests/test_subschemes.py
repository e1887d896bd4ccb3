import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relpatch import matrices as mx
from relpatch.errors import (
    NotARelativeRoot,
    NotInLevi,
    NotInUnipotent,
    OppositeRay,
    RankMismatch,
    SameRoot,
)
from relpatch.groups import SL, Sp
from relpatch.polys import MPoly, symbols
from relpatch.subschemes import RelRootWord, borel_context, get_context

a, b, c = (MPoly.var(n) for n in "abc")
SL3 = borel_context(SL(3))
SL4_BLOCK = get_context(SL(4), (1,))
SP4_BC1 = get_context(Sp(4), (0,))


def _block(ctx, m):
    # upper-right 2x2 block of an SL4 (2,2) element
    return ((m[0][2], m[0][3]), (m[1][2], m[1][3]))


def _block_of_coords(ctx, u):
    return _block(ctx, ctx.X((1,), u))


def test_single_root_fiber():
    assert SL3.X((1, 0), (a,)) == mx.mat_add(mx.identity(3), mx.unit(3, 0, 1, a))


def test_block_subscheme_fills_the_block():
    u = (Fraction(1), Fraction(2), Fraction(3), Fraction(4))
    m = SL4_BLOCK.X((1,), u)
    assert {m[i][j] for i in (0, 1) for j in (2, 3)} == set(u)
    lower_left = [m[i][j] for i in (2, 3) for j in (0, 1)]
    assert all(x == 0 for x in lower_left)
    assert mx.mat_eq(tuple(tuple(m[i][j] for j in (0, 1)) for i in (0, 1)), mx.identity(2))


def test_sp4_short_root_product():
    m = SP4_BC1.X((1,), (a, b))
    G = SP4_BC1.group
    rs = G.root_system
    r1, r2 = (next(r for r in rs.roots if rs.simple_coords(r) == k) for k in ((1, 0), (1, 1)))
    assert mx.mat_eq(m, mx.mat_mul(G.x(r1, a), G.x(r2, b)))
    quadratic = [x for x in mx.entries(m) if isinstance(x, MPoly) and not x.is_constant()
                 and any(sum(e for _, e in mono) == 2 for mono in x.terms)]
    assert len(quadratic) == 1


def test_extract_sl3_upper_unipotent():
    g = ((1, a, c), (0, 1, b), (0, 0, 1))
    coords = SL3.extract_coordinates(SL3.datum.positive, g)
    assert coords == [((1, 0), (a,)), ((0, 1), (b,)), ((1, 1), (c - a * b,))]


def test_extract_identity_and_single_factor():
    coords = SL3.extract_coordinates(SL3.datum.positive, mx.identity(3))
    assert all(not any(u) for _, u in coords)
    v = symbols("v", 2)
    coords = SP4_BC1.extract_coordinates([(1,), (2,)], SP4_BC1.X((1,), v))
    assert coords == [((1,), v), ((2,), (0,))]


def test_extract_rejects_non_unipotent():
    with pytest.raises(NotInUnipotent):
        SL3.extract_coordinates(SL3.datum.positive, SL3.X((-1, 0), (1,)))


def test_q_tables():
    assert SL3.derive_q((1, 0)) == {}
    assert SL4_BLOCK.derive_q((1,)) == {}
    q = SP4_BC1.derive_q((1,))
    assert set(q) == {2}
    (q2,) = q[2]
    assert q2.is_homogeneous({"v1", "v2", "w1", "w2"}, 2)
    assert q2.subs({"v1": 0, "v2": 1, "w1": 1, "w2": 0}) == -2
    assert q2.subs({"v1": 3, "v2": 5, "w1": 0, "w2": 0}) == 0


def test_sum_formula_sp4():
    rng = random.Random(5)
    (q2,) = SP4_BC1.derive_q((1,))[2]
    for _ in range(50):
        v = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
        w = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
        lhs = mx.mat_mul(SP4_BC1.X((1,), v), SP4_BC1.X((1,), w))
        vals = {"v1": v[0], "v2": v[1], "w1": w[0], "w2": w[1]}
        vw = tuple(x + y for x, y in zip(v, w))
        rhs = mx.mat_mul(SP4_BC1.X((1,), vw), SP4_BC1.X((2,), (q2.subs(vals),)))
        assert mx.mat_eq(lhs, rhs)


def test_n_tables():
    N = SL3.derive_N((1, 0), (0, 1))
    assert N == {(1, 1): (MPoly.var("u1") * MPoly.var("v1"),)}
    assert SL3.derive_N((1, 0), (1, 1)) == {}
    assert SP4_BC1.derive_N((1,), (2,)) == {}
    with pytest.raises(SameRoot):
        SP4_BC1.derive_N((1,), (1,))
    with pytest.raises(OppositeRay):
        SP4_BC1.derive_N((1,), (-2,))


def test_commutator_formula_sl3():
    u, v = Fraction(2, 3), Fraction(-5, 7)
    x, y = SL3.X((1, 0), (u,)), SL3.X((0, 1), (v,))
    comm = mx.mat_mul(mx.mat_mul(x, y), mx.mat_mul(mx.mat_inverse(x), mx.mat_inverse(y)))
    assert mx.mat_eq(comm, SL3.X((1, 1), (u * v,)))


def test_conj_phi_identity():
    phi = SL4_BLOCK.conj_phi(mx.identity(4), (1,))
    assert phi == {1: symbols("v", 4)}


def test_conj_phi_block_diagonal():
    A = ((1, 2), (1, 3))
    B = ((2, 1), (1, 1))
    g = ((1, 2, 0, 0), (1, 3, 0, 0), (0, 0, 2, 1), (0, 0, 1, 1))
    rng = random.Random(2)
    (phi1,) = SL4_BLOCK.conj_phi(g, (1,)).values()
    for _ in range(10):
        u = tuple(Fraction(rng.randint(-9, 9)) for _ in range(4))
        image = tuple(p.subs({f"v{k + 1}": x for k, x in enumerate(u)}) for p in phi1)
        expected = mx.mat_mul(A, mx.mat_mul(_block_of_coords(SL4_BLOCK, u), mx.mat_inverse(B)))
        assert mx.mat_eq(_block_of_coords(SL4_BLOCK, image), expected)


def test_conj_phi_torus():
    s = mx.diag([2, 1, 1, Fraction(1, 2)])
    (phi1,) = SL4_BLOCK.conj_phi(s, (1,)).values()
    v = symbols("v", 4)
    # weights of the fiber entries (1,2), (0,2), (1,3), (0,3) under s
    assert phi1 == (v[0], v[1] * 2, v[2] * 2, v[3] * 4)


def test_conj_phi_rejects_non_levi():
    with pytest.raises(NotInLevi):
        SL4_BLOCK.conj_phi(SL4_BLOCK.X((1,), (1, 0, 0, 0)), (1,))


def test_errors():
    with pytest.raises(NotARelativeRoot):
        SL3.X((2, 0), (1,))
    with pytest.raises(RankMismatch):
        SL4_BLOCK.X((1,), (1, 2))


def test_ep_eval():
    assert mx.is_identity(SL3.ep_eval(RelRootWord()))
    assert SL3.ep_eval(RelRootWord((((1, 0), (a,)),))) == SL3.X((1, 0), (a,))
    sl2 = borel_context(SL(2))
    w = RelRootWord((((1,), (1,)), ((-1,), (-1,)), ((1,), (1,))))
    assert sl2.ep_eval(w) == ((0, 1), (-1, 0))
    assert mx.is_identity(mx.mat_mul(sl2.ep_eval(w), sl2.ep_eval(w.inverse())))


def test_ep_generators_describe_both_unipotents():
    gens = SP4_BC1.ep_generators()["generators"]
    assert [g["root"] for g in gens] == [[-2], [-1], [1], [2]]
    assert [g["rank"] for g in gens] == [1, 2, 2, 1]


_frac = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@settings(max_examples=60, deadline=None)
@given(st.lists(_frac, min_size=8, max_size=8))
def test_roundtrip_sp4_borel(values):
    ctx = borel_context(Sp(4))
    it = iter(values)
    factors = [(r, (next(it),)) for r in ctx.peel_order(ctx.datum.positive)]
    g = ctx.ep_eval(RelRootWord(tuple(factors)))
    coords = ctx.extract_coordinates(ctx.datum.positive, g)
    assert [(r, tuple(u)) for r, u in coords] == factors
