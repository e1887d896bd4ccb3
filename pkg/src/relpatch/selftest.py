"""Acceptance checks shared by the test suite and ``relpatch selftest``.

Every check is exact and seeded; the report contains counts and SHA-256
digests of the produced objects but no timings, so identical seeds give
byte-identical reports.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

import sympy

from . import matrices as mx
from .dvr import decompose_GK, field_elementary_word, iwasawa_decompose, local_integers
from .factorization import SubringPair, factor_ep_word, verify_factorization
from .groups import SL, Sp, gl_unipotent_mask, unipotent_shape_membership
from .patching import PatchingDatum, trivialize_cocycle, verify_trivialization
from .polys import MPoly, symbols
from .relroots import relative_projection
from .rings import ZZ, FractionRing, Integers, PolyPID, Rationals, RestrictedRationals, UnivariatePolynomials
from .roots import DiagramAutomorphism, build_root_system
from .scalars import RatFunc, UPoly
from .serialize import dumps, encode_matrix, encode_word
from .subschemes import RelRootWord, borel_context, get_context, opposite_rays

T = RatFunc(UPoly([0, 1]))
T_MINUS_1 = RatFunc(UPoly([-1, 1]))


def structure_contexts():
    return [
        ("SL3 Borel", get_context(SL(3), (0, 1))),
        ("SL4 (2,2)", get_context(SL(4), (1,))),
        ("Sp4 BC1", get_context(Sp(4), (0,))),
    ]


class _Digest:
    def __init__(self):
        self._h = hashlib.sha256()

    def add(self, obj) -> None:
        self._h.update(dumps(obj).encode())

    def hexdigest(self) -> str:
        return self._h.hexdigest()


def _rand_q(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def _rand_qt(rng: random.Random) -> RatFunc:
    return RatFunc(UPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]))


def _vec(rng, n, gen=_rand_q):
    return tuple(gen(rng) for _ in range(n))


def _result(k: int, name: str, passed: bool, **details) -> dict:
    return {"id": k, "name": name, "passed": bool(passed), "details": details}


# -- 1: relative roots ------------------------------------------------------------


def _oracle_projection(type_, rank, J, orbits):
    """Brute force: solve for simple coordinates with sympy, then apply the quotient."""
    rs = build_root_system(type_, rank)
    S = sympy.Matrix([list(s) for s in rs.simple_roots]).T
    Q = sympy.Matrix([[1 if i in orb else 0 for i in range(rank)] for orb in orbits])
    fibers: dict = {}
    for r in rs.roots:
        sol = S.gauss_jordan_solve(sympy.Matrix(list(r)))[0]
        image = tuple(int(c) for c in (Q * sol))
        if any(image):
            fibers[image] = fibers.get(image, 0) + 1
    return fibers


def criterion_1(seed: int = 0, trials: int | None = None) -> dict:
    flip = DiagramAutomorphism((2, 1, 0))
    cases = [
        ("A", 3, (1,), (), {(1,): 4, (-1,): 4}),
        ("C", 2, (0,), (), {(1,): 2, (-1,): 2, (2,): 1, (-2,): 1}),
        ("A", 3, (0, 2), (flip,), {(1,): 4, (-1,): 4, (2,): 1, (-2,): 1}),
    ]
    ok = True
    rows = []
    for type_, rank, J, gamma, expected in cases:
        datum = relative_projection(build_root_system(type_, rank), J, gamma)
        got = {a: len(datum.fiber(a)) for a in datum.relative_roots}
        oracle = _oracle_projection(type_, rank, J, datum.orbits)
        ok &= got == expected == oracle
        rows.append({"system": f"{type_}{rank}", "J": list(J), "size": len(got),
                     "fibers": {str(list(a)): n for a, n in sorted(got.items())}})
    return _result(1, "relative root enumeration", ok, cases=rows)


# -- 2: structure maps -----------------------------------------------------------------


def _poly_eval(p, values):
    return p.subs(values) if isinstance(p, MPoly) else p


def _product(ctx, factors):
    m = mx.identity(ctx.group.size)
    for gamma, u in factors:
        m = mx.mat_mul(m, ctx.X(gamma, u))
    return m


def criterion_2(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 100
    rng = random.Random(seed)
    ok = True
    per = {}
    digest = _Digest()
    for name, ctx in structure_contexts():
        roots = ctx.relative_roots
        pairs = [(a, b) for a in roots for b in roots if a != b and not opposite_rays(a, b)]
        checks = 0
        for _ in range(trials):
            a = rng.choice(roots)
            r = ctx.rank(a)
            v, w = _vec(rng, r), _vec(rng, r)
            lhs = mx.mat_mul(ctx.X(a, v), ctx.X(a, w))
            s = tuple(x + y for x, y in zip(v, w))
            rhs = mx.mat_mul(ctx.X(a, s), _product(ctx, ctx.q_product(a, v, w)))
            ok &= mx.mat_eq(lhs, rhs)
            lam = _rand_q(rng) or Fraction(1)
            for i, polys in ctx.derive_q(a).items():
                vals = {f"v{k + 1}": x for k, x in enumerate(v)} | {f"w{k + 1}": x for k, x in enumerate(w)}
                scaled = {k: lam * x for k, x in vals.items()}
                ok &= all(_poly_eval(p, scaled) == lam ** i * _poly_eval(p, vals) for p in polys)
            if pairs:
                alpha, beta = rng.choice(pairs)
                u, v = _vec(rng, ctx.rank(alpha)), _vec(rng, ctx.rank(beta))
                comm = mx.mat_prod([ctx.X(alpha, u), ctx.X(beta, v), ctx.X_inv(alpha, u), ctx.X_inv(beta, v)],
                                   ctx.group.size)
                ok &= mx.mat_eq(comm, _product(ctx, ctx.n_product(alpha, beta, u, v)))
                lam, mu = _rand_q(rng) or Fraction(1), _rand_q(rng) or Fraction(1)
                vals = {f"u{k + 1}": x for k, x in enumerate(u)} | {f"v{k + 1}": x for k, x in enumerate(v)}
                scaled = {k: (lam if k[0] == "u" else mu) * x for k, x in vals.items()}
                for (i, j), polys in ctx.derive_N(alpha, beta).items():
                    ok &= all(_poly_eval(p, scaled) == lam ** i * mu ** j * _poly_eval(p, vals) for p in polys)
            checks += 1
        for a in roots:
            digest.add({str(i): [str(p) for p in ps] for i, ps in ctx.derive_q(a).items()})
        per[name] = checks
    return _result(2, "structure-map derivation", ok, trials=per, tables=digest.hexdigest())


# -- 3: parametrization -------------------------------------------------------------------


def criterion_3(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 100
    rng = random.Random(seed + 3)
    ok = True
    per = {}
    for name, ctx in structure_contexts():
        datum = ctx.datum
        closed = [datum.positive, datum.negative]
        closed += [tuple(tuple(i * c for c in a) for i in datum.multiples(a)) for a in datum.relative_roots]
        for field_name, gen in (("QQ", _rand_q), ("QQ[t]", _rand_qt)):
            for _ in range(trials):
                psi = rng.choice(closed)
                coords = [(a, _vec(rng, ctx.rank(a), gen)) for a in ctx.peel_order(psi)]
                g = _product(ctx, coords)
                ok &= ctx.extract_coordinates(psi, g) == coords
            per[f"{name} / {field_name}"] = trials
    return _result(3, "parametrization isomorphism", ok, trials=per)


# -- 4: S-equivariance ---------------------------------------------------------------------


def criterion_4(seed: int = 0, trials: int | None = None) -> dict:
    ok = True
    checked = 0
    for name, ctx in structure_contexts():
        def torus(sign):
            diag = []
            for p in range(ctx.group.size):
                m = MPoly.const(1)
                for j, c in enumerate(ctx.cocharacters):
                    if c[p]:
                        m = m * MPoly.var(f"s{j + 1}", sign * c[p])
                diag.append(m)
            return mx.diag(diag)

        S, S_inv = torus(1), torus(-1)
        ok &= mx.is_identity(mx.mat_mul(S, S_inv))
        for a in ctx.relative_roots:
            u = symbols("u", ctx.rank(a))
            char = MPoly.const(1)
            for j, e in enumerate(a):
                char = char * MPoly.var(f"s{j + 1}", e) if e else char
            lhs = mx.mat_prod([S, ctx.X(a, u), S_inv], ctx.group.size)
            rhs = ctx.X(a, tuple(char * x for x in u))
            ok &= mx.mat_eq(lhs, rhs)
            checked += 1
    return _result(4, "S-equivariance", ok, roots_checked=checked)


# -- 5: shape containment ----------------------------------------------------------------------


def criterion_5(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 100
    rng = random.Random(seed + 5)
    ok = True
    per = {}
    for name, ctx in (("Sp4 BC1", get_context(Sp(4), (0,))), ("Sp4 Borel", borel_context(Sp(4)))):
        for sign, roots in ((1, ctx.datum.positive), (-1, ctx.datum.negative)):
            mask = gl_unipotent_mask(ctx.cocharacters, sign)
            for _ in range(trials):
                word = [(a, _vec(rng, ctx.rank(a))) for a in (rng.choice(roots) for _ in range(rng.randint(1, 6)))]
                g = _product(ctx, word)
                ok &= unipotent_shape_membership(mask, g) and ctx.group.is_member(g)
            per[f"{name} {'+' if sign > 0 else '-'}"] = trials
    return _result(5, "E_P shape containment", ok, trials=per)


# -- 6: factorization -------------------------------------------------------------------------


def factorization_pairs():
    zz = SubringPair(Integers(), RestrictedRationals([3]), 2)
    qt = SubringPair(UnivariatePolynomials(Rationals()),
                     FractionRing(PolyPID("t"), "allowed", [UPoly([-1, 1])]), T)
    return [("ZZ, ZZ[1/3], h=2", zz, 3), ("QQ[t], QQ[t][1/(t-1)], h=t", qt, T_MINUS_1)]


def factorization_contexts():
    return [
        ("SL2", borel_context(SL(2))),
        ("SL3", borel_context(SL(3))),
        ("Sp4 BC1", get_context(Sp(4), (0,))),
    ]


def random_ah_coefficient(rng, pair: SubringPair, other):
    """n / (h^a other^b) with a <= 4, b <= 2."""
    if pair.A.pid is ZZ:
        num = Fraction(rng.randint(-9, 9))
    else:
        num = RatFunc(UPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))]))
    return num / (pair.h ** rng.randint(0, 4) * other ** rng.randint(0, 2))


def random_word(rng, ctx, coef) -> RelRootWord:
    factors = []
    for _ in range(rng.randint(1, 6)):
        a = rng.choice(ctx.relative_roots)
        factors.append((a, tuple(coef() for _ in range(ctx.rank(a)))))
    return RelRootWord(tuple(factors))


def criterion_6(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 100
    rng = random.Random(seed + 6)
    ok = True
    per = {}
    digest = _Digest()
    for pname, pair, other in factorization_pairs():
        for cname, ctx in factorization_contexts():
            depth = 0
            for _ in range(trials):
                x = random_word(rng, ctx, lambda: random_ah_coefficient(rng, pair, other))
                res = factor_ep_word(pair, ctx, x)
                ok &= verify_factorization(pair, ctx, x, res)
                depth = max([depth] + [s.get("depth", 0) for s in res.transcript])
                digest.add({"y": encode_matrix(res.y), "z": encode_word(res.z)})
            per[f"{cname} / {pname}"] = {"words": trials, "max_depth": depth}
    return _result(6, "factorization", ok, runs=per, outputs=digest.hexdigest())


# -- 7: DVR decomposition ------------------------------------------------------------------------


def random_sl3_dyadic(rng, G=None):
    G = G or SL(3)
    m = mx.identity(3)
    for _ in range(rng.randint(3, 7)):
        r = rng.choice(G.root_system.roots)
        m = mx.mat_mul(m, G.x(r, Fraction(rng.randint(-7, 7), 2 ** rng.randint(0, 3))))
    if rng.random() < 0.5:
        m = mx.mat_mul(m, G.h(rng.choice(G.root_system.simple_roots), Fraction(2) ** rng.randint(-2, 2)))
    return m


def criterion_7(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 100
    rng = random.Random(seed + 7)
    dvr = local_integers(2)
    G = SL(3)
    ctx = borel_context(G)
    ok = True
    digest = _Digest()
    for _ in range(trials):
        x = random_sl3_dyadic(rng, G)
        res = iwasawa_decompose(dvr, G, x)
        ok &= all(p["valuation"] == p["column_min"] for p in res.pivots)
        y, z = decompose_GK(dvr, G, x)
        ok &= mx.mat_eq(mx.mat_mul(y, ctx.ep_eval(z)), x)
        ok &= all(dvr.valuation(c) >= 0 for c in mx.entries(y)) and G.is_member(y)
        digest.add({"y": encode_matrix(y), "z": encode_word(z)})
    w = field_elementary_word(borel_context(SL(2)), mx.diag([Fraction(1, 2), Fraction(2)]))
    ok &= len(w) == 6
    return _result(7, "DVR decomposition", ok, samples=trials, outputs=digest.hexdigest())


# -- 8: patching -----------------------------------------------------------------------------------


def patching_bases():
    return [("ZZ at (2),(3)", ZZ, (2, 3)), ("QQ[t] at (t),(t-1)", PolyPID("t"), (UPoly([0, 1]), UPoly([-1, 1])))]


def random_cocycle(rng, pid, primes, G):
    m = mx.identity(G.size)
    for _ in range(rng.randint(2, 6)):
        r = rng.choice(G.root_system.roots)
        if pid is ZZ:
            c = Fraction(rng.randint(-9, 9), primes[0] ** rng.randint(0, 3) * primes[1] ** rng.randint(0, 2))
        else:
            p0, p1 = RatFunc(primes[0]), RatFunc(primes[1])
            c = RatFunc(UPoly([rng.randint(-3, 3) for _ in range(2)])) / (p0 ** rng.randint(0, 2) * p1 ** rng.randint(0, 2))
        m = mx.mat_mul(m, G.x(r, c))
    return m


def worked_example():
    G = SL(2)
    datum = PatchingDatum(ZZ, (2, 3), 0, G, ((1, Fraction(1, 6)), (0, 1)))
    return datum, trivialize_cocycle(datum)


def criterion_8(seed: int = 0, trials: int | None = None) -> dict:
    trials = trials or 50
    rng = random.Random(seed + 8)
    G = SL(3)
    ok = True
    per = {}
    digest = _Digest()
    for name, pid, primes in patching_bases():
        for _ in range(trials):
            x = random_cocycle(rng, pid, primes, G)
            datum = PatchingDatum(pid, primes, 0, G, x)
            t = trivialize_cocycle(datum)
            ok &= verify_trivialization(datum, t)
            digest.add({"g1": encode_matrix(t.g1), "g2": encode_word(t.g2)})
        per[name] = trials
    datum, t = worked_example()
    pinned = (mx.mat_eq(t.g1, ((1, Fraction(-4, 3)), (0, 1)))
              and t.g2 == RelRootWord((((1,), (Fraction(3, 2),)),)))
    ok &= pinned and verify_trivialization(datum, t)
    example = {"g1": encode_matrix(t.g1), "g2": encode_word(t.g2)}
    return _result(8, "end-to-end patching", ok, cocycles=per, worked_example=example,
                   outputs=digest.hexdigest())


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def run_selftest(seed: int = 0, trials: int | None = None, only=None) -> dict:
    ids = sorted(only) if only else sorted(CRITERIA)
    results = [CRITERIA[k](seed, trials) for k in ids]
    return {"seed": seed, "trials": trials, "criteria": results,
            "passed": all(r["passed"] for r in results)}


def criterion_9(seed: int = 0, trials: int | None = None) -> dict:
    first = dumps(run_selftest(seed, trials))
    second = dumps(run_selftest(seed, trials))
    return _result(9, "determinism", first == second,
                   digest=hashlib.sha256(first.encode()).hexdigest())
