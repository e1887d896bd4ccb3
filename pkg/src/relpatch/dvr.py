"""G(K) = G(O) * E(K) for split matrix groups over a discrete valuation ring O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import matrices as mx
from .errors import NotInGroup, UnsupportedType
from .groups import GroupDescriptor
from .rings import ZZ, FractionRing, PolyPID, valuation
from .scalars import inv
from .subschemes import RelGroupContext, RelRootWord, borel_context


@dataclass(frozen=True, eq=False)
class DvrContext:
    """The localization of a PID at one prime, with its valuation."""

    pid: object
    prime: object
    O: FractionRing = field(init=False)
    K: FractionRing = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "O", FractionRing(self.pid, "forbidden", (self.prime,)))
        object.__setattr__(self, "K", FractionRing(self.pid, "all", ()))
        if self.O.mode != "forbidden" or len(self.O.gens) != 1:
            raise UnsupportedType(f"{self.prime!r} does not define a discrete valuation ring")

    @property
    def uniformizer(self):
        return self.pid.to_field(self.O.gens[0])

    def valuation(self, x) -> float | int:
        """v(x), with v(0) = +inf."""
        x = self.pid.to_field(x)
        if x == 0:
            return float("inf")
        return valuation(x, self.O.gens[0], self.pid)

    def contains(self, x) -> bool:
        return self.O.contains(x)


def local_integers(p: int) -> DvrContext:
    return DvrContext(ZZ, p)


def local_polynomials(irreducible, var: str = "t") -> DvrContext:
    return DvrContext(PolyPID(var), irreducible)


@dataclass
class IwasawaResult:
    y: tuple
    t: tuple
    pivots: list = field(default_factory=list)
    fallback: bool = False


def _in_O(dvr: DvrContext, m) -> bool:
    return all(dvr.contains(x) for x in mx.entries(m))


def iwasawa_decompose(dvr: DvrContext, G: GroupDescriptor, x) -> IwasawaResult:
    """x = y t with y in G(O) and t upper triangular (SL); Sp keeps y = 1."""
    x = mx.as_matrix(x)
    if not G.is_member(x):
        raise NotInGroup(f"matrix is not in {G.name}")
    n = G.size
    if _in_O(dvr, x):
        return IwasawaResult(x, mx.identity(n))
    if G.family != "SL":
        return IwasawaResult(mx.identity(n), x, fallback=True)
    work = [list(r) for r in x]
    y = [list(r) for r in mx.identity(n)]
    pivots = []
    for j in range(n):
        vals = [(dvr.valuation(work[i][j]), i) for i in range(j, n)]
        v, p = min(vals)
        pivots.append({"column": j, "row": p, "valuation": v,
                       "column_min": min(a for a, _ in vals)})
        if p != j:
            # signed swap keeps the determinant; y absorbs its inverse
            work[j], work[p] = work[p], [-c for c in work[j]]
            for r in y:
                r[j], r[p] = r[p], -r[j]
        for i in range(j + 1, n):
            if work[i][j] != 0:
                m = work[i][j] / work[j][j]
                if not dvr.contains(m):
                    raise AssertionError("elimination multiplier left O")
                work[i] = [a - m * b for a, b in zip(work[i], work[j])]
                for r in y:
                    r[j] = r[j] + m * r[i]
    y, t = mx.as_matrix(y), mx.as_matrix(work)
    if not mx.mat_eq(mx.mat_mul(y, t), x) or not _in_O(dvr, y):
        raise AssertionError("elimination did not reproduce x")
    return IwasawaResult(y, t, pivots)


def _weyl_letters(ctx: RelGroupContext, root, u) -> list:
    """w_root(u) = x_root(u) x_-root(-1/u) x_root(u) as word factors."""
    neg = tuple(-c for c in root)
    return [ctx.root_factor(root, u), ctx.root_factor(neg, -inv(u)), ctx.root_factor(root, u)]


def _ldu(a):
    n = len(a)
    work = [list(r) for r in a]
    lower = [list(r) for r in mx.identity(n)]
    for k in range(n):
        p = work[k][k]
        if p == 0:
            return None
        for i in range(k + 1, n):
            if work[i][k] != 0:
                m = work[i][k] / p
                lower[i][k] = m
                work[i] = [x - m * y for x, y in zip(work[i], work[k])]
    d = [work[k][k] for k in range(n)]
    upper = [[work[i][j] * inv(d[i]) for j in range(n)] for i in range(n)]
    return mx.as_matrix(lower), d, mx.as_matrix(upper)


def _torus_exponents(G: GroupDescriptor) -> tuple:
    """Integer matrix solving diag(d) = prod_i h_{alpha_i}(u_i) for u in terms of d."""
    rs = G.root_system
    k = [[G.coroot(a)[p][p] for a in rs.simple_roots] for p in range(rs.rank)]
    solved = mx.mat_inverse(mx.as_matrix([[Fraction(c) for c in row] for row in k]))
    if any(c.denominator != 1 for c in mx.entries(solved)):
        raise AssertionError("coroots do not span the cocharacter lattice")
    return tuple(tuple(int(c) for c in row) for row in solved)


def _power(x, e: int):
    return x ** e if e >= 0 else inv(x) ** (-e)


def torus_word(ctx: RelGroupContext, d) -> list:
    """Factors for diag(d) as prod_i h_{alpha_i}(u_i), each h = w(u) w(-1)."""
    G = ctx.group
    rs = G.root_system
    exps = _torus_exponents(G)
    letters = []
    target = mx.identity(G.size)
    for i, a in enumerate(rs.simple_roots):
        u = 1
        for p in range(rs.rank):
            u = u * _power(d[p], exps[i][p])
        if u != 1:
            letters += _weyl_letters(ctx, a, u) + _weyl_letters(ctx, a, -1)
            target = mx.mat_mul(target, G.h(a, u))
    if not mx.mat_eq(target, mx.diag(d)):
        raise AssertionError("torus factorization failed")
    return letters


def _weyl_search(ctx: RelGroupContext, g):
    """Shortest product n of w_{alpha_i}(1) such that n^-1 g has an LDU factorization."""
    G = ctx.group
    simple = G.root_system.simple_roots
    start = ((), mx.identity(G.size))
    queue = deque([start])
    seen = {start[1]}
    while queue:
        word, n_inv = queue.popleft()
        parts = _ldu(mx.mat_mul(n_inv, g))
        if parts is not None:
            return word, parts
        for a in simple:
            # (n w)^-1 = w^-1 n^-1 with w_a(1)^-1 = w_a(-1)
            nxt = mx.mat_mul(G.w(a, -1), n_inv)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((word + (a,), nxt))
    raise NotInGroup("no Bruhat cell found for the element")


def field_elementary_word(ctx: RelGroupContext, g) -> RelRootWord:
    """A word over the field with ep_eval(word) = g (ctx must be a Borel context)."""
    G = ctx.group
    g = mx.as_matrix(g)
    if not G.is_member(g):
        raise NotInGroup(f"matrix is not in {G.name}")
    if mx.is_identity(g):
        return RelRootWord()
    weyl, (lower, d, upper) = _weyl_search(ctx, g)
    factors = []
    for a in weyl:
        factors += _weyl_letters(ctx, a, 1)
    for alpha, u in ctx.extract_coordinates(ctx.datum.negative, lower):
        if any(u):
            factors.append((alpha, u))
    factors += torus_word(ctx, d)
    for alpha, u in ctx.extract_coordinates(ctx.datum.positive, upper):
        if any(u):
            factors.append((alpha, u))
    word = RelRootWord(tuple(factors))
    if not mx.mat_eq(ctx.ep_eval(word), g):
        raise AssertionError("elementary word does not reproduce g")
    return word


def decompose_GK(dvr: DvrContext, G: GroupDescriptor, x):
    """(y, z) with x = y ep_eval(z), y in G(O), z over K."""
    res = iwasawa_decompose(dvr, G, x)
    ctx = borel_context(G)
    z = field_elementary_word(ctx, res.t)
    if not mx.mat_eq(mx.mat_mul(res.y, ctx.ep_eval(z)), mx.as_matrix(x)) or not _in_O(dvr, res.y):
        raise AssertionError("decomposition failed its check")
    return res.y, z
