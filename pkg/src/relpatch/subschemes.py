"""Relative root subschemes X_alpha for split matrix groups and the machine
derivation of their structure maps (sum formula, commutator formula,
Levi conjugation), plus the coordinate extraction that inverts X_Psi.

Convention: X_alpha(u) is the product of x_delta(u_delta) over the fiber
pi^{-1}(alpha) in the fixed root order, with no higher correction terms.
All fiber roots share the torus weight alpha, so this choice is equivariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import matrices as mx
from .errors import (
    NotARelativeRoot,
    NotInLevi,
    NotInUnipotent,
    OppositeRay,
    RankMismatch,
    SameRoot,
    UnsupportedType,
)
from .groups import GroupDescriptor, parabolic_from_torus, shape_membership, weight_decomposition
from .polys import MPoly, symbols
from .relroots import RelRoot, relative_projection
from .roots import Root


def _scale(i: int, a) -> RelRoot:
    return tuple(i * c for c in a)


def _add(a, b) -> RelRoot:
    return tuple(x + y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def opposite_rays(a, b) -> bool:
    """True when m*a = -k*b for some m, k >= 1."""
    dependent = all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a)))
    return dependent and _dot(a, b) < 0


@dataclass(frozen=True)
class RelRootWord:
    """Formal product of X_alpha(u) factors, left to right."""

    factors: tuple = ()

    def __add__(self, other: "RelRootWord") -> "RelRootWord":
        return RelRootWord(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def append(self, alpha, u) -> "RelRootWord":
        return RelRootWord(self.factors + ((tuple(alpha), tuple(u)),))

    def inverse(self) -> "RelRootWord":
        """Word for the inverse: each X_alpha(u) splits into single-root factors."""
        out = []
        for alpha, u in reversed(self.factors):
            for k in range(len(u) - 1, -1, -1):
                if u[k] != 0:
                    out.append((alpha, tuple(-u[k] if j == k else 0 for j in range(len(u)))))
        return RelRootWord(tuple(out))

    def coefficients(self):
        for _, u in self.factors:
            yield from u


class RelGroupContext:
    """A split group G with the parabolic P given by J (Gamma trivial).

    The relative roots are realized by the adjoint torus S whose cocharacters
    are the fundamental coweights of J; weights of every root vector under S
    are checked against the combinatorial projection at construction.
    """

    def __init__(self, group: GroupDescriptor, J: Iterable[int]):
        self.group = group
        self.datum = relative_projection(group.root_system, J)
        self.cocharacters = self._cocharacters()
        self.torus = weight_decomposition(group, self.cocharacters)
        for r in group.root_system.roots:
            if self.torus.root_weight(r) != self.datum.project(r):
                raise AssertionError(f"torus weight of {r} disagrees with pi")
        self.shape = parabolic_from_torus(self.torus)
        self.basis = {a: self.datum.fiber(a, 1) for a in self.datum.relative_roots}
        self._designated = {}
        for r in group.root_system.roots:
            p, q = group.root_support(r)[0]
            val = group.e(r)[p][q]
            if val not in (1, -1):
                raise AssertionError("designated entry is not a unit")
            self._designated[r] = (p, q, val)
        self._q_cache: dict = {}
        self._n_cache: dict = {}

    def __repr__(self) -> str:
        return f"RelGroupContext({self.group.name}, J={self.datum.J})"

    @property
    def relative_roots(self) -> tuple:
        return self.datum.relative_roots

    def rank(self, alpha) -> int:
        return len(self.basis[self._check(alpha)])

    def _check(self, alpha) -> RelRoot:
        alpha = tuple(alpha)
        if alpha not in self.basis:
            raise NotARelativeRoot(f"{alpha} is not a relative root of {self}")
        return alpha

    def _cocharacters(self):
        rs = self.group.root_system
        solver = rs._solver  # inverse of simple roots on the first `rank` coordinates
        out = []
        for orbit in self.datum.orbits:
            if len(orbit) != 1:
                raise UnsupportedType("matrix realizations need a trivial Gamma")
            j = orbit[0]
            c = [solver[k][j] for k in range(rs.rank)] + [Fraction(0)] * (rs.dim - rs.rank)
            weights = [sum(Fraction(w) * x for w, x in zip(wp, c)) for wp in self.group.index_weights]
            shift = weights[0] - (weights[0].numerator // weights[0].denominator)
            ints = [w - shift for w in weights]
            if any(w.denominator != 1 for w in ints):
                raise AssertionError("coweight differences are not integral")
            out.append(tuple(int(w) for w in ints))
        return tuple(out)

    # -- the embeddings X_alpha --------------------------------------------

    def X(self, alpha, u: Sequence):
        alpha = self._check(alpha)
        fib = self.basis[alpha]
        if len(u) != len(fib):
            raise RankMismatch(f"coefficient vector of length {len(u)} for rank {len(fib)}")
        m = mx.identity(self.group.size)
        for r, t in zip(fib, u):
            if t != 0:
                m = mx.mat_mul(m, self.group.x(r, t))
        return m

    def X_inv(self, alpha, u: Sequence):
        alpha = self._check(alpha)
        fib = self.basis[alpha]
        if len(u) != len(fib):
            raise RankMismatch(f"coefficient vector of length {len(u)} for rank {len(fib)}")
        m = mx.identity(self.group.size)
        for r, t in reversed(list(zip(fib, u))):
            if t != 0:
                m = mx.mat_mul(m, self.group.x(r, -t))
        return m

    def ep_eval(self, word: RelRootWord):
        m = mx.identity(self.group.size)
        for alpha, u in word.factors:
            m = mx.mat_mul(m, self.X(alpha, u))
        return m

    def root_factor(self, root: Root, t) -> tuple:
        """x_root(t) written as one X_alpha factor (root must project nonzero)."""
        alpha = self.datum.project(root)
        if alpha not in self.basis:
            raise NotARelativeRoot(f"{root} lies in the Levi subgroup")
        fib = self.basis[alpha]
        return (alpha, tuple(t if r == tuple(root) else 0 for r in fib))

    # -- coordinates -------------------------------------------------------

    def peel_order(self, psi: Iterable) -> list:
        psi = [self._check(a) for a in psi]
        f = _positive_functional(psi, self.datum.rank)
        return sorted(psi, key=lambda a: (_dot(f, a), self.datum.order_key(a)))

    def extract_coordinates(self, psi: Iterable, g) -> list:
        """Coordinates (alpha, u) in peel order with prod X_alpha(u) = g."""
        psi = list(dict.fromkeys(tuple(a) for a in psi))
        if not self.datum.is_closed(psi):
            raise NotInUnipotent(f"{psi} is not closed under addition")
        order = self.peel_order(psi)
        residual = g
        coords = []
        for alpha in order:
            u = []
            for r in self.basis[alpha]:
                p, q, val = self._designated[r]
                u.append(residual[p][q] * val)
            u = tuple(u)
            coords.append((alpha, u))
            residual = mx.mat_mul(self.X_inv(alpha, u), residual)
        if not mx.is_identity(residual):
            raise NotInUnipotent("element is not a product of the given root subschemes")
        return coords

    # -- structure maps ----------------------------------------------------

    def derive_q(self, alpha) -> dict:
        """{i: q^i_alpha(v, w)} as tuples of MPoly in v1.., w1.. ."""
        alpha = self._check(alpha)
        if alpha in self._q_cache:
            return self._q_cache[alpha]
        r = self.rank(alpha)
        v, w = symbols("v", r), symbols("w", r)
        s = tuple(a + b for a, b in zip(v, w))
        M = mx.mat_prod([self.X_inv(alpha, s), self.X(alpha, v), self.X(alpha, w)], self.group.size)
        multiples = [i for i in self.datum.multiples(alpha) if i >= 2]
        coords = self.extract_coordinates([_scale(i, alpha) for i in multiples], M)
        table = {}
        names = [f"v{k + 1}" for k in range(r)] + [f"w{k + 1}" for k in range(r)]
        for gamma, u in coords:
            i = _multiple_of(gamma, alpha)
            for poly in u:
                if isinstance(poly, MPoly) and poly and not poly.is_homogeneous(names, i):
                    raise AssertionError(f"q^{i} is not homogeneous of degree {i}")
            table[i] = u
        self._q_cache[alpha] = table
        return table

    def derive_N(self, alpha, beta) -> dict:
        """{(i, j): N_{alpha beta i j}(u, v)} for the commutator [X_a(u), X_b(v)]."""
        alpha, beta = self._check(alpha), self._check(beta)
        if alpha == beta:
            raise SameRoot("use derive_q for a root with itself")
        if opposite_rays(alpha, beta):
            raise OppositeRay(f"{alpha} and {beta} lie on opposite rays")
        key = (alpha, beta)
        if key in self._n_cache:
            return self._n_cache[key]
        ra, rb = self.rank(alpha), self.rank(beta)
        u, v = symbols("u", ra), symbols("v", rb)
        M = mx.mat_prod(
            [self.X(alpha, u), self.X(beta, v), self.X_inv(alpha, u), self.X_inv(beta, v)],
            self.group.size,
        )
        labels = self.commutator_support(alpha, beta)
        coords = self.extract_coordinates(list(labels), M)
        unames = [f"u{k + 1}" for k in range(ra)]
        vnames = [f"v{k + 1}" for k in range(rb)]
        table = {}
        for gamma, vals in coords:
            i, j = labels[gamma]
            for poly in vals:
                if isinstance(poly, MPoly) and poly:
                    if not (poly.is_homogeneous(unames, i) and poly.is_homogeneous(vnames, j)):
                        raise AssertionError(f"N_{i}{j} is not bihomogeneous")
            table[(i, j)] = vals
        self._n_cache[key] = table
        return table

    def commutator_support(self, alpha, beta) -> dict:
        """{gamma: (i, j)} for gamma = i*alpha + j*beta in Phi_P, i, j >= 1."""
        bound = 2 * max(1, max(abs(c) for r in self.relative_roots for c in r))
        labels: dict = {}
        for i, j in product(range(1, bound + 1), repeat=2):
            gamma = _add(_scale(i, alpha), _scale(j, beta))
            if gamma in self.basis and gamma not in labels:
                labels[gamma] = (i, j)
        return labels

    def conj_phi(self, g, alpha, g_inv=None) -> dict:
        """{i: phi^i_{g,alpha}(v)} for g in the Levi subgroup L."""
        alpha = self._check(alpha)
        if not shape_membership(self.shape.levi, g):
            raise NotInLevi("element is not block-diagonal for this parabolic")
        if g_inv is None:
            g_inv = mx.mat_inverse(g)
        v = symbols("v", self.rank(alpha))
        M = mx.mat_prod([g, self.X(alpha, v), g_inv], self.group.size)
        mults = self.datum.multiples(alpha)
        coords = self.extract_coordinates([_scale(i, alpha) for i in mults], M)
        return {_multiple_of(gamma, alpha): vals for gamma, vals in coords}

    def q_product(self, alpha, v, w) -> list:
        """The factors prod_{i>1} X_{i alpha}(q^i(v, w)) as a list of (root, coeffs)."""
        table = self.derive_q(alpha)
        values = {f"v{k + 1}": x for k, x in enumerate(v)}
        values.update({f"w{k + 1}": x for k, x in enumerate(w)})
        out = []
        for gamma in self.peel_order([_scale(i, alpha) for i in table]):
            i = _multiple_of(gamma, alpha)
            out.append((gamma, tuple(_evaluate(p, values) for p in table[i])))
        return out

    def n_product(self, alpha, beta, u, v) -> list:
        table = self.derive_N(alpha, beta)
        labels = self.commutator_support(alpha, beta)
        values = {f"u{k + 1}": x for k, x in enumerate(u)}
        values.update({f"v{k + 1}": x for k, x in enumerate(v)})
        out = []
        for gamma in self.peel_order(list(labels)):
            out.append((gamma, tuple(_evaluate(p, values) for p in table[labels[gamma]])))
        return out

    def ep_generators(self, ring=None) -> dict:
        return {
            "group": self.group.name,
            "ring": str(ring if ring is not None else self.group.base),
            "generators": [
                {"root": list(a), "rank": len(self.basis[a]), "fiber": [list(r) for r in self.basis[a]]}
                for a in self.relative_roots
            ],
        }


def _evaluate(p, values):
    if isinstance(p, MPoly):
        return p.subs(values)
    return p


def _multiple_of(gamma, alpha) -> int:
    for k, c in enumerate(alpha):
        if c:
            i = gamma[k] // c
            if _scale(i, alpha) == tuple(gamma):
                return i
    raise ValueError(f"{gamma} is not a multiple of {alpha}")


def _positive_functional(psi: list, dim: int) -> tuple[int, ...]:
    """An integer functional strictly positive on every element of psi."""
    if not psi:
        return (1,) * dim
    for cand in ((1,) * dim, (-1,) * dim):
        if all(_dot(cand, a) > 0 for a in psi):
            return cand
    for bound in range(1, 6):
        for cand in product(range(-bound, bound + 1), repeat=dim):
            if all(_dot(cand, a) > 0 for a in psi):
                return cand
    raise NotInUnipotent(f"{psi} does not lie in an open half-space")


@lru_cache(maxsize=None)
def get_context(group: GroupDescriptor, J: tuple[int, ...]) -> RelGroupContext:
    return RelGroupContext(group, J)


def borel_context(group: GroupDescriptor) -> RelGroupContext:
    return get_context(group, tuple(range(group.root_system.rank)))


def X_alpha(ctx: RelGroupContext, alpha, u):
    return ctx.X(alpha, u)


def extract_coordinates(ctx: RelGroupContext, psi, g):
    return ctx.extract_coordinates(psi, g)


def derive_q(ctx: RelGroupContext, alpha):
    return ctx.derive_q(alpha)


def derive_N(ctx: RelGroupContext, alpha, beta):
    return ctx.derive_N(alpha, beta)


def conj_phi(ctx: RelGroupContext, g, alpha, g_inv=None):
    return ctx.conj_phi(g, alpha, g_inv)


def ep_eval(ctx: RelGroupContext, word: RelRootWord):
    return ctx.ep_eval(word)
