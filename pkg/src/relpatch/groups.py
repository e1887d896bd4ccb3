"""Split classical matrix groups SL_n and Sp_2n over exact rings.

The realization is fixed once and for all: SL_n uses the matrix units E_pq,
Sp_2n uses the antidiagonal form with Omega[i][2n-1-i] = +1 for i < n and -1
otherwise, and Chevalley basis vectors computed from the weight spaces of
the diagonal torus.  Structure constants are whatever this realization gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import matrices as mx
from .errors import NotARoot, NotInGroup, RingMismatch, UnsupportedType
from .polys import MPoly
from .rings import Rationals, Ring
from .roots import Root, RootSystem, build_root_system
from .scalars import inv, is_scalar


def bracket(a, b):
    return mx.mat_sub(mx.mat_mul(a, b), mx.mat_mul(b, a))


class GroupDescriptor:
    """SL(n) or Sp(2n) over ``base`` with its Chevalley realization."""

    def __init__(self, family: str, size: int, base: Ring | None = None):
        family = family.upper()
        if family not in ("SL", "SP"):
            raise UnsupportedType(f"group family {family!r} is not supported")
        self.family = "SL" if family == "SL" else "Sp"
        self.size = size
        self.base = base if base is not None else Rationals()
        if self.family == "SL":
            if size < 2:
                raise UnsupportedType("SL_n needs n >= 2")
            self.root_system = build_root_system("A", size - 1)
            self.index_weights = tuple(
                tuple(1 if k == p else 0 for k in range(size)) for p in range(size)
            )
            self.form = None
        else:
            if size < 4 or size % 2:
                raise UnsupportedType("Sp_2n needs an even size 2n >= 4")
            n = size // 2
            self.root_system = build_root_system("C", n)
            self.index_weights = tuple(
                tuple((1 if p < n else -1) if k == min(p, size - 1 - p) else 0 for k in range(n))
                for p in range(size)
            )
            self.form = tuple(
                tuple((1 if i < n else -1) if j == size - 1 - i else 0 for j in range(size))
                for i in range(size)
            )
        self.chevalley = self._chevalley_basis()

    @property
    def name(self) -> str:
        return f"{self.family}{self.size}"

    def key(self):
        return (self.family, self.size, self.base.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupDescriptor) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"GroupDescriptor({self.name} over {self.base})"

    def with_base(self, base: Ring) -> "GroupDescriptor":
        return GroupDescriptor(self.family, self.size, base)

    def mirror(self, p: int) -> int:
        return self.size - 1 - p

    # -- Lie algebra -------------------------------------------------------

    def _positions(self, root: Root) -> list[tuple[int, int]]:
        w = self.index_weights
        return [
            (p, q)
            for p in range(self.size)
            for q in range(self.size)
            if p != q and tuple(a - b for a, b in zip(w[p], w[q])) == tuple(root)
        ]

    def _weight_vector(self, root: Root) -> dict:
        pos = self._positions(root)
        if self.form is None:
            return {pos[0]: 1}
        # Omega·X symmetric, restricted to matrices supported on `pos`.
        om = self.form
        rows = []
        for a in range(self.size):
            for b in range(a + 1, self.size):
                row = []
                for (p, q) in pos:
                    c = 0
                    if q == b:
                        c += om[a][p]
                    if q == a:
                        c -= om[b][p]
                    row.append(c)
                if any(row):
                    rows.append(row)
        basis = mx.nullspace(rows, len(pos))
        if len(basis) != 1:
            raise AssertionError(f"weight space of {root} is not one-dimensional")
        vec = basis[0]
        lead = next(c for c in vec if c != 0)
        vec = [c / lead for c in vec]
        if any(c.denominator != 1 for c in vec):
            raise AssertionError(f"non-integral Chevalley vector for {root}")
        return {pq: int(c) for pq, c in zip(pos, vec) if c != 0}

    def _chevalley_basis(self) -> dict:
        rs = self.root_system
        table = {}
        for r in rs.positive_roots:
            e_pos = self._as_matrix(self._weight_vector(r))
            neg = tuple(-c for c in r)
            e_neg = self._as_matrix(self._weight_vector(neg))
            h = bracket(e_pos, e_neg)
            test = bracket(h, e_pos)
            if mx.mat_eq(test, mx.mat_scale(-2, e_pos)):
                e_neg = mx.mat_scale(-1, e_neg)
            elif not mx.mat_eq(test, mx.mat_scale(2, e_pos)):
                raise AssertionError(f"no sl2-triple normalization for {r}")
            table[r] = e_pos
            table[neg] = e_neg
        return table

    def _as_matrix(self, entries: dict):
        return tuple(
            tuple(entries.get((p, q), 0) for q in range(self.size)) for p in range(self.size)
        )

    def e(self, root: Root):
        try:
            return self.chevalley[tuple(root)]
        except KeyError:
            raise NotARoot(f"{root} is not a root of {self.name}") from None

    def coroot(self, root: Root):
        root = tuple(root)
        return bracket(self.e(root), self.e(tuple(-c for c in root)))

    @cached_property
    def cartan_basis(self) -> tuple:
        return tuple(self.coroot(a) for a in self.root_system.simple_roots)

    def root_support(self, root: Root) -> list[tuple[int, int]]:
        e = self.e(root)
        return [(p, q) for p in range(self.size) for q in range(self.size) if e[p][q] != 0]

    # -- group elements ----------------------------------------------------

    def x(self, root: Root, t):
        """The matrix exp(t·e_root)."""
        e = self.e(root)
        e2 = mx.mat_mul(e, e)
        m = mx.mat_add(mx.identity(self.size), mx.mat_scale(t, e))
        if not mx.is_zero(e2):
            if not mx.is_zero(mx.mat_mul(e2, e)):
                raise AssertionError("root vector is not nilpotent of order <= 3")
            m = mx.mat_add(m, mx.mat_scale(t * t * Fraction(1, 2), e2))
        return m

    def w(self, root: Root, u):
        """x_a(u) x_{-a}(-u^{-1}) x_a(u)."""
        neg = tuple(-c for c in root)
        return mx.mat_prod([self.x(root, u), self.x(neg, -inv(u)), self.x(root, u)], self.size)

    def h(self, root: Root, u):
        return mx.mat_mul(self.w(root, u), self.w(root, -1))

    def is_member(self, m, ring: Ring | None = None) -> bool:
        if len(m) != self.size or any(len(r) != self.size for r in m):
            return False
        if ring is not None and not all(ring.contains(x) for x in mx.entries(m)):
            return False
        if mx.det(m) != 1:
            return False
        if self.form is not None:
            lhs = mx.mat_mul(mx.mat_mul(mx.transpose(m), self.form), m)
            if not mx.mat_eq(lhs, self.form):
                return False
        return True

    def element(self, m, ring: Ring | None = None, check: bool = True) -> "GroupElement":
        m = mx.as_matrix(m)
        if check and not self.is_member(m, ring):
            raise NotInGroup(f"matrix is not in {self.name} over {ring or 'its ambient field'}")
        return GroupElement(self, m)

    def identity(self) -> "GroupElement":
        return GroupElement(self, mx.identity(self.size))


def SL(n: int, base: Ring | None = None) -> GroupDescriptor:
    return GroupDescriptor("SL", n, base)


def Sp(size: int, base: Ring | None = None) -> GroupDescriptor:
    """Symplectic group of ``size`` x ``size`` matrices (size = 2n)."""
    return GroupDescriptor("Sp", size, base)


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: GroupDescriptor
    matrix: tuple

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group.family != self.group.family or other.group.size != self.group.size:
            raise RingMismatch("elements of different groups")
        return GroupElement(self.group, mx.mat_mul(self.matrix, other.matrix))

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupElement):
            return mx.mat_eq(self.matrix, other.matrix)
        return NotImplemented

    __hash__ = None

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, mx.mat_inverse(self.matrix))

    def entries_in(self, ring: Ring) -> bool:
        return all(ring.contains(x) for x in mx.entries(self.matrix))

    def is_member(self, ring: Ring | None = None) -> bool:
        return self.group.is_member(self.matrix, ring)


def root_element(G: GroupDescriptor, root: Root, t) -> GroupElement:
    """x_root(t); ``t`` may be a RingElement, a scalar or a symbolic MPoly."""
    value = getattr(t, "value", t)
    if not (is_scalar(value) or isinstance(value, MPoly)):
        raise RingMismatch(f"{t!r} is not a ring value")
    return GroupElement(G, G.x(root, value))


def membership(G: GroupDescriptor, m, ring: Ring | None = None) -> bool:
    return G.is_member(mx.as_matrix(m), ring if ring is not None else G.base)


# -- torus actions ---------------------------------------------------------


def _lexsign(w) -> int:
    for c in w:
        if c:
            return 1 if c > 0 else -1
    return 0


@dataclass(frozen=True, eq=False)
class TorusWeightDatum:
    """Grading of Lie(G) by a diagonal split torus S = G_m^N.

    ``cocharacters[k][p]`` is the exponent of the k-th torus coordinate at
    diagonal slot p; the matrix unit E_pq then has weight
    ``(c[p] - c[q] for c in cocharacters)``.
    """

    group: GroupDescriptor
    cocharacters: tuple[tuple[int, ...], ...]
    grading: dict

    def position_weight(self, p: int, q: int) -> tuple[int, ...]:
        return tuple(c[p] - c[q] for c in self.cocharacters)

    def root_weight(self, root: Root) -> tuple[int, ...]:
        p, q = self.group.root_support(root)[0]
        return self.position_weight(p, q)

    @property
    def weights(self) -> tuple:
        return tuple(sorted((w for w in self.grading if any(w)), key=lambda w: (sum(w), w)))

    def dims(self) -> dict:
        return {w: len(v) for w, v in sorted(self.grading.items())}

    @property
    def proper(self) -> bool:
        return bool(self.weights)

    def torus_matrix(self, values: Sequence):
        """diag(prod_k values[k]^{c_k[p]}), an element of the (adjoint) torus."""
        out = []
        for p in range(self.group.size):
            acc = 1
            for c, v in zip(self.cocharacters, values):
                e = c[p]
                if e:
                    acc = acc * (v ** e if not is_scalar(v) or e > 0 else inv(v) ** (-e))
            out.append(acc)
        return mx.diag(out)


def weight_decomposition(G: GroupDescriptor, S) -> TorusWeightDatum:
    S = [list(S)] if S and isinstance(S[0], int) else [list(s) for s in S]
    for s in S:
        if len(s) != G.size:
            raise UnsupportedType("cocharacter length must equal the matrix size")
        if G.form is not None:
            sums = {s[p] + s[G.mirror(p)] for p in range(G.size)}
            if len(sums) != 1:
                raise UnsupportedType("cocharacter does not normalize the symplectic form")
    cochar = tuple(tuple(s) for s in S)
    grading: dict = {}
    zero = tuple(0 for _ in cochar)
    for k, h in enumerate(G.cartan_basis):
        grading.setdefault(zero, []).append((f"h{k + 1}", h))
    for r in G.root_system.roots:
        ws = {tuple(c[p] - c[q] for c in cochar) for p, q in G.root_support(r)}
        if len(ws) != 1:
            raise AssertionError("root vector is not homogeneous for S")
        (w,) = ws
        grading.setdefault(w, []).append((str(r), G.e(r)))
    grading = {w: tuple(v) for w, v in grading.items()}
    return TorusWeightDatum(G, cochar, grading)


@dataclass(frozen=True)
class ParabolicShape:
    """Position masks (sets of (row, col)) for P+, P-, the Levi and the radicals."""

    plus: frozenset
    minus: frozenset
    levi: frozenset
    u_plus: frozenset
    u_minus: frozenset
    proper: bool


def parabolic_from_torus(datum: TorusWeightDatum, sign: int = 1) -> ParabolicShape:
    n = datum.group.size
    plus, minus, levi, up, um = set(), set(), set(), set(), set()
    for p in range(n):
        for q in range(n):
            s = sign * _lexsign(datum.position_weight(p, q))
            if s >= 0:
                plus.add((p, q))
            if s <= 0:
                minus.add((p, q))
            if s == 0:
                levi.add((p, q))
            elif s > 0:
                up.add((p, q))
            else:
                um.add((p, q))
    return ParabolicShape(frozenset(plus), frozenset(minus), frozenset(levi),
                          frozenset(up), frozenset(um), datum.proper)


def gl_unipotent_mask(cocharacters: Iterable[Sequence[int]], sign: int = 1) -> frozenset:
    """Radical of the GL_n parabolic Q defined by the same diagonal cocharacters."""
    cochar = [tuple(c) for c in cocharacters]
    n = len(cochar[0])
    return frozenset(
        (p, q)
        for p in range(n)
        for q in range(n)
        if sign * _lexsign(tuple(c[p] - c[q] for c in cochar)) > 0
    )


def unipotent_shape_membership(mask: Iterable, m) -> bool:
    """Unit diagonal and zeros outside ``mask`` (off the diagonal)."""
    mask = set(mask)
    n = len(m)
    for p in range(n):
        for q in range(n):
            x = m[p][q]
            if p == q:
                if x != 1:
                    return False
            elif (p, q) not in mask and x != 0:
                return False
    return True


def shape_membership(mask: Iterable, m) -> bool:
    """Zeros outside ``mask`` (used for Levi and parabolic block shapes)."""
    mask = set(mask)
    return all(m[p][q] == 0 for p in range(len(m)) for q in range(len(m)) if (p, q) not in mask)
