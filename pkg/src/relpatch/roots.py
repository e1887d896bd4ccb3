"""Classical root systems (types A, B, C, D) in their standard Euclidean
realizations, with heights, a fixed total order and diagram automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import NotARoot, UnsupportedType
from .matrices import mat_inverse

Root = tuple  # integer coordinates in the standard realization


def _e(dim: int, i: int, c: int = 1) -> list[int]:
    v = [0] * dim
    v[i] = c
    return v


def _add(*vs) -> Root:
    return tuple(sum(c) for c in zip(*vs))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of simple-root indices: alpha_i -> alpha_{perm[i]}."""

    perm: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """self after other."""
        return DiagramAutomorphism(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def act_coords(self, coords) -> tuple[int, ...]:
        out = [0] * len(coords)
        for i, k in enumerate(coords):
            out[self.perm[i]] += k
        return tuple(out)


@dataclass(frozen=True, eq=False)
class RootSystem:
    type: str
    rank: int
    dim: int
    simple_roots: tuple[Root, ...]
    roots: tuple[Root, ...] = field(repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and (self.type, self.rank) == (other.type, other.rank)

    def __hash__(self) -> int:
        return hash((self.type, self.rank))

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    @cached_property
    def _solver(self):
        # Invert the simple roots on their first `rank` coordinates.
        square = tuple(tuple(Fraction(r[j]) for j in range(self.rank)) for r in self.simple_roots)
        return mat_inverse(square)

    @cached_property
    def _coords(self) -> dict:
        table = {}
        for r in self.roots:
            k = [sum(r[j] * self._solver[j][i] for j in range(self.rank)) for i in range(self.rank)]
            if any(c.denominator != 1 for c in k):
                raise AssertionError(f"root {r} is not an integral combination of simple roots")
            k = tuple(int(c) for c in k)
            if _add(*[tuple(c * x for x in s) for c, s in zip(k, self.simple_roots)]) != r:
                raise AssertionError(f"simple coordinates of {r} do not reconstruct it")
            table[r] = k
        return table

    def simple_coords(self, root: Root) -> tuple[int, ...]:
        try:
            return self._coords[tuple(root)]
        except KeyError:
            raise NotARoot(f"{root} is not a root of {self.name}") from None

    def from_simple_coords(self, coords) -> Root:
        v = _add(*[tuple(c * x for x in s) for c, s in zip(coords, self.simple_roots)])
        if v not in self._coords:
            raise NotARoot(f"{tuple(coords)} is not a root of {self.name}")
        return v

    def is_root(self, root) -> bool:
        return tuple(root) in self._coords

    def height(self, root: Root) -> int:
        return sum(self.simple_coords(root))

    def is_positive(self, root: Root) -> bool:
        return self.height(root) > 0

    def order_key(self, root: Root):
        """Height first, then larger leading simple coefficients first."""
        return (self.height(root), tuple(-c for c in self.simple_coords(root)))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if self.is_positive(r))

    @cached_property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if not self.is_positive(r))

    def pairing(self, a: Root, b: Root) -> Fraction:
        """<a, b^vee> = 2(a, b)/(b, b)."""
        return Fraction(2 * _dot(a, b), _dot(b, b))

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(int(self.pairing(a, b)) for b in self.simple_roots) for a in self.simple_roots
        )

    def apply(self, sigma: DiagramAutomorphism, root: Root) -> Root:
        return self.from_simple_coords(sigma.act_coords(self.simple_coords(root)))


def build_root_system(type: str, rank: int) -> RootSystem:
    type = type.upper()
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3}
    if type not in minimum:
        raise UnsupportedType(f"root system type {type!r} is not supported")
    if rank < minimum[type]:
        raise UnsupportedType(f"{type}{rank}: rank must be at least {minimum[type]}")
    n = rank
    roots: set[Root] = set()
    if type == "A":
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    roots.add(_add(_e(dim, i), _e(dim, j, -1)))
        simple = [_add(_e(dim, i), _e(dim, i + 1, -1)) for i in range(n)]
    else:
        dim = n
        for i, j in combinations(range(n), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.add(_add(_e(dim, i, si), _e(dim, j, sj)))
        simple = [_add(_e(dim, i), _e(dim, i + 1, -1)) for i in range(n - 1)]
        if type == "B":
            roots.update(tuple(_e(dim, i, s)) for i in range(n) for s in (1, -1))
            simple.append(tuple(_e(dim, n - 1)))
        elif type == "C":
            roots.update(tuple(_e(dim, i, 2 * s)) for i in range(n) for s in (1, -1))
            simple.append(tuple(_e(dim, n - 1, 2)))
        else:
            simple.append(_add(_e(dim, n - 2), _e(dim, n - 1)))
    rs = RootSystem(type, rank, dim, tuple(tuple(s) for s in simple), tuple(sorted(roots)))
    ordered = tuple(sorted(roots, key=rs.order_key))
    return RootSystem(type, rank, dim, rs.simple_roots, ordered)


def height(rs: RootSystem, root: Root) -> int:
    return rs.height(root)


def _all_automorphisms(rs: RootSystem) -> list[DiagramAutomorphism]:
    cm = rs.cartan_matrix
    n = rs.rank
    found = []

    def extend(perm: list[int], used: set[int]):
        i = len(perm)
        if i == n:
            found.append(DiagramAutomorphism(tuple(perm)))
            return
        for c in range(n):
            if c in used:
                continue
            if cm[i][i] != cm[c][c]:
                continue
            if all(cm[i][k] == cm[c][perm[k]] and cm[k][i] == cm[perm[k]][c] for k in range(i)):
                perm.append(c)
                used.add(c)
                extend(perm, used)
                perm.pop()
                used.discard(c)

    extend([], set())
    return found


def generated_group(gens, rank: int) -> list[DiagramAutomorphism]:
    ident = DiagramAutomorphism(tuple(range(rank)))
    group = {ident.perm: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                if h.perm not in group:
                    group[h.perm] = h
                    nxt.append(h)
        frontier = nxt
    return [group[k] for k in sorted(group)]


def automorphism_group(rs: RootSystem) -> list[DiagramAutomorphism]:
    """Generators of Aut(D); an empty list means the trivial group."""
    gens: list[DiagramAutomorphism] = []
    span = {tuple(range(rs.rank))}
    for sigma in _all_automorphisms(rs):
        if sigma.perm in span:
            continue
        gens.append(sigma)
        span = {g.perm for g in generated_group(gens, rs.rank)}
    return gens
