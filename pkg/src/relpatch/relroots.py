"""Relative root systems: the projection pi_{J,Gamma} and the set Phi_P."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import JNotInvariant, NotARelativeRoot
from .roots import DiagramAutomorphism, Root, RootSystem, generated_group

RelRoot = tuple  # integer coordinates over the simple relative roots


@dataclass(frozen=True, eq=False)
class RelativeRootDatum:
    """Quotient of the root lattice by <D \\ J; alpha - sigma(alpha)>.

    The quotient is taken over Q and identified with Z^k, one coordinate per
    Gamma-orbit in J (ordered by smallest simple-root index), so ``pi`` sums
    the simple coordinates over each orbit and kills D \\ J.
    """

    source: RootSystem
    J: tuple[int, ...]
    gamma: tuple[DiagramAutomorphism, ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.orbits)

    @cached_property
    def lattice_map(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix (orbits x simple roots) of pi in simple coordinates."""
        return tuple(
            tuple(1 if i in orbit else 0 for i in range(self.source.rank)) for orbit in self.orbits
        )

    def project_coords(self, coords: Iterable[int]) -> RelRoot:
        coords = tuple(coords)
        return tuple(sum(coords[i] for i in orbit) for orbit in self.orbits)

    def project(self, root: Root) -> RelRoot:
        return self.project_coords(self.source.simple_coords(root))

    @cached_property
    def _images(self) -> dict:
        return {r: self.project(r) for r in self.source.roots}

    @cached_property
    def relative_roots(self) -> tuple[RelRoot, ...]:
        nonzero = {a for a in self._images.values() if any(a)}
        return tuple(sorted(nonzero, key=self.order_key))

    @cached_property
    def positive(self) -> tuple[RelRoot, ...]:
        return tuple(a for a in self.relative_roots if self.relative_height(a) > 0)

    @cached_property
    def negative(self) -> tuple[RelRoot, ...]:
        return tuple(a for a in self.relative_roots if self.relative_height(a) < 0)

    @cached_property
    def simple_relative_roots(self) -> tuple[RelRoot, ...]:
        return tuple(tuple(1 if k == j else 0 for k in range(self.rank)) for j in range(self.rank))

    def is_relative_root(self, a) -> bool:
        return tuple(a) in set(self.relative_roots)

    def _check(self, a) -> RelRoot:
        a = tuple(a)
        if a not in self._rel_set:
            raise NotARelativeRoot(f"{a} is not in Phi_P")
        return a

    @cached_property
    def _rel_set(self) -> frozenset:
        return frozenset(self.relative_roots)

    def relative_height(self, a) -> int:
        return sum(self._check(a))

    def order_key(self, a):
        return (sum(a), tuple(-c for c in a))

    def fiber(self, a, i: int = 1) -> tuple[Root, ...]:
        """Absolute roots projecting to i*a, in the fixed root order."""
        self._check(a)
        target = tuple(i * c for c in a)
        return tuple(r for r in self.source.roots if self._images[r] == target)

    def multiples(self, a) -> tuple[int, ...]:
        """All i >= 1 with i*a in Phi_P."""
        a = self._check(a)
        out = []
        i = 1
        while True:
            m = tuple(i * c for c in a)
            if m in self._rel_set:
                out.append(i)
            elif i > 1:
                break
            i += 1
        return tuple(out)

    def ray(self, a) -> RelRoot:
        """The smallest relative root on the ray through a."""
        a = self._check(a)
        for d in range(2, max(abs(c) for c in a) + 1):
            if all(c % d == 0 for c in a):
                b = tuple(c // d for c in a)
                if b in self._rel_set:
                    return self.ray(b)
        return a

    def is_closed(self, psi: Iterable) -> bool:
        psi = {tuple(a) for a in psi}
        for a in psi:
            self._check(a)
        for a in psi:
            for b in psi:
                s = tuple(x + y for x, y in zip(a, b))
                if s in self._rel_set and s not in psi:
                    return False
        return True

    def fiber_sizes(self, a) -> dict[int, int]:
        return {i: len(self.fiber(a, i)) for i in self.multiples(a)}


def relative_projection(
    rs: RootSystem, J: Iterable[int], gamma: Iterable[DiagramAutomorphism] = ()
) -> RelativeRootDatum:
    """Build the datum for J (0-based simple-root indices) and generators of Gamma."""
    J = tuple(sorted(set(J)))
    for j in J:
        if not 0 <= j < rs.rank:
            raise NotARelativeRoot(f"simple root index {j} out of range for {rs.name}")
    gamma = tuple(g for g in gamma if not g.is_identity())
    for sigma in gamma:
        if len(sigma.perm) != rs.rank:
            raise JNotInvariant("automorphism has the wrong size")
        if {sigma.perm[j] for j in J} != set(J):
            raise JNotInvariant(f"J={J} is not invariant under {sigma.perm}")
    group = generated_group(gamma, rs.rank)
    seen: set[int] = set()
    orbits = []
    for j in J:
        if j in seen:
            continue
        orbit = tuple(sorted({g.perm[j] for g in group}))
        seen.update(orbit)
        orbits.append(orbit)
    return RelativeRootDatum(rs, J, gamma, tuple(orbits))
