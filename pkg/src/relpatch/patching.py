"""Trivialize a gluing cocycle x in G(K) over a semi-local Dedekind base B.

Pipeline for a chosen maximal ideal m = (f):
  x = x'' * ev(x')          x'' in G(B_m), x' a word over K   (DVR step)
  x' = y * ev(z)            y in G(B_m), z over B_f           (factorization)
so x = g1 * ev(g2) with g1 = x'' y in G(B_m) and g2 = z over B_f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import matrices as mx
from .dvr import DvrContext, decompose_GK
from .errors import NotInRing, UnsupportedType
from .factorization import SubringPair, factor_ep_word
from .groups import GroupDescriptor
from .rings import FractionRing, _pid_elem
from .subschemes import RelRootWord, borel_context


@dataclass(frozen=True, eq=False)
class PatchingDatum:
    """Base B = PID localized at ``primes``; the ideal m is ``primes[m_index]``."""

    pid: object
    primes: tuple
    m_index: int
    group: GroupDescriptor
    x: tuple

    def __post_init__(self):
        primes = tuple(self.pid.normalize(_pid_elem(self.pid, p)) for p in self.primes)
        B = FractionRing(self.pid, "forbidden", primes)
        if B.mode != "forbidden" or len(B.gens) != len(primes):
            raise UnsupportedType("the base needs distinct non-unit primes")
        if not 0 <= self.m_index < len(primes):
            raise UnsupportedType("m_index does not name one of the primes")
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "x", mx.as_matrix(self.x))

    @property
    def B(self) -> FractionRing:
        return FractionRing(self.pid, "forbidden", self.primes)

    @property
    def m(self):
        return self.primes[self.m_index]

    @property
    def A(self) -> FractionRing:
        """The local surrogate B_m."""
        return FractionRing(self.pid, "forbidden", (self.m,))

    @property
    def K(self) -> FractionRing:
        return FractionRing(self.pid, "all", ())

    @property
    def f(self):
        return choose_uniformizer(self.B, self.m)

    @property
    def Bf(self) -> FractionRing:
        rest = tuple(p for p in self.primes if p != self.m)
        return FractionRing(self.pid, "forbidden", rest)

    def pair(self) -> SubringPair:
        return SubringPair(self.B, self.A, self.f)


def choose_uniformizer(B: FractionRing, m):
    """A generator f of m B_m that is a unit at every other maximal ideal.

    For distinct primes of a PID the prime itself already works; the check
    below confirms it rather than assuming it.
    """
    pid = B.pid
    f = pid.normalize(m)
    if f not in B.gens:
        raise NotInRing(f"{pid.fmt(f)} is not a maximal ideal of {B}")
    for q in B.gens:
        if q != f and not pid.is_unit(pid.gcd(f, q)):
            raise UnsupportedType("maximal ideals are not coprime")
    return pid.to_field(f)


@dataclass
class Trivialization:
    g1: tuple
    g2: RelRootWord
    certificate: dict = field(default_factory=dict)
    steps: dict = field(default_factory=dict)


def trivialize_cocycle(datum: PatchingDatum) -> Trivialization:
    G = datum.group
    x = datum.x
    if not G.is_member(x):
        raise UnsupportedType(f"cocycle is not in {G.name}")
    if all(datum.B.contains(c) for c in mx.entries(x)):
        triv = Trivialization(x, RelRootWord(), steps={"trivial": True})
    else:
        dvr = DvrContext(datum.pid, datum.m)
        x2, x1 = decompose_GK(dvr, G, x)
        ctx = borel_context(G)
        res = factor_ep_word(datum.pair(), ctx, x1)
        triv = Trivialization(mx.mat_mul(x2, res.y), res.z,
                              steps={"dvr_word": len(x1), "transcript": res.transcript})
    triv.certificate = certificate(datum, triv)
    if not all(triv.certificate.values()):
        raise AssertionError(f"trivialization failed its certificate: {triv.certificate}")
    return triv


def _exp(e, u, n: int):
    e2 = mx.mat_mul(e, e)
    return mx.mat_add(mx.identity(n), mx.mat_add(mx.mat_scale(u, e), mx.mat_scale(u * u * Fraction(1, 2), e2)))


def _evaluate_word(G: GroupDescriptor, word: RelRootWord):
    """Recompute ev(word) from the Chevalley basis alone (Borel coordinates)."""
    rs = G.root_system
    by_coords = {rs.simple_coords(r): r for r in rs.roots}
    m = mx.identity(G.size)
    for alpha, u in word.factors:
        if len(u) != 1 or tuple(alpha) not in by_coords:
            return None
        m = mx.mat_mul(m, _exp(G.e(by_coords[tuple(alpha)]), u[0], G.size))
    return m


def certificate(datum: PatchingDatum, t: Trivialization) -> dict:
    G = datum.group
    product = _evaluate_word(G, t.g2)
    return {
        "product": product is not None and mx.mat_eq(mx.mat_mul(t.g1, product), datum.x),
        "g1_in_A": all(datum.A.contains(c) for c in mx.entries(t.g1)),
        "g1_in_group": G.is_member(t.g1),
        "g2_in_Bf": all(datum.Bf.contains(c) for c in t.g2.coefficients()),
    }


def verify_trivialization(datum: PatchingDatum, t: Trivialization) -> bool:
    """Independent re-check of x = g1 ev(g2) and the ring memberships."""
    try:
        return all(certificate(datum, t).values())
    except Exception:
        return False


def trivialize_by_induction(pid, primes: Sequence, group: GroupDescriptor, x) -> list:
    """Peel one maximal ideal per pass.

    Pass k works over the base localized at the remaining primes and feeds
    ev(g2) (which lives over that base with the peeled prime inverted) into
    the next pass.  Returns the list of (datum, trivialization) pairs; the
    product of all g1 times the last ev(g2) recovers x.
    """
    passes = []
    remaining = list(primes)
    cocycle = mx.as_matrix(x)
    while remaining:
        datum = PatchingDatum(pid, tuple(remaining), 0, group, cocycle)
        triv = trivialize_cocycle(datum)
        passes.append((datum, triv))
        cocycle = _evaluate_word(group, triv.g2)
        remaining = [p for p in datum.primes if p != datum.m]
    return passes


def induction_product(passes: list):
    G = passes[0][0].group
    m = mx.identity(G.size)
    for _, t in passes:
        m = mx.mat_mul(m, t.g1)
    return mx.mat_mul(m, _evaluate_word(G, passes[-1][1].g2))
