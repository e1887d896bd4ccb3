"""Factor an E_P-word over A_h as F_h(y) * z with y in G(A) and z over B_h.

The word is processed left to right while keeping the invariant
``processed = y * ev(z)``.  A generator X_beta(c) whose conjugate by ev(z)
already has entries in A goes into y; one with coefficients in B_h is
appended to z; otherwise c is split as a*h^N + h^-M*b, the a-part is
conjugated into y and the correction factors from the sum formula (living
on multiples of beta) are absorbed recursively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import matrices as mx
from .errors import ExactDivisionError, NonProperParabolic, NotInRing, RingMismatch
from .rings import FractionRing, Localization, denom_exponent, is_subring, residue_lift
from .subschemes import RelGroupContext, RelRootWord


@dataclass(frozen=True, eq=False)
class SubringPair:
    """B inside A with h in B such that B -> A/hA is onto."""

    B: FractionRing
    A: FractionRing
    h: object
    Ah: Localization = field(init=False)
    Bh: Localization = field(init=False)

    def __post_init__(self):
        if not is_subring(self.B, self.A):
            raise RingMismatch(f"{self.B} is not a subring of {self.A}")
        h = self.A.pid.to_field(self.h)
        if not self.B.contains(h):
            raise NotInRing(f"h = {h} is not in {self.B}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "Ah", Localization(self.A, h))
        object.__setattr__(self, "Bh", Localization(self.B, h))

    @property
    def degenerate(self) -> bool:
        """h is a unit of A, so A_h = A and the problem is trivial."""
        return self.A.is_unit(self.h)

    def probes(self) -> list:
        pid = self.A.pid
        out = [pid.to_field(1)]
        if self.A.mode == "allowed":
            out += [1 / pid.to_field(g) for g in self.A.gens]
        return out

    def check_surjective(self, probes: Iterable | None = None) -> bool:
        """Witness B -> A/hA on a probe set; raises NotSurjective on failure."""
        for c in probes if probes is not None else self.probes():
            b = residue_lift(c, self.A, self.h, 1, self.B)
            if not self.A.contains((c - b) / self.h):
                raise AssertionError("residue lift violates its contract")
        return True

    def describe(self) -> dict:
        return {"B": str(self.B), "A": str(self.A), "h": str(self.h)}


@dataclass
class FactorizationResult:
    y: tuple
    z: RelRootWord
    transcript: list = field(default_factory=list)


def split_coefficient(pair: SubringPair, c, N: int):
    """Return (a, b, M) with c = a*h^N + h^-M*b componentwise, a over A, b over B."""
    if N < 1:
        raise ValueError("the clearance exponent must be at least 1")
    h = pair.h
    c = tuple(pair.A.pid.to_field(x) for x in c)
    M = max((denom_exponent(x, pair.Ah) for x in c), default=0)
    hM, hN = h ** M, h ** N
    a, b = [], []
    for x in c:
        bk = residue_lift(x * hM, pair.A, h, N + M, pair.B)
        ak = (x - bk / hM) / hN
        if not pair.A.contains(ak) or ak * hN + bk / hM != x:
            raise ExactDivisionError(f"split of {x} failed")
        a.append(ak)
        b.append(bk)
    return tuple(a), tuple(b), M


def conjugate_terms(ctx: RelGroupContext, zm, z_inv, root) -> tuple:
    """(C1, C2) with zm x_root(Z) zm^-1 = 1 + Z*C1 + Z^2*C2."""
    e = ctx.group.e(root)
    ze = mx.mat_mul(zm, e)
    c1 = mx.mat_mul(ze, z_inv)
    c2 = mx.mat_scale(Fraction(1, 2), mx.mat_mul(mx.mat_mul(ze, e), z_inv))
    return c1, c2


def _clearing_exponent(pair: SubringPair, c1, c2) -> int:
    """Least N >= 0 with h^N C1 and h^(2N) C2 over A."""
    N = 0
    for j, m in ((1, c1), (2, c2)):
        for x in mx.entries(m):
            if x != 0:
                d = denom_exponent(x, pair.Ah)
                N = max(N, -(-d // j))
    return N


def conjugation_clearance(pair: SubringPair, ctx: RelGroupContext, z, beta, i: int,
                          z_inv=None) -> int:
    """Minimal N with ev(z) X_beta(h^N Z e_i) ev(z)^-1 over A[Z].

    ``z`` may be a RelRootWord or an already evaluated matrix.  Because
    X_beta(Z e_i) = x_delta(Z) = 1 + Z e + Z^2 e^2/2, the conjugate is
    1 + Z C1 + Z^2 C2 and only the two constant matrices need clearing.
    """
    zm = ctx.ep_eval(z) if isinstance(z, RelRootWord) else z
    if z_inv is None:
        z_inv = mx.mat_inverse(zm)
    root = ctx.basis[ctx._check(beta)][i]
    c1, c2 = conjugate_terms(ctx, zm, z_inv, root)
    N = _clearing_exponent(pair, c1, c2)
    h = pair.h
    for j, m in ((1, c1), (2, c2)):
        if not _entries_in(pair.A, mx.mat_scale(h ** (j * N), m)):
            raise AssertionError("clearance exponent does not clear denominators")
    return N


def _entries_in(ring, m) -> bool:
    return all(ring.contains(x) for x in mx.entries(m))


class _Factorizer:
    def __init__(self, pair: SubringPair, ctx: RelGroupContext):
        self.pair, self.ctx = pair, ctx
        n = ctx.group.size
        self.y = mx.identity(n)
        self.z: list = []
        self.zm = mx.identity(n)
        self.zinv = mx.identity(n)
        self.transcript: list = []
        self._terms: dict = {}

    def push_z(self, beta, c):
        self.z.append((beta, c))
        self.zm = mx.mat_mul(self.zm, self.ctx.X(beta, c))
        self.zinv = mx.mat_mul(self.ctx.X_inv(beta, c), self.zinv)
        self._terms.clear()

    def terms(self, root):
        if root not in self._terms:
            self._terms[root] = conjugate_terms(self.ctx, self.zm, self.zinv, root)
        return self._terms[root]

    def conjugate(self, beta, c):
        """ev(z) X_beta(c) ev(z)^-1 as a product of 1 + c C1 + c^2 C2 factors."""
        n = self.ctx.group.size
        out = None
        for root, x in zip(self.ctx.basis[beta], c):
            if x == 0:
                continue
            c1, c2 = self.terms(root)
            f = mx.mat_add(mx.identity(n), mx.mat_add(mx.mat_scale(x, c1), mx.mat_scale(x * x, c2)))
            out = f if out is None else mx.mat_mul(out, f)
        return mx.identity(n) if out is None else out

    def absorb(self, beta, c, depth: int = 0):
        pair, ctx = self.pair, self.ctx
        c = tuple(pair.A.pid.to_field(x) for x in c)
        if not all(pair.Ah.contains(x) for x in c):
            raise NotInRing(f"coefficients {c} are not in {pair.Ah}")
        if not any(c):
            return
        conj = self.conjugate(beta, c)
        if _entries_in(pair.A, conj):
            self.y = mx.mat_mul(self.y, conj)
            self.transcript.append({"step": "absorb", "root": beta, "depth": depth})
            return
        if all(pair.Bh.contains(x) for x in c):
            self.push_z(beta, c)
            self.transcript.append({"step": "append", "root": beta, "depth": depth})
            return
        N = max([1] + [_clearing_exponent(pair, *self.terms(r)) for r in ctx.basis[beta]])
        a, b, M = split_coefficient(pair, c, N)
        h = pair.h
        ah = tuple(x * h ** N for x in a)
        bm = tuple(x / h ** M for x in b)
        y1 = self.conjugate(beta, ah)
        if not _entries_in(pair.A, y1):
            raise AssertionError("cleared conjugate left G(A)")
        self.y = mx.mat_mul(self.y, y1)
        self.push_z(beta, bm)
        corrections = ctx.q_product(beta, ah, bm)
        self.transcript.append({"step": "split", "root": beta, "depth": depth, "N": N, "M": M,
                                "corrections": len(corrections)})
        # X(c) = X(ah) X(bm) Q^-1 with Q the ordered product of the corrections
        for gamma, q in reversed(corrections):
            for k in range(len(q) - 1, -1, -1):
                if q[k] != 0:
                    e = tuple(-q[k] if j == k else 0 for j in range(len(q)))
                    self.absorb(gamma, e, depth + 1)


def factor_ep_word(pair: SubringPair, ctx: RelGroupContext, x: RelRootWord) -> FactorizationResult:
    if not ctx.relative_roots:
        raise NonProperParabolic("the parabolic has no relative roots")
    if pair.degenerate:
        y = ctx.ep_eval(x)
        result = FactorizationResult(y, RelRootWord(), [{"step": "degenerate"}])
    else:
        f = _Factorizer(pair, ctx)
        for beta, c in x.factors:
            f.absorb(beta, c)
        result = FactorizationResult(f.y, RelRootWord(tuple(f.z)), f.transcript)
    if not verify_factorization(pair, ctx, x, result):
        raise AssertionError("factorization failed its soundness check")
    return result


def verify_factorization(pair: SubringPair, ctx: RelGroupContext, x: RelRootWord,
                         result: FactorizationResult) -> bool:
    lhs = ctx.ep_eval(x)
    rhs = mx.mat_mul(result.y, ctx.ep_eval(result.z))
    return (
        mx.mat_eq(lhs, rhs)
        and _entries_in(pair.A, result.y)
        and all(pair.Bh.contains(c) for c in result.z.coefficients())
    )
