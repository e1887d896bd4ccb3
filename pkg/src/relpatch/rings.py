"""Exact commutative rings used as bases: Z- and Q[t]-families, localizations,
residue rings and polynomial rings over them.

Every ring lives inside an ambient field (Q or Q(t)) or, for polynomial
rings, inside Laurent polynomials over that field.  Ring objects are
membership predicates plus the structural data needed for embeddings,
denominator exponents and residue lifting.  Raw values (``Fraction``,
``RatFunc``, ``MPoly``) are what the matrix code multiplies; ``RingElement``
wraps a raw value together with its owner for the checked public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    ExactDivisionError,
    NoEmbedding,
    NotInRing,
    NotSurjective,
    RingMismatch,
    UnsupportedType,
)
from .polys import MPoly
from .scalars import RatFunc, UPoly, poly_gcd, poly_xgcd


# -- principal ideal domains ------------------------------------------------


class IntegerPID:
    """Z, with field of fractions Q (``Fraction``)."""

    kind = "ZZ"

    def key(self):
        return ("ZZ",)

    def to_field(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, RatFunc) and x.is_constant():
            return x.constant()
        if isinstance(x, MPoly) and x.is_constant():
            return self.to_field(x.constant_term())
        raise TypeError(f"{x!r} is not an element of QQ")

    def numden(self, x) -> tuple[int, int]:
        x = self.to_field(x)
        return x.numerator, x.denominator

    def gcd(self, a: int, b: int) -> int:
        return math.gcd(a, b)

    def is_unit(self, a: int) -> bool:
        return a in (1, -1)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def normalize(self, a: int) -> int:
        return abs(a)

    def exquo(self, a: int, b: int) -> int:
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionError(f"{b} does not divide {a}")
        return q

    def divides(self, a: int, b: int) -> bool:
        return b % a == 0

    def rem(self, a: int, m: int) -> int:
        return a % abs(m)

    def inv_mod(self, a: int, m: int) -> int:
        if abs(m) == 1:
            return 0
        return pow(a, -1, abs(m))

    def one(self) -> int:
        return 1

    def fmt(self, a: int) -> str:
        return str(a)

    def sort_key(self, a: int):
        return (abs(a), a)


class PolyPID:
    """Q[var], with field of fractions Q(var) (``RatFunc``)."""

    kind = "QQ[x]"

    def __init__(self, var: str = "t"):
        self.var = var

    def key(self):
        return ("QQ[x]", self.var)

    def to_field(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, UPoly)) and not isinstance(x, bool):
            return RatFunc(x)
        if isinstance(x, MPoly) and x.is_constant():
            return self.to_field(x.constant_term())
        raise TypeError(f"{x!r} is not an element of QQ({self.var})")

    def numden(self, x) -> tuple[UPoly, UPoly]:
        x = self.to_field(x)
        return x.num, x.den

    def gcd(self, a: UPoly, b: UPoly) -> UPoly:
        return poly_gcd(a, b)

    def is_unit(self, a: UPoly) -> bool:
        return a.degree == 0

    def is_zero(self, a: UPoly) -> bool:
        return not a

    def normalize(self, a) -> UPoly:
        a = a if isinstance(a, UPoly) else UPoly.const(a)
        return a.monic()

    def exquo(self, a: UPoly, b: UPoly) -> UPoly:
        q, r = a.divmod(b)
        if r:
            raise ExactDivisionError(f"{b!r} does not divide {a!r}")
        return q

    def divides(self, a: UPoly, b: UPoly) -> bool:
        return not b.divmod(a)[1]

    def rem(self, a: UPoly, m: UPoly) -> UPoly:
        return a.divmod(m)[1]

    def inv_mod(self, a: UPoly, m: UPoly) -> UPoly:
        if m.degree <= 0:
            return UPoly()
        g, s, _ = poly_xgcd(a, m)
        if g.degree != 0:
            raise ZeroDivisionError("not invertible modulo")
        return s.divmod(m)[1]

    def one(self) -> UPoly:
        return UPoly.const(1)

    def fmt(self, a: UPoly) -> str:
        return a.format(self.var)

    def sort_key(self, a: UPoly):
        return (a.degree, a.coeffs)


ZZ = IntegerPID()


def _pid_elem(pid, x):
    """Coerce an integer-like value into the PID (not its fraction field)."""
    if isinstance(pid, IntegerPID):
        f = pid.to_field(x)
        if f.denominator != 1:
            raise NotInRing(f"{x!r} is not an integer")
        return f.numerator
    f = pid.to_field(x)
    if not f.is_polynomial():
        raise NotInRing(f"{x!r} is not a polynomial")
    return f.num


def _pid_power(pid, a, k: int):
    return a ** k


def _valuation(pid, a, p) -> int:
    """Exponent of the prime p in the nonzero PID element a."""
    if pid.is_zero(a):
        raise ValueError("valuation of zero")
    v = 0
    while pid.divides(p, a):
        a = pid.exquo(a, p)
        v += 1
    return v


# -- ring descriptors -------------------------------------------------------


class Ring:
    """Base class: a subring of an ambient field or of a Laurent ring over it."""

    pid = None

    def key(self):
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def contains(self, x) -> bool:
        raise NotImplementedError

    def canonical(self, x):
        return x

    def element(self, x) -> "RingElement":
        return RingElement(self, x)

    def zero(self) -> "RingElement":
        return RingElement(self, 0)

    def one(self) -> "RingElement":
        return RingElement(self, 1)

    def __repr__(self) -> str:
        return f"<Ring {self}>"


class FractionRing(Ring):
    """Subring of Frac(D) for a PID D, cut out by a denominator condition.

    mode ``"all"``: the whole fraction field.
    mode ``"allowed"``: denominators built from the primes dividing ``gens``
    (so Z itself is ``allowed`` with no generators, Z[1/3] has gens (3,)).
    mode ``"forbidden"``: denominators coprime to each prime in ``gens``
    (semi-local rings such as Z_(2,3)).
    """

    def __init__(self, pid, mode: str, gens: Iterable = ()):
        if mode not in ("all", "allowed", "forbidden"):
            raise UnsupportedType(f"unknown denominator mode {mode!r}")
        self.pid = pid
        gens = [pid.normalize(_pid_elem(pid, g)) for g in gens]
        for g in gens:
            if pid.is_zero(g):
                raise UnsupportedType("zero is not a valid denominator generator")
        gens = [g for g in gens if not pid.is_unit(g)]
        uniq = {}
        for g in gens:
            uniq[pid.sort_key(g)] = g
        self.gens = tuple(uniq[k] for k in sorted(uniq))
        if mode == "forbidden" and not self.gens:
            mode = "all"
        self.mode = mode

    def key(self):
        return ("frac", self.pid.key(), self.mode, tuple(self.pid.sort_key(g) for g in self.gens))

    @property
    def is_field(self) -> bool:
        return self.mode == "all"

    def canonical(self, x):
        return self.pid.to_field(x)

    def _den_ok(self, den) -> bool:
        pid = self.pid
        if self.mode == "all" or pid.is_unit(den):
            return True
        if self.mode == "allowed":
            for g in self.gens:
                c = pid.gcd(den, g)
                while not pid.is_unit(c):
                    den = pid.exquo(den, c)
                    c = pid.gcd(den, c)
            return pid.is_unit(den)
        return all(pid.is_unit(pid.gcd(den, p)) for p in self.gens)

    def contains(self, x) -> bool:
        try:
            _, den = self.pid.numden(x)
        except TypeError:
            return False
        return self._den_ok(den)

    def is_unit(self, x) -> bool:
        x = self.pid.to_field(x)
        if not x:
            return False
        return self.contains(x) and self.contains(1 / x)

    def __str__(self) -> str:
        pid = self.pid
        base = "ZZ" if isinstance(pid, IntegerPID) else f"QQ[{pid.var}]"
        if self.mode == "all":
            return "QQ" if isinstance(pid, IntegerPID) else f"QQ({pid.var})"
        if not self.gens:
            return base
        gs = ",".join(pid.fmt(g) for g in self.gens)
        if self.mode == "allowed":
            return f"{base}[1/({gs})]"
        return f"{base}_({gs})"

    def describe(self) -> dict:
        d = {"kind": "fraction", "pid": str(self.pid.kind), "mode": self.mode,
             "gens": [self.pid.fmt(g) for g in self.gens]}
        if isinstance(self.pid, PolyPID):
            d["var"] = self.pid.var
        return d


class Localization(FractionRing):
    """The ring base[1/h]; remembers ``base`` and ``h`` for denominator bookkeeping."""

    def __init__(self, base: FractionRing, h):
        if not isinstance(base, FractionRing):
            raise UnsupportedType("localization is supported over fraction-type rings only")
        if not base.contains(h):
            raise NotInRing(f"{h!r} is not in {base}")
        hv = base.pid.to_field(h)
        if not hv:
            raise UnsupportedType("cannot localize at a nilpotent (zero) element")
        pid = base.pid
        num, _ = pid.numden(hv)
        if base.mode == "all":
            mode, gens = "all", ()
        elif base.mode == "allowed":
            mode, gens = "allowed", base.gens + (num,)
        else:
            mode = "forbidden"
            gens = tuple(p for p in base.gens if pid.is_unit(pid.gcd(p, num)))
        super().__init__(pid, mode, gens)
        self.base = base
        self.h = hv

    def h_is_unit(self) -> bool:
        return self.base.is_unit(self.h)


class PolynomialRing(Ring):
    """base[var] (or the Laurent ring base[var, var^-1]) as MPoly values."""

    def __init__(self, base: Ring, var: str, laurent: bool = False):
        self.base = base
        self.var = var
        self.laurent = laurent
        self.pid = getattr(base, "pid", None)

    def key(self):
        return ("poly", self.base.key(), self.var, self.laurent)

    def canonical(self, x):
        m = MPoly.coerce(x)
        if m is None:
            raise TypeError(f"{x!r} is not a polynomial")
        return m

    def contains(self, x) -> bool:
        m = MPoly.coerce(x)
        if m is None:
            return False
        for mono, c in m.terms.items():
            for v, e in mono:
                if v != self.var or (e < 0 and not self.laurent):
                    return False
            if not self.base.contains(c):
                return False
        return True

    def __str__(self) -> str:
        if self.laurent:
            return f"{self.base}[{self.var},{self.var}^-1]"
        return f"{self.base}[{self.var}]"

    def describe(self) -> dict:
        return {"kind": "laurent" if self.laurent else "polynomial",
                "base": self.base.describe(), "var": self.var}


class Residue(Ring):
    """base / modulus·base, elements represented by canonical PID residues."""

    def __init__(self, base: FractionRing, modulus):
        if not isinstance(base, FractionRing):
            raise UnsupportedType("residue rings are supported over fraction-type rings only")
        self.base = base
        self.pid = base.pid
        self.modulus = base.pid.to_field(modulus)
        if not base.contains(self.modulus):
            raise NotInRing(f"modulus {modulus!r} not in {base}")
        self.effective = _effective_modulus(base, self.modulus)

    def key(self):
        return ("residue", self.base.key(), self.pid.sort_key(self.effective))

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def canonical(self, x):
        return self.pid.to_field(_reduce_mod(self.base, self.pid.to_field(x), self.effective))

    def __str__(self) -> str:
        return f"{self.base}/({self.pid.fmt(self.effective)})"

    def describe(self) -> dict:
        return {"kind": "residue", "base": self.base.describe(),
                "modulus": self.pid.fmt(self.effective)}


# -- constructors mirroring the descriptor vocabulary -----------------------


def Integers() -> FractionRing:
    return FractionRing(ZZ, "allowed", ())


def Rationals() -> FractionRing:
    return FractionRing(ZZ, "all", ())


def RestrictedRationals(primes: Iterable, allowed: bool = True, pid=ZZ) -> FractionRing:
    """Denominators supported on ``primes`` (allowed) or coprime to them."""
    return FractionRing(pid, "allowed" if allowed else "forbidden", primes)


def RationalFunctions(var: str = "t") -> FractionRing:
    return FractionRing(PolyPID(var), "all", ())


def UnivariatePolynomials(base: Ring, var: str = "t") -> Ring:
    """base[var].  Over Q this is the PID Q[var] inside Q(var); otherwise an MPoly ring."""
    if isinstance(base, FractionRing) and isinstance(base.pid, IntegerPID) and base.mode == "all":
        return FractionRing(PolyPID(var), "allowed", ())
    return PolynomialRing(base, var)


def LaurentPolynomials(base: Ring, var: str) -> PolynomialRing:
    return PolynomialRing(base, var, laurent=True)


def SemilocalPolynomials(irreducibles: Iterable, var: str = "t") -> FractionRing:
    """Q[var] localized at the finitely many primes given."""
    pid = PolyPID(var)
    return FractionRing(pid, "forbidden", [_as_upoly_in(pid, p) for p in irreducibles])


def _as_upoly_in(pid, p):
    if isinstance(p, (list, tuple)):
        return UPoly(p)
    return _pid_elem(pid, p)


# -- structural operations --------------------------------------------------


def is_subring(source: Ring, target: Ring) -> bool:
    """True when a canonical embedding source -> target is configured."""
    if source == target:
        return True
    if isinstance(target, Residue):
        return not isinstance(source, Residue) and is_subring(source, target.base)
    if isinstance(source, Residue):
        return False
    if isinstance(source, FractionRing) and isinstance(target, FractionRing):
        if source.pid.key() != target.pid.key():
            # Z-family rings sit inside Q, hence inside Q[t] and everything over it.
            return isinstance(source.pid, IntegerPID) and isinstance(target.pid, PolyPID)
        if target.mode == "all":
            return True
        if source.mode == "all":
            return False
        if source.mode == "allowed":
            return all(target.contains(1 / target.pid.to_field(g)) for g in source.gens)
        if target.mode == "allowed":
            return False
        pid = source.pid
        return all(any(not pid.is_unit(pid.gcd(p, q)) for q in source.gens) for p in target.gens)
    if isinstance(target, PolynomialRing):
        if isinstance(source, PolynomialRing):
            return (source.var == target.var and is_subring(source.base, target.base)
                    and (target.laurent or not source.laurent))
        return is_subring(source, target.base)
    return False


def embed(x: "RingElement", target: Ring) -> "RingElement":
    """Image of x under the canonical inclusion into ``target``."""
    if not is_subring(x.ring, target):
        raise NoEmbedding(f"no embedding {x.ring} -> {target}")
    value = x.value
    if isinstance(target, (FractionRing, Residue)):
        value = target.pid.to_field(value) if target.pid is not None else value
    return RingElement(target, value)


def localization_map(x: "RingElement", h) -> "RingElement":
    """F_h on scalars: x in A to its image in A_h."""
    if not isinstance(x.ring, FractionRing):
        raise UnsupportedType("localization map needs a fraction-type ring")
    return embed(x, Localization(x.ring, h))


def denom_exponent(x, ring: Localization | None = None) -> int:
    """Minimal M >= 0 with h^M x in the base of the localization."""
    if isinstance(x, RingElement):
        ring = ring or x.ring
        x = x.value
    if not isinstance(ring, Localization):
        raise UnsupportedType("denom_exponent needs a localization")
    if not ring.contains(x):
        raise NotInRing(f"{x!r} not in {ring}")
    value = ring.pid.to_field(x)
    M = 0
    while not ring.base.contains(value):
        value = value * ring.h
        M += 1
    return M


def valuation(x, prime, pid=ZZ) -> int:
    """p-adic valuation of a nonzero field element."""
    num, den = pid.numden(x)
    if pid.is_zero(num):
        raise ValueError("valuation of zero")
    p = _pid_elem(pid, prime)
    return _valuation(pid, num, p) - _valuation(pid, den, p)


def _effective_modulus(A: FractionRing, m):
    """The part of the numerator of m that is not a unit in A."""
    pid = A.pid
    num, _ = pid.numden(m)
    if pid.is_zero(num):
        raise UnsupportedType("zero modulus")
    num = pid.normalize(num)
    if A.mode == "all":
        return pid.one()
    if A.mode == "allowed":
        for g in A.gens:
            c = pid.gcd(num, g)
            while not pid.is_unit(c):
                num = pid.exquo(num, c)
                c = pid.gcd(num, c)
        return pid.normalize(num)
    eff = pid.one()
    for p in A.gens:
        while pid.divides(p, num):
            num = pid.exquo(num, p)
            eff = eff * p
    return pid.normalize(eff)


def _reduce_mod(A: FractionRing, c, m_eff):
    """Canonical PID representative b with c - b in m_eff·A."""
    pid = A.pid
    if pid.is_unit(m_eff):
        return pid.rem(pid.one(), pid.one())
    num, den = pid.numden(c)
    if not pid.is_unit(pid.gcd(den, m_eff)):
        raise NotSurjective(f"denominator of {c!r} is not invertible modulo {pid.fmt(m_eff)}")
    return pid.rem(num * pid.inv_mod(pid.rem(den, m_eff), m_eff), m_eff)


def residue_lift(c, A: Ring, h, k: int, B: Ring):
    """Return b in B with c - b in h^k A (raw value).

    Raises NotSurjective when B -> A/h^k A misses the class of c.
    """
    if isinstance(c, RingElement):
        c = c.value
    if isinstance(h, RingElement):
        h = h.value
    if not A.contains(c):
        raise NotInRing(f"{c!r} not in {A}")
    if not is_subring(B, A):
        raise NoEmbedding(f"{B} is not a subring of {A}")
    if isinstance(A, FractionRing):
        pid = A.pid
        hk = pid.to_field(h) ** k
        m_eff = _effective_modulus(A, hk)
        b = pid.to_field(_reduce_mod(A, pid.to_field(c), m_eff))
        if not B.contains(b):
            raise NotSurjective(f"residue of {c!r} has no lift in {B}")
        return b
    if isinstance(A, PolynomialRing) and not A.laurent:
        m = MPoly.coerce(c)
        coeffs = m.coefficients_in(A.var) if m.terms else {}
        base = A.base
        hk = h ** k
        for e, ce in coeffs.items():
            if e == 0:
                continue
            if not base.contains(ce / hk):
                raise NotSurjective(
                    f"coefficient of {A.var}^{e} is not in h^{k}·{base}; B -> A/h^k A is not onto")
        c0 = coeffs.get(0, 0)
        if is_subring(base, B):
            return base.canonical(c0)
        return residue_lift(c0, base, h, k, B)
    raise UnsupportedType(f"residue lifting not available for {A}")


def substitute(p, value):
    """Evaluate a univariate polynomial at ``value``.

    ``p`` is an MPoly in one variable, a polynomial RatFunc in Q[t], or a
    RingElement wrapping either.  ``value`` may be a scalar, an MPoly or a
    RingElement; with RingElement inputs the result is a RingElement.
    """
    owner = None
    if isinstance(value, RingElement):
        owner = value.ring
        value = value.value
    if isinstance(p, RingElement):
        ring = p.ring
        p = p.value
        if owner is not None and isinstance(ring, PolynomialRing) and not is_subring(ring.base, owner):
            raise RingMismatch(f"cannot evaluate {ring} polynomial in {owner}")
    if isinstance(p, RatFunc):
        if not p.is_polynomial():
            raise RingMismatch("substitution needs a polynomial, got a rational function")
        result = p.num(value)
    elif isinstance(p, MPoly):
        names = p.variables()
        if len(names) > 1:
            raise RingMismatch("substitution needs a univariate polynomial")
        if not names:
            result = p.constant_term()
        else:
            (name,) = names
            result = p.subs({name: value})
    elif isinstance(p, (int, Fraction)):
        result = p
    else:
        raise RingMismatch(f"{p!r} is not a polynomial")
    if owner is not None:
        return RingElement(owner, result)
    return result


# -- checked elements -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RingElement:
    """A raw value together with the ring that owns it."""

    ring: Ring
    value: object

    def __post_init__(self):
        try:
            v = self.ring.canonical(self.value)
        except TypeError as exc:
            raise NotInRing(str(exc)) from None
        if not self.ring.contains(v):
            raise NotInRing(f"{self.value!r} is not in {self.ring}")
        object.__setattr__(self, "value", v)

    def _check(self, other) -> "RingElement":
        if not isinstance(other, RingElement):
            return RingElement(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        return RingElement(self.ring, self.value + self._check(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.value - self._check(other).value)

    def __rsub__(self, other):
        return RingElement(self.ring, self._check(other).value - self.value)

    def __mul__(self, other):
        return RingElement(self.ring, self.value * self._check(other).value)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, -self.value)

    def __pow__(self, k: int):
        return RingElement(self.ring, self.value ** k)

    def exact_div(self, other) -> "RingElement":
        other = self._check(other)
        if isinstance(self.ring, Residue):
            raise UnsupportedType("division in residue rings is not provided")
        q = self.value / other.value
        if not self.ring.contains(q):
            raise ExactDivisionError(f"{other.value!r} does not divide {self.value!r} in {self.ring}")
        return RingElement(self.ring, q)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.canonical(other)
        except (TypeError, NotInRing):
            return False

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    @property
    def payload(self):
        """Canonical payload; (numerator-in-base, h-exponent) for localizations."""
        if isinstance(self.ring, Localization):
            M = denom_exponent(self.value, self.ring)
            return (self.value * self.ring.h ** M, M)
        return self.value

    def __repr__(self) -> str:
        return f"RingElement({self.value!r} in {self.ring})"
