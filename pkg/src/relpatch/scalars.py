"""Exact scalar types that are not in the standard library.

``UPoly`` is a dense univariate polynomial over the rationals and ``RatFunc``
is an element of the field of rational functions in one variable.  Both are
immutable and kept in canonical form, so ``==`` is structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

Scalar = "int | Fraction | RatFunc"


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    """Univariate polynomial over Q, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "UPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(("UPoly", self.coeffs))

    def __neg__(self) -> "UPoly":
        return UPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UPoly":
        return (-self) + other

    def __mul__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly._raw(())
        # integer convolution over a common denominator
        la = lcm(*(c.denominator for c in a))
        lb = lcm(*(c.denominator for c in b))
        ia = [c.numerator * (la // c.denominator) for c in a]
        ib = [c.numerator * (lb // c.denominator) for c in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        d = la * lb
        return UPoly._raw(_strip([Fraction(c, d) for c in out]))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UPoly._raw((Fraction(1),)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = 1 / other.lc
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lc
            if c:
                quo[k] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return UPoly._raw(_strip(quo)), UPoly._raw(_strip(rem[:dq] if dq > 0 else []))

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(_as_upoly(other))[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(_as_upoly(other))[1]

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return UPoly._raw(tuple(c * inv for c in self.coeffs))

    def __call__(self, value):
        """Evaluate by Horner's rule; ``value`` may be any ring-like object."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_list(self) -> list[Fraction]:
        return list(self.coeffs)

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                mon = var if k == 1 else f"{var}^{k}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"UPoly({self.format()})"


def _as_upoly(x) -> UPoly | None:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly._raw(_strip([Fraction(x)]))
    return None


def _integral(p: UPoly) -> tuple[list, int]:
    """Integer coefficients (highest degree first) and the scale L with L*p integral."""
    scale = lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1
    return [ZZ(int(c * scale)) for c in reversed(p.coeffs)], scale


def _from_integral(coeffs, scale=1) -> UPoly:
    return UPoly([Fraction(int(c), scale) for c in reversed(coeffs)])


def _inner_gcd(a: UPoly, b: UPoly):
    """(g, a/g, b/g) with g monic, via the heuristic integer gcd."""
    ia, la = _integral(a)
    ib, lb = _integral(b)
    g, ca, cb = dup_inner_gcd(ia, ib, ZZ)
    lead = Fraction(int(g[0])) if g else Fraction(1)
    gm = _from_integral(g) * (1 / lead)
    return gm, _from_integral(ca) * (lead / la), _from_integral(cb) * (lead / lb)


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    if not a or not b:
        return (a or b).monic() if (a or b) else UPoly()
    return _inner_gcd(a, b)[0]


def poly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UPoly.const(1), UPoly()
    t0, t1 = UPoly(), UPoly.const(1)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = Fraction(1) / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


class RatFunc:
    """Element of Q(t): reduced quotient with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_upoly(num)
        den = _as_upoly(den)
        if num is None or den is None:
            raise TypeError("RatFunc needs polynomial or rational numerator/denominator")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = UPoly(), UPoly.const(1)
            return
        if den.degree > 0 and num.degree > 0:
            g, cn, cd = _inner_gcd(num, den)
            if g.degree > 0:
                num, den = cn, cd
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: UPoly, den: UPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(UPoly.x())

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, UPoly):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.den.degree == 0:
            return hash(self.num)
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        # a/b + c stays reduced: gcd(a + cb, b) = gcd(a, b) = 1
        if o.den.degree == 0:
            return RatFunc._raw(self.num + o.num * self.den, self.den)
        if self.den.degree == 0:
            return RatFunc._raw(o.num + self.num * o.den, o.den)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc(0)
        # both factors are reduced, so cross-cancelling suffices
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d2.degree > 0 and n1.degree > 0:
            g, n1, d2 = _inner_gcd(n1, d2)
        if d1.degree > 0 and n2.degree > 0:
            g, n2, d1 = _inner_gcd(n2, d1)
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def format(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __repr__(self) -> str:
        return f"RatFunc({self.format()})"


def _as_ratfunc(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc._raw(_as_upoly(x), UPoly._raw((Fraction(1),)))
    if isinstance(x, UPoly):
        return RatFunc._raw(x, UPoly._raw((Fraction(1),)))
    return None


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, RatFunc))


def inv(x):
    """Multiplicative inverse of a nonzero field scalar."""
    if isinstance(x, RatFunc):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return Fraction(1) / Fraction(x)


def poly_from_list(coeffs: Sequence) -> UPoly:
    return UPoly(coeffs)
