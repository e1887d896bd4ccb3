"""Sparse multivariate Laurent polynomials with exact field coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with nonzero
exponents, so polynomials in different variable sets mix freely.  Negative
exponents are allowed (Laurent polynomials); ordinary polynomial rings are
just the subset with nonnegative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .scalars import RatFunc, inv, is_scalar

Monomial = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MPoly":
        mono = ((name, exp),) if exp else ONE_MONO
        return cls._raw({mono: Fraction(1)})

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def coerce(cls, x) -> "MPoly | None":
        if isinstance(x, MPoly):
            return x
        if is_scalar(x):
            return cls.const(x)
        return None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_term(self):
        return self.terms.get(ONE_MONO, 0)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def __eq__(self, other) -> bool:
        o = MPoly.coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_term())
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "MPoly":
        o = MPoly.coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, 0) + c
            if s != 0:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        o = MPoly.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if is_scalar(other):
            if other == 0:
                return MPoly._raw({})
            return MPoly._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s != 0:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        """Division by a nonzero scalar or by a monomial term."""
        if is_scalar(other):
            return self * inv(other)
        o = MPoly.coerce(other)
        if o is not None and len(o.terms) == 1:
            (m, c), = o.terms.items()
            m_inv = tuple((v, -e) for v, e in m)
            return self * MPoly._raw({m_inv: inv(c)})
        raise ArithmeticError("MPoly division only by scalars or monomials")

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            return MPoly.const(1) / (self ** (-k))
        result, base = MPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def degree_in(self, names) -> set[int]:
        """Set of total degrees (in the given variables) over all terms."""
        names = set(names)
        return {sum(e for v, e in m if v in names) for m in self.terms}

    def is_homogeneous(self, names, degree: int) -> bool:
        return all(d == degree for d in self.degree_in(names))

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self.terms for _, e in m)

    def coefficients_in(self, name: str) -> dict[int, object]:
        """Coefficients with respect to one variable; requires a univariate poly."""
        out = {}
        for m, c in self.terms.items():
            if any(v != name for v, _ in m):
                raise ValueError(f"polynomial involves variables other than {name!r}")
            e = m[0][1] if m else 0
            out[e] = c
        return out

    def subs(self, values: Mapping[str, object]):
        """Substitute variables; unmapped variables stay symbolic.

        Returns a plain scalar when the result is constant and every
        variable was substituted by a scalar.
        """
        acc = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                if v in values:
                    val = values[v]
                    if e >= 0:
                        factor = val ** e if e > 1 else val
                    elif is_scalar(val):
                        factor = inv(val) ** (-e)
                    else:
                        factor = val ** e
                else:
                    factor = MPoly.var(v, e)
                term = term * factor
            acc = acc + term
        if isinstance(acc, MPoly) and acc.is_constant():
            return acc.constant_term()
        return acc

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly({m: fn(c) for m, c in self.terms.items()})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = _coef_str(c)
            if not m:
                parts.append(cs)
                continue
            ms = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            else:
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MPoly({self.format()})"


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), m)


def _coef_str(c) -> str:
    if isinstance(c, RatFunc):
        s = c.format()
        return s if c.is_polynomial() and c.num.degree <= 0 else f"({s})"
    return str(c)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def symbols(prefix: str, count: int) -> tuple[MPoly, ...]:
    return tuple(MPoly.var(f"{prefix}{k + 1}") for k in range(count))
