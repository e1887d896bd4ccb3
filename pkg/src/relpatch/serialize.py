"""JSON encoding of scalars, matrices, words and ring descriptors.

Rationals are always strings ("-4/3").  Elements of Q(t) are objects
``{"num": [c0, c1, ...], "den": [...]}`` with coefficients low degree first;
a constant may also be given as a plain string.  Floats are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .polys import MPoly
from .rings import ZZ, FractionRing, PolyPID
from .scalars import RatFunc, UPoly
from .subschemes import RelRootWord


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


# -- scalars ------------------------------------------------------------------


def encode_scalar(x):
    if isinstance(x, RatFunc):
        if x.is_constant():
            return str(x.constant())
        return {"num": [str(c) for c in x.num.coeffs], "den": [str(c) for c in x.den.coeffs]}
    if isinstance(x, UPoly):
        return {"num": [str(c) for c in x.coeffs], "den": ["1"]}
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, MPoly):
        return encode_mpoly(x)
    raise TypeError(f"cannot encode {x!r}")


def _rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"inexact or invalid number {v!r}; use a string such as \"3/4\"")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational number: {v!r}") from None
    raise ParseError(f"expected a rational, got {v!r}")


def decode_scalar(v, poly: bool = False):
    """Decode a rational, or an element of Q(t) when ``poly`` is set."""
    if isinstance(v, dict):
        if not poly:
            raise ParseError("rational functions are not valid here")
        try:
            num = UPoly([_rational(c) for c in v["num"]])
            den = UPoly([_rational(c) for c in v.get("den", ["1"])])
        except (KeyError, TypeError):
            raise ParseError(f"bad rational function {v!r}") from None
        if not den:
            raise ParseError("zero denominator")
        return RatFunc(num, den)
    if isinstance(v, list):
        if not poly:
            raise ParseError("polynomials are not valid here")
        return RatFunc(UPoly([_rational(c) for c in v]))
    q = _rational(v)
    return RatFunc(q) if poly else q


def encode_mpoly(p) -> dict:
    if not isinstance(p, MPoly):
        p = MPoly.const(p) if p != 0 else MPoly()
    terms = [{"mono": {v: e for v, e in m}, "coeff": encode_scalar(c)} for m, c in p.sorted_terms()]
    return {"text": p.format(), "terms": terms}


# -- matrices and words -------------------------------------------------------


def encode_matrix(m) -> list:
    return [[encode_scalar(x) for x in row] for row in m]


def decode_matrix(v, poly: bool = False, size: int | None = None):
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise ParseError("a matrix is a non-empty list of rows")
    n = len(v)
    if any(len(r) != n for r in v) or (size is not None and n != size):
        raise ParseError("matrix has the wrong shape")
    return tuple(tuple(decode_scalar(x, poly) for x in row) for row in v)


def encode_word(w: RelRootWord) -> list:
    return [{"root": list(a), "u": [encode_scalar(x) for x in u]} for a, u in w.factors]


def decode_word(v, poly: bool = False) -> RelRootWord:
    if not isinstance(v, list):
        raise ParseError("a word is a list of {root, u} objects")
    out = []
    for item in v:
        try:
            root = tuple(int(c) for c in item["root"])
            u = item["u"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"bad word letter {item!r}") from None
        if not isinstance(u, list):
            u = [u]
        out.append((root, tuple(decode_scalar(x, poly) for x in u)))
    return RelRootWord(tuple(out))


# -- rings --------------------------------------------------------------------


def decode_pid(v):
    if v in (None, "ZZ", "Z"):
        return ZZ
    if isinstance(v, dict) and isinstance(v.get("var", "t"), str):
        return PolyPID(v.get("var", "t"))
    if isinstance(v, str) and v.startswith("QQ[") and v.endswith("]"):
        return PolyPID(v[3:-1])
    raise ParseError(f"unknown base PID {v!r}")


def decode_pid_element(pid, v):
    """An integer, or a polynomial given as a coefficient list / {"num": [...]}."""
    if pid is ZZ:
        q = _rational(v)
        if q.denominator != 1:
            raise ParseError(f"{v!r} is not an integer")
        return q.numerator
    x = decode_scalar(v, poly=True)
    if not x.is_polynomial():
        raise ParseError(f"{v!r} is not a polynomial")
    return x.num


def encode_pid_element(pid, a):
    if pid is ZZ:
        return str(a)
    return encode_scalar(RatFunc(a))


def decode_ring(pid, v) -> FractionRing:
    if not isinstance(v, dict):
        raise ParseError("a ring is {\"mode\": ..., \"gens\": [...]}")
    mode = v.get("mode", "allowed")
    if mode not in ("all", "allowed", "forbidden"):
        raise ParseError(f"unknown ring mode {mode!r}")
    gens = [decode_pid_element(pid, g) for g in v.get("gens", [])]
    return FractionRing(pid, mode, gens)
