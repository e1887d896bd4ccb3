"""Command-line interface: ``relpatch <command> [--input F] [--output F]``.

Every command reads one JSON document (file or stdin) and writes one JSON
document with sorted keys.  Exit codes: 0 success, 1 domain error, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import matrices as mx
from .dvr import DvrContext, decompose_GK, iwasawa_decompose
from .errors import AlgebraError, ParseError
from .factorization import SubringPair, factor_ep_word
from .groups import GroupDescriptor
from .patching import PatchingDatum, trivialize_cocycle
from .relroots import relative_projection
from .rings import ZZ
from .roots import DiagramAutomorphism, automorphism_group, build_root_system
from .selftest import run_selftest
from .serialize import (
    decode_matrix,
    decode_pid,
    decode_pid_element,
    decode_ring,
    decode_scalar,
    decode_word,
    dumps,
    encode_matrix,
    encode_mpoly,
    encode_pid_element,
    encode_scalar,
    encode_word,
    loads,
)
from .subschemes import get_context, opposite_rays


def _req(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{what} must be an integer")
    return v


def parse_J(v, rank: int) -> tuple[int, ...]:
    """Simple roots by 1-based label: "a2" or 2 both mean alpha_2."""
    if not isinstance(v, list):
        raise ParseError("J must be a list of simple-root labels")
    out = []
    for item in v:
        if isinstance(item, str) and item[:1].lower() == "a" and item[1:].isdigit():
            k = int(item[1:])
        elif isinstance(item, int) and not isinstance(item, bool):
            k = item
        else:
            raise ParseError(f"bad simple-root label {item!r}")
        if not 1 <= k <= rank:
            raise ParseError(f"simple-root label {item!r} out of range 1..{rank}")
        out.append(k - 1)
    return tuple(sorted(set(out)))


def parse_group(v) -> GroupDescriptor:
    family = _req(v, "family")
    size = _int(_req(v, "size"), "group size")
    if not isinstance(family, str):
        raise ParseError("group family must be a string")
    return GroupDescriptor(family, size)


def _context(doc):
    G = parse_group(_req(doc, "group"))
    rank = G.root_system.rank
    J = parse_J(doc["J"], rank) if "J" in doc else tuple(range(rank))
    return G, get_context(G, J)


def _label(J) -> list[str]:
    return [f"a{j + 1}" for j in J]


# -- commands -------------------------------------------------------------------------


def cmd_relroots(doc) -> dict:
    type_ = _req(doc, "type")
    rank = _int(_req(doc, "rank"), "rank")
    if not isinstance(type_, str):
        raise ParseError("type must be a string")
    rs = build_root_system(type_, rank)
    J = parse_J(_req(doc, "J"), rank)
    gamma_arg = doc.get("Gamma", "trivial")
    if gamma_arg == "trivial":
        gamma = []
    elif gamma_arg == "full":
        gamma = automorphism_group(rs)
    elif isinstance(gamma_arg, list):
        gamma = []
        for perm in gamma_arg:
            if not isinstance(perm, list) or sorted(perm) != list(range(1, rank + 1)):
                raise ParseError("each Gamma generator is a permutation of 1..rank")
            gamma.append(DiagramAutomorphism(tuple(p - 1 for p in perm)))
    else:
        raise ParseError("Gamma must be \"trivial\", \"full\" or a list of permutations")
    datum = relative_projection(rs, J, gamma)
    roots = []
    for a in datum.relative_roots:
        roots.append({
            "root": list(a),
            "height": datum.relative_height(a),
            "fiber_size": len(datum.fiber(a)),
            "fiber_sizes": {str(i): n for i, n in datum.fiber_sizes(a).items()},
            "fiber": [list(datum.source.simple_coords(r)) for r in datum.fiber(a)],
        })
    return {
        "system": rs.name,
        "J": _label(J),
        "orbits": [_label(o) for o in datum.orbits],
        "relative_rank": datum.rank,
        "size": len(datum.relative_roots),
        "relative_roots": roots,
    }


def _poly_table(polys) -> list:
    return [encode_mpoly(p) for p in polys]


def cmd_table(doc) -> dict:
    G, ctx = _context(doc)
    roots = ctx.relative_roots
    q = []
    for a in roots:
        for i, polys in sorted(ctx.derive_q(a).items()):
            q.append({"alpha": list(a), "i": i, "coeffs": _poly_table(polys)})
    N = []
    for a in roots:
        for b in roots:
            if a == b or opposite_rays(a, b):
                continue
            for (i, j), polys in sorted(ctx.derive_N(a, b).items()):
                N.append({"alpha": list(a), "beta": list(b), "i": i, "j": j, "coeffs": _poly_table(polys)})
    out = {
        "group": G.name,
        "J": _label(ctx.datum.J),
        "relative_roots": [{"root": list(a), "rank": ctx.rank(a)} for a in roots],
        "q": q,
        "N": N,
    }
    if "g" in doc:
        g = decode_matrix(doc["g"], size=G.size)
        g_inv = mx.mat_inverse(g)
        phi = []
        for a in roots:
            for i, polys in sorted(ctx.conj_phi(g, a, g_inv).items()):
                phi.append({"alpha": list(a), "i": i, "coeffs": _poly_table(polys)})
        out["phi"] = phi
    return out


def _parse_pair(v):
    pid = decode_pid(v.get("pid") if isinstance(v, dict) else None)
    B = decode_ring(pid, _req(v, "B"))
    A = decode_ring(pid, _req(v, "A"))
    h = decode_scalar(_req(v, "h"), poly=pid is not ZZ)
    return pid, SubringPair(B, A, h)


def cmd_factor(doc) -> dict:
    G, ctx = _context(doc)
    pid, pair = _parse_pair(_req(doc, "pair"))
    word = decode_word(_req(doc, "word"), poly=pid is not ZZ)
    res = factor_ep_word(pair, ctx, word)
    return {
        "group": G.name,
        "pair": pair.describe(),
        "degenerate": pair.degenerate,
        "y": encode_matrix(res.y),
        "z": encode_word(res.z),
        "transcript": [{k: (list(v) if isinstance(v, tuple) else v) for k, v in s.items()}
                       for s in res.transcript],
        "verified": True,
    }


def cmd_iwasawa(doc) -> dict:
    G = parse_group(_req(doc, "group"))
    pid = decode_pid(doc.get("pid"))
    prime = decode_pid_element(pid, _req(doc, "prime"))
    dvr = DvrContext(pid, prime)
    x = decode_matrix(_req(doc, "matrix"), poly=pid is not ZZ, size=G.size)
    res = iwasawa_decompose(dvr, G, x)
    y, z = decompose_GK(dvr, G, x)
    return {
        "group": G.name,
        "O": str(dvr.O),
        "y": encode_matrix(y),
        "t": encode_matrix(res.t),
        "word": encode_word(z),
        "fallback": res.fallback,
    }


def cmd_patch(doc) -> dict:
    G = parse_group(_req(doc, "group"))
    pid = decode_pid(doc.get("pid"))
    primes = [decode_pid_element(pid, p) for p in _req(doc, "primes")]
    if not primes:
        raise ParseError("at least one prime is required")
    # "m" names the prime itself; "m_index" picks by position (default 0)
    if "m" not in doc:
        index = _int(doc.get("m_index", 0), "m_index")
    else:
        m = doc["m"]
        target = pid.normalize(decode_pid_element(pid, m))
        normalized = [pid.normalize(p) for p in primes]
        if target not in normalized:
            raise ParseError("m must be one of the primes")
        index = normalized.index(target)
    x = decode_matrix(_req(doc, "cocycle"), poly=pid is not ZZ, size=G.size)
    datum = PatchingDatum(pid, tuple(primes), index, G, x)
    t = trivialize_cocycle(datum)
    return {
        "group": G.name,
        "B": str(datum.B),
        "A": str(datum.A),
        "Bf": str(datum.Bf),
        "f": encode_scalar(datum.f),
        "m": encode_pid_element(pid, datum.m),
        "g1": encode_matrix(t.g1),
        "g2": encode_word(t.g2),
        "certificate": t.certificate,
    }


COMMANDS = {
    "relroots": cmd_relroots,
    "table": cmd_table,
    "factor": cmd_factor,
    "iwasawa": cmd_iwasawa,
    "patch": cmd_patch,
}


def run(command: str, text: str | None, seed: int = 0, trials: int | None = None,
        criteria=None) -> tuple[str, int]:
    """Execute one command; returns (output document, exit code)."""
    try:
        if command == "selftest":
            report = run_selftest(seed, trials, criteria)
            return dumps(report), 0 if report["passed"] else 1
        doc = loads(text if text is not None else "")
        if not isinstance(doc, dict):
            raise ParseError("the input document must be a JSON object")
        return dumps(COMMANDS[command](doc)), 0
    except ParseError as exc:
        return dumps({"error": {"type": "ParseError", "message": str(exc)}}), 2
    except (AlgebraError, ZeroDivisionError) as exc:
        return dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}), 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relpatch", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(list(COMMANDS) + ["selftest"]))
    parser.add_argument("--input", help="input JSON file (default: stdin)")
    parser.add_argument("--output", help="output file (default: stdout)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized trials")
    parser.add_argument("--trials", type=int, default=None, help="override trial counts")
    parser.add_argument("--criteria", type=int, nargs="*", help="selftest: run only these criteria")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    text = None
    if args.command != "selftest":
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    out, code = run(args.command, text, args.seed, args.trials, args.criteria)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
