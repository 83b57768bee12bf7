"""Command line front end.

Exit codes: 0 success, 1 parse or validation error, 2 internal invariant
violation, 3 braid-check counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .braid import artin_apply, check_order_preserving, free_group
from .coproduct import find_distinguishing_witness
from .groups import FreeProduct, ShapeMismatch, alpha, encode, num_generators
from .orders import DegenerateVecLex, MissingAnswer, Recorder, Verdict, compare, holds_under, replay, sign
from .parse import (
    ParseError,
    certificate_from_json,
    certificate_to_json,
    format_element,
    parse_braid,
    parse_element,
    parse_group,
    parse_order,
)
from .polymatrix import rho

SYMBOL = {Verdict.LESS: "<", Verdict.EQUAL: "=", Verdict.GREATER: ">"}
SIGN_WORD = {Verdict.LESS: "negative", Verdict.EQUAL: "identity", Verdict.GREATER: "positive"}


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _group(args):
    if args.group:
        return parse_group(args.group)
    if getattr(args, "strands", None):
        return free_group(args.strands)
    raise ParseError("--group is required")


def cmd_compare(args) -> int:
    G = _group(args)
    o = parse_order(args.order, G)
    u = parse_element(args.lhs, G)
    v = parse_element(args.rhs, G)
    if args.replay:
        with open(args.replay) as fh:
            cert = certificate_from_json(fh.read(), o, G)
        if not holds_under(cert, o, G):
            raise ValueError("certificate entries do not hold under this ordering")
        verdict = replay(cert, o, G, u, v)
        ctx = None
    else:
        ctx = Recorder()
        verdict = compare(o, G, u, v, ctx)
    text = f"LHS {SYMBOL[verdict]} RHS"
    payload = {"lhs": format_element(G, u), "rhs": format_element(G, v), "verdict": verdict.name.title()}
    if args.certificate and ctx is not None:
        doc = certificate_to_json(ctx.certificate, o, G, **payload)
        if args.certificate == "-":
            if args.format == "text":
                print(text)
            print(doc)
            return 0
        with open(args.certificate, "w") as fh:
            fh.write(doc + "\n")
    _emit(args, text, payload)
    return 0


def cmd_sign(args) -> int:
    G = _group(args)
    o = parse_order(args.order, G)
    e = parse_element(args.elem, G)
    s = sign(o, G, e)
    _emit(args, SIGN_WORD[s], {"elem": format_element(G, e), "sign": SIGN_WORD[s]})
    return 0


def cmd_alpha(args) -> int:
    G = _group(args)
    if not isinstance(G, FreeProduct):
        raise ShapeMismatch("alpha needs a free product")
    e = parse_element(args.elem, G)
    parts, off = [], 0
    for c, x in zip(G.children, alpha(G, e)):
        parts.append(format_element(c, x, off))
        off += num_generators(c)
    _emit(args, "(" + ", ".join(parts) + ")", {"elem": format_element(G, e), "alpha": parts})
    return 0


def _poly_text(p, carrier) -> str:
    terms = []
    for d, c in enumerate(p.coeffs):
        for g, k in sorted(c.terms.items(), key=lambda t: encode(t[0])):
            key = format_element(carrier, g)
            t = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            terms.append(f"{k:+d}*{key}" + (f"*{t}" if t else ""))
    return " ".join(terms) if terms else "0"


def cmd_rho(args) -> int:
    G = _group(args)
    e = parse_element(args.elem, G)
    M = rho(G, e)
    names = ("e11", "e12", "e21", "e22")
    entries = {n: _poly_text(getattr(M, n), M.carrier) for n in names}
    text = "\n".join(f"{n}: {entries[n]}" for n in names)
    _emit(args, text, {"elem": format_element(G, e), **entries})
    return 0


def cmd_braid_act(args) -> int:
    G = _group(args)
    b = parse_braid(args.braid, args.strands)
    e = parse_element(args.elem, G)
    img = artin_apply(b, e, G)
    _emit(args, format_element(G, img), {"elem": format_element(G, e), "image": format_element(G, img)})
    return 0


def cmd_braid_check(args) -> int:
    G = _group(args)
    b = parse_braid(args.braid, args.strands)
    o = parse_order(args.order, G)
    res = check_order_preserving(b, o, G, args.max_syllables, args.exp_bound)
    if res.passed:
        _emit(args, "PASS", {"result": "PASS", "checked": res.checked})
        return 0
    u, v = res.counterexample
    fu, fv = format_element(G, u), format_element(G, v)
    _emit(args, f"COUNTEREXAMPLE {fu} < {fv}",
          {"result": "COUNTEREXAMPLE", "lhs": fu, "rhs": fv, "checked": res.checked})
    return 3


def cmd_witness(args) -> int:
    G = _group(args)
    o = parse_order(args.order, G)
    o2 = parse_order(args.other_order, G)
    w = find_distinguishing_witness(o, o2, G, args.max_syllables, args.exp_bound)
    text = "none" if w is None else format_element(G, w)
    _emit(args, text, {"witness": None if w is None else text})
    return 0


def cmd_selftest(args) -> int:
    s = acceptance.Settings(args.max_syllables, args.exp_bound, args.seed)
    results = acceptance.run_all(s, report=None if args.format == "json" else print)
    if args.format == "json":
        print(json.dumps([r.__dict__ for r in results], indent=2))
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freeorder", description="Orderings of free products of ordered groups.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, func, *flags, **defaults):
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=["text", "json"], default="text")
        for flag in flags:
            if flag == "group":
                sp.add_argument("--group", help='group expression, e.g. "Z*Z"')
            elif flag == "order":
                sp.add_argument("--order", default="default", help='ordering, e.g. "bergman(std,rev)"')
            elif flag == "strands":
                sp.add_argument("--strands", type=int, required=True)
            elif flag == "bounds":
                sp.add_argument("--max-syllables", type=int, default=defaults.get("max_syllables", 3))
                sp.add_argument("--exp-bound", type=int, default=2)
            else:
                sp.add_argument(f"--{flag}", required=True)
        return sp

    sp = add("compare", cmd_compare, "group", "order", "lhs", "rhs")
    sp.add_argument("--certificate", nargs="?", const="-", help="write the JSON certificate (default stdout)")
    sp.add_argument("--replay", help="answer base comparisons from a certificate file")
    add("sign", cmd_sign, "group", "order", "elem")
    add("alpha", cmd_alpha, "group", "elem")
    add("rho", cmd_rho, "group", "elem")
    add("braid-act", cmd_braid_act, "strands", "group", "braid", "elem")
    add("braid-check", cmd_braid_check, "strands", "group", "braid", "order", "bounds")
    sp = add("witness", cmd_witness, "group", "order", "bounds", max_syllables=4)
    sp.add_argument("--other-order", required=True)
    sp = add("selftest", cmd_selftest, "bounds")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ShapeMismatch, DegenerateVecLex, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MissingAnswer, AssertionError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
