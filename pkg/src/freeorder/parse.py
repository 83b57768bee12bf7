"""Text syntax for groups, orderings, elements and braids.

    group   := term (('*' | 'x') term)*      runs of one operator form one node
    term    := 'Z' | 'K' | '(' group ')'
    order   := 'std' | 'rev' | 'kleft' | 'default'
             | 'lex(' order (',' order)* ')' | 'bergman(' order (',' order)* ')'
             | 'pullback(' order ')' | 'veclex[' row (';' row)* ']'
    row     := '[' int (',' int)* ']'
    element := factor ('*' factor)*
    factor  := atom ['^' int]
    atom    := 'x' digits | '1' | '(' element (',' element)* ')'
    braid   := ('s' digits ['^-1' | '^1'])*  separated by spaces

Generators are numbered ``x1..xN`` across the leaves of the group, left to
right; the Klein bottle contributes ``y`` then ``x``. Mixed operators
associate to the left, so ``Z*ZxZ`` is ``(Z*Z) x Z``.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .braid import BraidWord
from .groups import (
    DirectProduct,
    FreeProduct,
    Integers,
    KleinBottle,
    ShapeMismatch,
    Word,
    _mul,
    generator,
    identity,
    num_generators,
    power,
)
from .orders import (
    Bergman,
    Certificate,
    Entry,
    IntRev,
    IntStd,
    KleinLeft,
    Lex,
    ProductPullback,
    VecLex,
    Verdict,
    default_order,
    leaf_at,
    validate,
)

__all__ = [
    "ParseError",
    "parse_group",
    "parse_order",
    "parse_element",
    "parse_braid",
    "format_group",
    "format_order",
    "format_element",
    "certificate_to_json",
    "certificate_from_json",
]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        if pos >= 0:
            message = f"{message} at position {pos}: {text[:pos]}<here>{text[pos:]}"
        super().__init__(message)
        self.pos = pos


class _Scanner:
    _token = re.compile(r"\s*(x\d+|s\d+|-?\d+|[A-Za-z]+|\^|\*|,|;|\(|\)|\[|\]|\S)")

    def __init__(self, text: str, token: re.Pattern | None = None):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        token = token or self._token
        while True:
            m = token.match(text, pos)
            if not m:
                break
            self.tokens.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    @property
    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def next(self) -> str:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", self.text, len(self.text))
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        pos = self.pos
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.text, pos)

    def integer(self) -> int:
        pos = self.pos
        tok = self.next()
        if not re.fullmatch(r"-?\d+", tok):
            raise ParseError(f"expected an integer, got {tok!r}", self.text, pos)
        return int(tok)

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.text, self.pos)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)


# -- groups -------------------------------------------------------------------


def parse_group(text: str):
    sc = _Scanner(text, re.compile(r"\s*(\S)"))
    G = _group(sc)
    sc.done()
    return G


def _build(op: str, children: list):
    return FreeProduct(children) if op == "*" else DirectProduct(children)


def _group(sc: _Scanner):
    acc_op, children = None, [_group_term(sc)]
    while sc.peek() in ("*", "x"):
        op = sc.next()
        term = _group_term(sc)
        if op == acc_op:
            children.append(term)
        else:
            if acc_op is not None:
                children = [_build(acc_op, children)]
            children.append(term)
            acc_op = op
    return children[0] if acc_op is None else _build(acc_op, children)


def _group_term(sc: _Scanner):
    pos = sc.pos
    tok = sc.next()
    if tok == "Z":
        return Integers()
    if tok == "K":
        return KleinBottle()
    if tok == "(":
        G = _group(sc)
        sc.expect(")")
        return G
    raise ParseError(f"expected a group, got {tok!r}", sc.text, pos)


def format_group(G, top: bool = True) -> str:
    if isinstance(G, Integers):
        return "Z"
    if isinstance(G, KleinBottle):
        return "K"
    op = "*" if isinstance(G, FreeProduct) else "x"
    body = op.join(format_group(c, False) for c in G.children)
    return body if top else f"({body})"


# -- orders -------------------------------------------------------------------


def parse_order(text: str, G):
    """Parse and validate an ordering of ``G``."""
    sc = _Scanner(text)
    o = _order(sc, G)
    sc.done()
    validate(o, G)
    return o


def _order_list(sc: _Scanner, groups) -> list:
    sc.expect("(")
    out = []
    for k, H in enumerate(groups):
        if k:
            sc.expect(",")
        out.append(_order(sc, H))
    sc.expect(")")
    return out


def _order(sc: _Scanner, G):
    pos = sc.pos
    tok = sc.next()
    if tok == "std":
        return IntStd()
    if tok == "rev":
        return IntRev()
    if tok == "kleft":
        return KleinLeft()
    if tok == "default":
        return default_order(G)
    if tok in ("lex", "bergman"):
        want = DirectProduct if tok == "lex" else FreeProduct
        if not isinstance(G, want):
            raise ShapeMismatch(f"{tok} does not order {format_group(G)}")
        children = _order_list(sc, G.children)
        return Lex(children) if tok == "lex" else Bergman(children)
    if tok == "pullback":
        if not isinstance(G, FreeProduct):
            raise ShapeMismatch(f"pullback does not order {format_group(G)}")
        sc.expect("(")
        inner = _order(sc, DirectProduct(G.children))
        sc.expect(")")
        return ProductPullback(inner)
    if tok == "veclex":
        sc.expect("[")
        rows = [_row(sc)]
        while sc.peek() == ";":
            sc.next()
            rows.append(_row(sc))
        sc.expect("]")
        return VecLex(rows)
    raise ParseError(f"expected an ordering, got {tok!r}", sc.text, pos)


def _row(sc: _Scanner) -> list[int]:
    sc.expect("[")
    row = [sc.integer()]
    while sc.peek() == ",":
        sc.next()
        row.append(sc.integer())
    sc.expect("]")
    return row


def format_order(o) -> str:
    return repr(o)


# -- elements -----------------------------------------------------------------


def parse_element(text: str, G, offset: int = 0):
    """Parse an element of ``G``; ``offset`` shifts generator numbering for subgroups."""
    sc = _Scanner(text)
    ast = _expr(sc)
    sc.done()
    return _eval(ast, G, offset, sc)


def _expr(sc: _Scanner):
    factors = [_factor(sc)]
    while sc.peek() == "*":
        sc.next()
        factors.append(_factor(sc))
    return ("prod", factors)


def _factor(sc: _Scanner):
    atom = _atom(sc)
    if sc.peek() == "^":
        sc.next()
        return ("pow", atom, sc.integer())
    return atom


def _atom(sc: _Scanner):
    pos = sc.pos
    tok = sc.next()
    if tok == "1":
        return ("one",)
    if re.fullmatch(r"x\d+", tok):
        return ("gen", int(tok[1:]), pos)
    if tok == "(":
        entries = [_expr(sc)]
        while sc.peek() == ",":
            sc.next()
            entries.append(_expr(sc))
        sc.expect(")")
        return ("tuple", entries, pos) if len(entries) > 1 else entries[0]
    raise ParseError(f"expected an element, got {tok!r}", sc.text, pos)


def _gens(ast) -> set[int]:
    kind = ast[0]
    if kind == "gen":
        return {ast[1]}
    if kind == "one":
        return set()
    if kind == "pow":
        return _gens(ast[1])
    return set().union(*(_gens(a) for a in ast[1]))


def _eval(ast, G, offset: int, sc: _Scanner):
    kind = ast[0]
    if kind == "one":
        return identity(G)
    if kind == "gen":
        i = ast[1] - offset
        if not 1 <= i <= num_generators(G):
            raise ParseError(f"generator x{ast[1]} is not in this group", sc.text, ast[2])
        return generator(G, i)
    if kind == "pow":
        return power(G, _eval(ast[1], G, offset, sc), ast[2])
    if kind == "prod":
        out = identity(G)
        for a in ast[1]:
            out = _mul(G, out, _eval(a, G, offset, sc))
        return out
    # tuple literal
    entries, pos = ast[1], ast[2]
    if isinstance(G, DirectProduct) and len(G.children) == len(entries):
        out, off = [], offset
        for a, c in zip(entries, G.children):
            n = num_generators(c)
            if any(not off < g <= off + n for g in _gens(a)):
                raise ParseError("tuple entry uses a generator of another factor", sc.text, pos)
            out.append(_eval(a, c, off, sc))
            off += n
        return tuple(out)
    gens = _gens(ast)
    if not gens:
        return identity(G)
    if isinstance(G, (DirectProduct, FreeProduct)):
        off = offset
        for i, c in enumerate(G.children):
            n = num_generators(c)
            if all(off < g <= off + n for g in gens):
                e = _eval(ast, c, off, sc)
                if isinstance(G, FreeProduct):
                    return Word([(i, e)]) if e != identity(c) else Word()
                parts = [identity(d) for d in G.children]
                parts[i] = e
                return tuple(parts)
            off += n
    raise ParseError(f"tuple of {len(entries)} does not fit {format_group(G)}", sc.text, pos)


def format_element(G, e, offset: int = 0) -> str:
    parts = _element_parts(G, e, offset)
    return "*".join(parts) if parts else "1"


def _pow(i: int, k: int) -> str:
    return f"x{i}" if k == 1 else f"x{i}^{k}"


def _element_parts(G, e, offset: int) -> list[str]:
    if isinstance(G, Integers):
        return [_pow(offset + 1, e)] if e else []
    if isinstance(G, KleinBottle):
        out = []
        if e.m:
            out.append(_pow(offset + 1, e.m))
        if e.n:
            out.append(_pow(offset + 2, e.n))
        return out
    if isinstance(G, DirectProduct):
        if e == identity(G):
            return []
        entries, off = [], offset
        for c, a in zip(G.children, e):
            entries.append(format_element(c, a, off))
            off += num_generators(c)
        return ["(" + ", ".join(entries) + ")"]
    out = []
    offs = [offset]
    for c in G.children:
        offs.append(offs[-1] + num_generators(c))
    for i, a in e:
        out.extend(_element_parts(G.children[i], a, offs[i]))
    return out


# -- braids -------------------------------------------------------------------


def parse_braid(text: str, n: int) -> BraidWord:
    letters = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        if tok == "1":
            continue
        lm = re.fullmatch(r"s(\d+)(?:\^(-?1))?", tok)
        if not lm:
            raise ParseError(f"bad braid letter {tok!r}", text, m.start())
        i, e = int(lm.group(1)), int(lm.group(2) or 1)
        if not 1 <= i <= n - 1:
            raise ParseError(f"s{i} needs at least {i + 1} strands", text, m.start())
        letters.append((i, e))
    return BraidWord(n, letters)


# -- certificates -------------------------------------------------------------

_VERDICT_NAMES = {Verdict.LESS: "Less", Verdict.EQUAL: "Equal", Verdict.GREATER: "Greater"}


def _leaf_text(o, G, path, e) -> str:
    _, H, offset = leaf_at(o, G, path)
    return format_element(H, e, offset)


def certificate_to_json(cert: Certificate, o, G, **extra: Any) -> str:
    entries = [
        {
            "leaf": list(e.leaf),
            "lhs": _leaf_text(o, G, e.leaf, e.lhs),
            "rhs": _leaf_text(o, G, e.leaf, e.rhs),
            "verdict": _VERDICT_NAMES[e.verdict],
        }
        for e in cert.entries
    ]
    return json.dumps({**extra, "entries": entries}, indent=2)


def certificate_from_json(text: str, o, G) -> Certificate:
    data = json.loads(text)
    names = {v: k for k, v in _VERDICT_NAMES.items()}
    entries = []
    for item in data["entries"]:
        path = tuple(item["leaf"])
        _, H, offset = leaf_at(o, G, path)
        entries.append(
            Entry(
                path,
                parse_element(item["lhs"], H, offset),
                parse_element(item["rhs"], H, offset),
                names[item["verdict"]],
            )
        )
    return Certificate(entries)
