"""Ordering descriptors, the comparison oracle and comparison certificates.

An ordering descriptor is a tree mirroring a group descriptor. Leaves order
the base groups (``IntStd``, ``IntRev``, ``VecLex``, ``KleinLeft``); inner
nodes build orders of products (``Lex``) and free products (``Bergman``,
``ProductPullback``).

Every base-group comparison made while evaluating :func:`compare` can be
logged through a :class:`Recorder`. The resulting :class:`Certificate` is
enough to re-derive the verdict without touching the base orders again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .groups import (
    DirectProduct,
    FreeProduct,
    Integers,
    KleinBottle,
    ShapeMismatch,
    _inv,
    _mul,
    check_element,
    identity,
)

__all__ = [
    "Verdict",
    "DegenerateVecLex",
    "MissingAnswer",
    "IntStd",
    "IntRev",
    "Lex",
    "VecLex",
    "KleinLeft",
    "Bergman",
    "ProductPullback",
    "default_order",
    "validate",
    "compare",
    "is_bi_invariant",
    "leaf_paths",
    "leaf_at",
    "Entry",
    "Certificate",
    "Recorder",
    "holds_under",
    "replay",
]


class Verdict(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __neg__(self) -> "Verdict":
        return Verdict(-int(self))


class DegenerateVecLex(ValueError):
    """VecLex rows do not span, so the result would only be a partial order."""


class MissingAnswer(LookupError):
    """A replayed comparison needed a base comparison absent from the certificate."""


# -- descriptors --------------------------------------------------------------


@dataclass(frozen=True)
class IntStd:
    def __repr__(self) -> str:
        return "std"


@dataclass(frozen=True)
class IntRev:
    def __repr__(self) -> str:
        return "rev"


@dataclass(frozen=True)
class KleinLeft:
    """Left-only order on the Klein bottle: ``y^m x^n > 1`` iff ``n > 0``, or ``n == 0`` and ``m > 0``."""

    def __repr__(self) -> str:
        return "kleft"


@dataclass(frozen=True)
class VecLex:
    """Order on Z^n comparing dot products with each row in turn."""

    rows: tuple

    def __init__(self, rows: Sequence[Sequence[int]]):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in rows))

    def __repr__(self) -> str:
        return "veclex[" + ";".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"


@dataclass(frozen=True)
class Lex:
    children: tuple

    def __init__(self, children: Sequence):
        object.__setattr__(self, "children", tuple(children))

    def __repr__(self) -> str:
        return "lex(" + ",".join(map(repr, self.children)) + ")"


@dataclass(frozen=True)
class Bergman:
    """Matrix ordering of a free product; more than two children nest to the left."""

    children: tuple

    def __init__(self, children: Sequence):
        object.__setattr__(self, "children", tuple(children))

    def __repr__(self) -> str:
        return "bergman(" + ",".join(map(repr, self.children)) + ")"


@dataclass(frozen=True)
class ProductPullback:
    """Matrix ordering of a two-factor free product driven by any order of the direct product."""

    product_order: Any

    def __repr__(self) -> str:
        return f"pullback({self.product_order!r})"


LEAVES = (IntStd, IntRev, VecLex, KleinLeft)


def default_order(G) -> Any:
    if isinstance(G, Integers):
        return IntStd()
    if isinstance(G, KleinBottle):
        return KleinLeft()
    if isinstance(G, DirectProduct):
        return Lex([default_order(c) for c in G.children])
    if isinstance(G, FreeProduct):
        return Bergman([default_order(c) for c in G.children])
    raise ShapeMismatch(f"not a group descriptor: {G!r}")


# -- validation ---------------------------------------------------------------


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def validate(o, G) -> None:
    """Raise ShapeMismatch or DegenerateVecLex if ``o`` is not an ordering of ``G``."""
    if isinstance(o, (IntStd, IntRev)):
        if not isinstance(G, Integers):
            raise ShapeMismatch(f"{o!r} orders Z, not {G!r}")
    elif isinstance(o, KleinLeft):
        if not isinstance(G, KleinBottle):
            raise ShapeMismatch(f"kleft orders K, not {G!r}")
    elif isinstance(o, VecLex):
        if not isinstance(G, DirectProduct) or not all(
            isinstance(c, Integers) for c in G.children
        ):
            raise ShapeMismatch(f"veclex needs a direct product of copies of Z, not {G!r}")
        n = len(G.children)
        if not o.rows or any(len(r) != n for r in o.rows):
            raise ShapeMismatch(f"veclex rows must have length {n}")
        if _rank(o.rows) < n:
            raise DegenerateVecLex(f"rows {list(map(list, o.rows))} do not span Q^{n}")
    elif isinstance(o, Lex):
        if not isinstance(G, DirectProduct):
            raise ShapeMismatch(f"lex needs a direct product, not {G!r}")
        if len(o.children) != len(G.children):
            raise ShapeMismatch("lex arity does not match the direct product")
        for c, d in zip(o.children, G.children):
            validate(c, d)
    elif isinstance(o, Bergman):
        if not isinstance(G, FreeProduct):
            raise ShapeMismatch(f"bergman needs a free product, not {G!r}")
        if len(o.children) != len(G.children):
            raise ShapeMismatch("bergman arity does not match the free product")
        for c, d in zip(o.children, G.children):
            validate(c, d)
    elif isinstance(o, ProductPullback):
        if not isinstance(G, FreeProduct) or len(G.children) != 2:
            raise ShapeMismatch("pullback needs a free product of two groups")
        validate(o.product_order, DirectProduct(G.children))
    else:
        raise ShapeMismatch(f"not an ordering descriptor: {o!r}")


def is_bi_invariant(o) -> bool:
    if isinstance(o, KleinLeft):
        return False
    if isinstance(o, LEAVES):
        return True
    if isinstance(o, ProductPullback):
        return is_bi_invariant(o.product_order)
    return all(is_bi_invariant(c) for c in o.children)


# -- leaves -------------------------------------------------------------------


def _sign(x) -> Verdict:
    return Verdict((x > 0) - (x < 0))


def _klein_positive(e) -> bool:
    return e.n > 0 or (e.n == 0 and e.m > 0)


def _leaf_compare(o, u, v) -> Verdict:
    if isinstance(o, IntStd):
        return _sign(u - v)
    if isinstance(o, IntRev):
        return _sign(v - u)
    if isinstance(o, VecLex):
        for row in o.rows:
            d = sum(r * (a - b) for r, a, b in zip(row, u, v))
            if d:
                return _sign(d)
        return Verdict.EQUAL
    if isinstance(o, KleinLeft):
        d = _mul(KleinBottle(), _inv(KleinBottle(), u), v)
        if d == (0, 0):
            return Verdict.EQUAL
        return Verdict.LESS if _klein_positive(d) else Verdict.GREATER
    raise ShapeMismatch(f"not a base ordering: {o!r}")


def leaf_paths(o, path: tuple = ()) -> list[tuple]:
    if isinstance(o, LEAVES):
        return [path]
    if isinstance(o, ProductPullback):
        return leaf_paths(o.product_order, path + (0,))
    out = []
    for i, c in enumerate(o.children):
        out.extend(leaf_paths(c, path + (i,)))
    return out


def leaf_at(o, G, path: Sequence[int]) -> tuple:
    """Resolve a leaf path to ``(base order, base group, generator offset)``."""
    from .groups import num_generators

    offset = 0
    for i in path:
        if isinstance(o, ProductPullback):
            if i != 0:
                raise ShapeMismatch(f"bad leaf path {tuple(path)}")
            o, G = o.product_order, DirectProduct(G.children)
            continue
        if isinstance(o, LEAVES) or not 0 <= i < len(o.children):
            raise ShapeMismatch(f"bad leaf path {tuple(path)}")
        offset += sum(num_generators(c) for c in G.children[:i])
        o, G = o.children[i], G.children[i]
    if not isinstance(o, LEAVES):
        raise ShapeMismatch(f"path {tuple(path)} does not end at a base ordering")
    return o, G, offset


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    leaf: tuple
    lhs: Any
    rhs: Any
    verdict: Verdict


@dataclass
class Certificate:
    entries: list = field(default_factory=list)

    def lookup(self) -> dict:
        return {(e.leaf, e.lhs, e.rhs): e.verdict for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)


class Recorder:
    """Per-call context that logs base comparisons, or answers them from a certificate.

    With ``answers`` given, nothing is ever computed: every query must be
    found in the certificate, otherwise MissingAnswer is raised.
    """

    def __init__(self, answers: Certificate | None = None):
        self.certificate = Certificate()
        self.fresh = 0
        self._seen: dict = {}
        self._answers = answers.lookup() if answers is not None else None

    def ask(self, path: tuple, o, u, v) -> Verdict:
        key = (path, u, v)
        if key in self._seen:
            return self._seen[key]
        if self._answers is not None:
            try:
                verdict = self._answers[key]
            except KeyError:
                raise MissingAnswer(f"no answer for leaf {path}: {u!r} vs {v!r}") from None
        else:
            verdict = _leaf_compare(o, u, v)
            self.fresh += 1
        self._seen[key] = verdict
        self.certificate.entries.append(Entry(path, u, v, verdict))
        return verdict


# -- comparison ---------------------------------------------------------------


def _cmp(o, G, u, v, ctx: Recorder | None, path: tuple) -> Verdict:
    if u == v:
        return Verdict.EQUAL
    if ctx is None:
        return _cmp_cached(o, G, u, v)
    return _cmp_uncached(o, G, u, v, ctx, path)


@lru_cache(maxsize=1 << 18)
def _cmp_cached(o, G, u, v) -> Verdict:
    return _cmp_uncached(o, G, u, v, None, ())


def _cmp_uncached(o, G, u, v, ctx, path) -> Verdict:
    if isinstance(o, LEAVES):
        if ctx is None:
            return _leaf_compare(o, u, v)
        return ctx.ask(path, o, u, v)
    if isinstance(o, Lex):
        for i, (c, d) in enumerate(zip(o.children, G.children)):
            r = _cmp(c, d, u[i], v[i], ctx, path + (i,))
            if r:
                return r
        return Verdict.EQUAL
    from . import coproduct

    if isinstance(o, Bergman):
        return coproduct._bergman_cmp(o, G, u, v, ctx, path)
    if isinstance(o, ProductPullback):
        return coproduct._pullback_cmp(o, G, u, v, ctx, path)
    raise ShapeMismatch(f"not an ordering descriptor: {o!r}")


def compare(o, G, u, v, ctx: Recorder | None = None) -> Verdict:
    """Compare ``u`` with ``v`` under ``o``; base comparisons are logged to ``ctx``."""
    check_element(G, u)
    check_element(G, v)
    return _cmp(o, G, u, v, ctx, ())


def sign(o, G, u, ctx: Recorder | None = None) -> Verdict:
    """Position of ``u`` relative to the identity (GREATER means positive)."""
    return -compare(o, G, identity(G), u, ctx)


def holds_under(cert: Certificate, o, G) -> bool:
    """True if every entry of ``cert`` is what ``o`` itself answers at that leaf."""
    for e in cert.entries:
        leaf, _, _ = leaf_at(o, G, e.leaf)
        if _leaf_compare(leaf, e.lhs, e.rhs) != e.verdict:
            return False
    return True


def replay(cert: Certificate, o, G, u, v) -> Verdict:
    """Recompute a verdict answering base comparisons only from ``cert``."""
    ctx = Recorder(answers=cert)
    verdict = compare(o, G, u, v, ctx)
    assert ctx.fresh == 0
    return verdict
