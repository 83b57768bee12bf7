"""Braid words, the Artin action on free groups, and order-preservation sampling.

The free group F_n is any free product whose atoms are ``n`` copies of Z
(flat ``Z * ... * Z`` or any bracketing of it); generator ``x<i>`` is atom
``i``. The action uses the convention

    s_i:      x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i
    s_i^-1:   x_i -> x_{i+1},             x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}

and letters of a braid word are applied one after another, first letter first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from .groups import (
    FreeProduct,
    Integers,
    ShapeMismatch,
    Word,
    Z,
    _mul,
    atoms,
    check_element,
    flatten,
    power,
    reduced_words,
    unflatten,
)
from .orders import compare, validate

__all__ = [
    "BraidWord",
    "free_group",
    "artin_apply",
    "braid_tensor",
    "OrderCheck",
    "check_order_preserving",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __init__(self, strands: int, letters: Sequence[tuple[int, int]] = ()):
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in letters))
        if strands < 1:
            raise ValueError("a braid needs at least one strand")
        for i, e in self.letters:
            if not 1 <= i <= strands - 1 or e not in (1, -1):
                raise ValueError(f"bad braid letter s{i}^{e} on {strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, [(i, -e) for i, e in reversed(self.letters)])

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("braids on different numbers of strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)


def free_group(n: int) -> FreeProduct:
    """Flat ``Z * ... * Z`` with ``n`` factors (``n >= 2``)."""
    return FreeProduct([Z] * n)


def _gen(i: int, k: int = 1) -> Word:
    return Word([(i, k)]) if k else Word()


@functools.lru_cache(maxsize=None)
def _letter_images(n: int, i: int, e: int) -> tuple:
    F = free_group(n)
    a, b = i - 1, i  # zero-based x_i, x_{i+1}
    images = [_gen(j) for j in range(n)]
    if e == 1:
        images[a] = _mul(F, _mul(F, _gen(a), _gen(b)), _gen(a, -1))
        images[b] = _gen(a)
    else:
        images[a] = _gen(b)
        images[b] = _mul(F, _mul(F, _gen(b, -1), _gen(a)), _gen(b))
    return tuple(images)


def _substitute(n: int, images: tuple, flat_word) -> Word:
    F = free_group(n)
    out = Word()
    for j, k in flat_word:
        out = _mul(F, out, power(F, images[j], k))
    return out


def _check_free(G, n: int) -> None:
    if not isinstance(G, FreeProduct):
        raise ShapeMismatch("the Artin action needs a free group")
    from .groups import _resolve

    leaves = [_resolve(G, p) for p in atoms(G)]
    if len(leaves) != n or not all(isinstance(c, Integers) for c in leaves):
        raise ShapeMismatch(f"expected a free group of rank {n}, got {G!r}")


def artin_apply(b: BraidWord, w, G=None):
    """Image of ``w`` under the automorphism of ``b``.

    ``G`` defaults to the flat free group of rank ``b.strands``; any other
    bracketing of the same free group is accepted and preserved.
    """
    n = b.strands
    if n == 1:
        if G is not None and not isinstance(G, Integers):
            raise ShapeMismatch("a one-strand braid acts on Z")
        check_element(Z, w)
        return w
    if G is None:
        G = free_group(n)
    _check_free(G, n)
    check_element(G, w)
    cur = Word(flatten(G, w))
    for i, e in b.letters:
        cur = _substitute(n, _letter_images(n, i, e), cur)
    return unflatten(G, list(cur))


def braid_tensor(a: BraidWord, b: BraidWord) -> BraidWord:
    """Side-by-side braid on ``a.strands + b.strands`` strands."""
    m = a.strands
    return BraidWord(m + b.strands, a.letters + tuple((i + m, e) for i, e in b.letters))


@dataclass
class OrderCheck:
    passed: bool
    checked: int
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def check_order_preserving(b: BraidWord, o, G=None, max_syllables: int = 3, exp_bound: int = 2, samples=None) -> OrderCheck:
    """Sample whether ``u < v`` implies ``b(u) < b(v)`` on bounded words.

    A pass only covers the sampled words. A counterexample ``(u, v)`` has
    ``u < v`` but ``b(v) < b(u)``. Pairs are scanned by growing syllable
    radius (the longer of the two words), then with ``v`` in the outer loop,
    so the reported pair comes from the smallest failing sample ball.
    """
    if max_syllables < 1 or exp_bound < 1:
        raise ValueError("bounds must be at least 1")
    if G is None:
        G = free_group(b.strands)
    validate(o, G)
    _check_free(G, b.strands)
    words = list(samples) if samples is not None else reduced_words(G, max_syllables, exp_bound)
    images = {w: artin_apply(b, w, G) for w in words}

    # Sorting by the order once is equivalent to the pairwise test because the
    # order is transitive; fall back to the pairwise scan only to name a pair.
    key = functools.cmp_to_key(lambda x, y: int(compare(o, G, x, y)))
    ordered = sorted(words, key=key)
    ok = all(
        compare(o, G, images[x], images[y]) < 0 for x, y in zip(ordered, ordered[1:])
    )
    if ok:
        return OrderCheck(True, len(words))
    for r in range(max(len(w) for w in words) + 1):
        for v in words:
            for u in words:
                if max(len(u), len(v)) != r:
                    continue
                if compare(o, G, u, v) < 0 and compare(o, G, images[u], images[v]) > 0:
                    return OrderCheck(False, len(words), (u, v))
    raise AssertionError("sorted scan found a violation the pairwise scan missed")
