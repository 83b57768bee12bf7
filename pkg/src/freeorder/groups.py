"""Group descriptors and normal-form elements.

A group is described by a small recursive tree (``Integers``, ``KleinBottle``,
``DirectProduct``, ``FreeProduct``). Elements are plain hashable values whose
shape follows the tree:

* ``Integers``        -> ``int``
* ``KleinBottle``     -> ``Klein(m, n)`` meaning ``y^m x^n``
* ``DirectProduct``   -> ``tuple`` with one entry per child
* ``FreeProduct``     -> ``Word``, a reduced tuple of ``(factor, element)`` syllables

Elements are always kept in normal form, so ``==`` is group equality.
The Klein bottle group is presented as ``<x, y | x y x^-1 = y^-1>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, NamedTuple, Sequence

__all__ = [
    "ShapeMismatch",
    "Integers",
    "KleinBottle",
    "DirectProduct",
    "FreeProduct",
    "Klein",
    "Word",
    "Z",
    "K",
    "identity",
    "is_identity",
    "multiply",
    "inverse",
    "power",
    "inject",
    "alpha",
    "num_generators",
    "generator",
    "encode",
    "check_element",
    "factor_elements",
    "reduced_words",
    "atoms",
    "flatten",
    "unflatten",
    "regroup",
]


class ShapeMismatch(ValueError):
    """An element or ordering does not match the group it is used with."""


@dataclass(frozen=True)
class Integers:
    def __repr__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class KleinBottle:
    def __repr__(self) -> str:
        return "K"


@dataclass(frozen=True)
class DirectProduct:
    children: tuple

    def __init__(self, children: Sequence):
        object.__setattr__(self, "children", tuple(children))
        if len(self.children) < 2:
            raise ShapeMismatch("DirectProduct needs at least two children")

    def __repr__(self) -> str:
        return "(" + " x ".join(map(repr, self.children)) + ")"


@dataclass(frozen=True)
class FreeProduct:
    children: tuple

    def __init__(self, children: Sequence):
        object.__setattr__(self, "children", tuple(children))
        if len(self.children) < 2:
            raise ShapeMismatch("FreeProduct needs at least two children")

    def __repr__(self) -> str:
        return "(" + " * ".join(map(repr, self.children)) + ")"


Z = Integers()
K = KleinBottle()

Group = Integers | KleinBottle | DirectProduct | FreeProduct


class Klein(NamedTuple):
    """The Klein bottle element ``y^m x^n``."""

    m: int
    n: int


class Word(tuple):
    """Reduced word in a free product: a tuple of ``(factor, element)`` pairs."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"Word({tuple.__repr__(self)})"


EMPTY = Word()


# -- basic operations ---------------------------------------------------------


@lru_cache(maxsize=None)
def identity(G: Group) -> Any:
    if isinstance(G, Integers):
        return 0
    if isinstance(G, KleinBottle):
        return Klein(0, 0)
    if isinstance(G, DirectProduct):
        return tuple(identity(c) for c in G.children)
    if isinstance(G, FreeProduct):
        return EMPTY
    raise ShapeMismatch(f"not a group descriptor: {G!r}")


def is_identity(G: Group, e: Any) -> bool:
    return e == identity(G)


def _mul(G: Group, u: Any, v: Any) -> Any:
    if isinstance(G, Integers):
        return u + v
    if isinstance(G, KleinBottle):
        # x^n y^m' x^-n = y^((-1)^n m')
        m2 = v.m if u.n % 2 == 0 else -v.m
        return Klein(u.m + m2, u.n + v.n)
    if isinstance(G, DirectProduct):
        return tuple(_mul(c, a, b) for c, a, b in zip(G.children, u, v))
    if not u:
        return v
    if not v:
        return u
    left = list(u)
    right_start = 0
    while left and right_start < len(v):
        i, a = left[-1]
        j, b = v[right_start]
        if i != j:
            break
        c = _mul(G.children[i], a, b)
        left.pop()
        right_start += 1
        if c != identity(G.children[i]):
            left.append((i, c))
            break
    return Word(left + list(v[right_start:]))


def _inv(G: Group, u: Any) -> Any:
    if isinstance(G, Integers):
        return -u
    if isinstance(G, KleinBottle):
        return Klein(-u.m if u.n % 2 == 0 else u.m, -u.n)
    if isinstance(G, DirectProduct):
        return tuple(_inv(c, a) for c, a in zip(G.children, u))
    return Word((i, _inv(G.children[i], a)) for i, a in reversed(u))


def check_element(G: Group, e: Any) -> None:
    """Raise ShapeMismatch unless ``e`` is a normal-form element of ``G``."""
    if isinstance(G, Integers):
        if not isinstance(e, int) or isinstance(e, bool):
            raise ShapeMismatch(f"expected an integer, got {e!r}")
    elif isinstance(G, KleinBottle):
        if not isinstance(e, Klein):
            raise ShapeMismatch(f"expected a Klein element, got {e!r}")
    elif isinstance(G, DirectProduct):
        if type(e) is not tuple or len(e) != len(G.children):
            raise ShapeMismatch(f"expected a {len(G.children)}-tuple, got {e!r}")
        for c, a in zip(G.children, e):
            check_element(c, a)
    elif isinstance(G, FreeProduct):
        if not isinstance(e, Word):
            raise ShapeMismatch(f"expected a Word, got {e!r}")
        prev = None
        for i, a in e:
            if not 0 <= i < len(G.children):
                raise ShapeMismatch(f"factor index {i} out of range")
            if i == prev:
                raise ShapeMismatch("adjacent syllables in the same factor")
            check_element(G.children[i], a)
            if is_identity(G.children[i], a):
                raise ShapeMismatch("identity syllable in word")
            prev = i
    else:
        raise ShapeMismatch(f"not a group descriptor: {G!r}")


def multiply(G: Group, u: Any, v: Any) -> Any:
    check_element(G, u)
    check_element(G, v)
    return _mul(G, u, v)


def inverse(G: Group, u: Any) -> Any:
    check_element(G, u)
    return _inv(G, u)


def power(G: Group, u: Any, k: int) -> Any:
    if k < 0:
        u, k = _inv(G, u), -k
    result = identity(G)
    while k:
        if k & 1:
            result = _mul(G, result, u)
        u = _mul(G, u, u)
        k >>= 1
    return result


def product(G: Group, elements) -> Any:
    result = identity(G)
    for e in elements:
        result = _mul(G, result, e)
    return result


def inject(G: FreeProduct, i: int, e: Any) -> Word:
    """The inclusion of factor ``i`` into the free product."""
    if not isinstance(G, FreeProduct):
        raise ShapeMismatch("inject needs a FreeProduct")
    if not 0 <= i < len(G.children):
        raise IndexError(f"factor index {i} out of range")
    check_element(G.children[i], e)
    if is_identity(G.children[i], e):
        return EMPTY
    return Word([(i, e)])


def alpha(G: FreeProduct, w: Word) -> tuple:
    """Canonical map to the direct product: per-factor product of syllables."""
    if not isinstance(G, FreeProduct):
        raise ShapeMismatch("alpha needs a FreeProduct")
    check_element(G, w)
    out = [identity(c) for c in G.children]
    for i, a in w:
        out[i] = _mul(G.children[i], out[i], a)
    return tuple(out)


# -- generators ---------------------------------------------------------------


@lru_cache(maxsize=None)
def num_generators(G: Group) -> int:
    if isinstance(G, Integers):
        return 1
    if isinstance(G, KleinBottle):
        return 2
    return sum(num_generators(c) for c in G.children)


def generator(G: Group, index: int) -> Any:
    """The leaf generator ``x<index>`` (1-based, numbered left to right)."""
    if not 1 <= index <= num_generators(G):
        raise ShapeMismatch(f"generator x{index} not in {G!r}")
    if isinstance(G, Integers):
        return 1
    if isinstance(G, KleinBottle):
        return Klein(1, 0) if index == 1 else Klein(0, 1)
    offset = 0
    for i, c in enumerate(G.children):
        n = num_generators(c)
        if index <= offset + n:
            sub = generator(c, index - offset)
            if isinstance(G, DirectProduct):
                entries = [identity(d) for d in G.children]
                entries[i] = sub
                return tuple(entries)
            return Word([(i, sub)])
        offset += n
    raise AssertionError("unreachable")


# -- canonical encoding -------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def encode(e: Any) -> str:
    """Deterministic text key; iteration over group-ring terms follows it."""
    if isinstance(e, Word):
        return "[" + ";".join(f"{i}:{encode(a)}" for i, a in e) + "]"
    if isinstance(e, Klein):
        return f"k{e.m},{e.n}"
    if isinstance(e, tuple):
        return "(" + ",".join(encode(a) for a in e) + ")"
    return f"{e:+d}"


# -- enumeration --------------------------------------------------------------


def _exponents(bound: int) -> list[int]:
    out = []
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def factor_elements(G: Group, bound: int) -> list:
    """Nonidentity elements whose exponents are all bounded by ``bound``.

    Order is deterministic: small absolute exponents first, positive before
    negative.
    """
    if isinstance(G, Integers):
        return _exponents(bound)
    if isinstance(G, KleinBottle):
        rng = [0] + _exponents(bound)
        return [Klein(m, n) for n in rng for m in rng if (m, n) != (0, 0)]
    if isinstance(G, DirectProduct):
        parts = [[identity(c)] + factor_elements(c, bound) for c in G.children]
        ident = identity(G)
        return [e for e in itertools.product(*parts) if e != ident]
    return [w for w in reduced_words(G, 2, bound) if w]


def reduced_words(G: FreeProduct, max_syllables: int, bound: int) -> list[Word]:
    """All reduced words with at most ``max_syllables`` syllables.

    Syllables range over ``factor_elements(child, bound)``; the empty word is
    included first, then words by increasing syllable count.
    """
    per_factor = [factor_elements(c, bound) for c in G.children]
    out = [EMPTY]
    layer: list[tuple] = [()]
    for _ in range(max_syllables):
        nxt = []
        for w in layer:
            last = w[-1][0] if w else None
            for i, elems in enumerate(per_factor):
                if i == last:
                    continue
                for a in elems:
                    nxt.append(w + ((i, a),))
        layer = nxt
        out.extend(Word(w) for w in layer)
    return out


def iter_words(G: FreeProduct, max_syllables: int, bound: int) -> Iterator[Word]:
    yield from reduced_words(G, max_syllables, bound)


# -- free product regrouping --------------------------------------------------


@lru_cache(maxsize=None)
def atoms(G: Group) -> tuple:
    """Paths to the maximal non-free-product subgroups, left to right."""
    if not isinstance(G, FreeProduct):
        return ((),)
    out = []
    for i, c in enumerate(G.children):
        out.extend((i,) + p for p in atoms(c))
    return tuple(out)


def flatten(G: Group, w: Any) -> list:
    """Syllables ``(atom index, element)`` of ``w`` across all nested free factors."""
    if not isinstance(G, FreeProduct):
        return [] if is_identity(G, w) else [(0, w)]
    offsets = _atom_offsets(G)
    out = []
    for i, a in w:
        for j, b in flatten(G.children[i], a):
            out.append((offsets[i] + j, b))
    return out


@lru_cache(maxsize=None)
def _atom_offsets(G: FreeProduct) -> tuple:
    offs, n = [], 0
    for c in G.children:
        offs.append(n)
        n += len(atoms(c))
    return tuple(offs)


def unflatten(G: Group, syllables: Sequence) -> Any:
    """Inverse of :func:`flatten` for a reduced flat syllable list."""
    if not isinstance(G, FreeProduct):
        if not syllables:
            return identity(G)
        ((_, e),) = syllables
        return e
    offsets = _atom_offsets(G)
    sizes = [len(atoms(c)) for c in G.children]
    out = []
    for i, run in itertools.groupby(
        syllables, key=lambda s: _child_of(offsets, sizes, s[0])
    ):
        local = [(j - offsets[i], b) for j, b in run]
        out.append((i, unflatten(G.children[i], local)))
    return Word(out)


def _child_of(offsets, sizes, j):
    for i, (o, s) in enumerate(zip(offsets, sizes)):
        if o <= j < o + s:
            return i
    raise ShapeMismatch(f"atom index {j} out of range")


def regroup(src: Group, dst: Group, w: Any) -> Any:
    """Carry ``w`` along the natural isomorphism between two bracketings."""
    sa = [_resolve(src, p) for p in atoms(src)]
    da = [_resolve(dst, p) for p in atoms(dst)]
    if sa != da:
        raise ShapeMismatch("bracketings have different factors")
    return unflatten(dst, flatten(src, w))


def _resolve(G: Group, path: tuple) -> Group:
    for i in path:
        G = G.children[i]
    return G
