"""Orderings of free products of ordered groups through the matrix embedding.

``x < y`` in ``A * B`` when ``rho(y) - rho(x)`` is positive in
``M_2(Z(A x B)[t])``, with ring positivity taken from an order on ``A x B``
(lexicographic for :class:`~freeorder.orders.Bergman`, arbitrary for
:class:`~freeorder.orders.ProductPullback`). Free products of more than two
factors are ordered by nesting to the left, ``((F0 * F1) * F2) * ...``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .groups import (
    EMPTY,
    DirectProduct,
    FreeProduct,
    Integers,
    KleinBottle,
    ShapeMismatch,
    Word,
    _inv,
    _mul,
    alpha,
    check_element,
    generator,
    identity,
    num_generators,
    power,
    reduced_words,
)
from .orders import (
    Bergman,
    ProductPullback,
    Recorder,
    Verdict,
    _cmp,
    compare,
    validate,
)
from .polymatrix import _mat_sign_with, _rho_pair

__all__ = [
    "compare_bergman",
    "compare_with_product_order",
    "nary_bergman",
    "left_nested",
    "left_nested_order",
    "FactorHomomorphism",
    "apply_free_hom",
    "kernel_membership",
    "convexity_probe",
    "find_distinguishing_witness",
]


def _split_last(w: Word, k: int) -> tuple:
    """Rewrite a word of ``F0 * ... * F(k-1)`` as a word of ``(F0 * ... * F(k-2)) * F(k-1)``."""
    out, run = [], []
    for i, a in w:
        if i == k - 1:
            if run:
                out.append((0, Word(run)))
                run = []
            out.append((1, a))
        else:
            run.append((i, a))
    if run:
        out.append((0, Word(run)))
    return tuple(out)


def _pair_parts(o: Bergman, G: FreeProduct, path: tuple):
    k = len(G.children)
    if k == 2:
        A, B = G.children
        oA, oB = o.children
        return A, oA, path + (0,), B, oB, path + (1,)
    # the prefix keeps the flat factor indices, so leaf paths stay flat too
    A = FreeProduct(G.children[:-1])
    oA = Bergman(o.children[:-1])
    return A, oA, path, G.children[-1], o.children[-1], path + (k - 1,)


def _matrix_verdict(A, B, u, v, k, key_cmp) -> Verdict:
    su = tuple(u) if k == 2 else _split_last(u, k)
    sv = tuple(v) if k == 2 else _split_last(v, k)
    D = _rho_pair(A, B, sv) - _rho_pair(A, B, su)
    return Verdict(-int(_mat_sign_with(D, key_cmp)))


def _bergman_cmp(o: Bergman, G: FreeProduct, u, v, ctx, path) -> Verdict:
    A, oA, pA, B, oB, pB = _pair_parts(o, G, path)

    def key_cmp(p, q):
        r = _cmp(oA, A, p[0], q[0], ctx, pA)
        if r:
            return r
        return _cmp(oB, B, p[1], q[1], ctx, pB)

    return _matrix_verdict(A, B, u, v, len(G.children), key_cmp)


def _pullback_cmp(o: ProductPullback, G: FreeProduct, u, v, ctx, path) -> Verdict:
    A, B = G.children
    P = DirectProduct(G.children)
    po = o.product_order
    return _matrix_verdict(
        A, B, u, v, 2, lambda p, q: _cmp(po, P, p, q, ctx, path + (0,))
    )


def compare_bergman(o0, o1, G: FreeProduct, u, v, ctx: Recorder | None = None) -> Verdict:
    if len(G.children) != 2:
        raise ShapeMismatch("compare_bergman needs a free product of two groups")
    o = Bergman((o0, o1))
    validate(o, G)
    return compare(o, G, u, v, ctx)


def compare_with_product_order(product_order, G: FreeProduct, u, v, ctx: Recorder | None = None) -> Verdict:
    o = ProductPullback(product_order)
    validate(o, G)
    return compare(o, G, u, v, ctx)


def nary_bergman(orders: Sequence, G: FreeProduct) -> Bergman:
    """Order for a k-factor free product, nested to the left.

    The descriptor stays flat (one child per factor); comparisons regroup the
    words into ``((F0 * F1) * F2) * ...`` on the fly.
    """
    if len(orders) < 2:
        raise ShapeMismatch("nary_bergman needs at least two factor orders")
    o = Bergman(tuple(orders))
    validate(o, G)
    return o


def left_nested(G: FreeProduct) -> FreeProduct:
    """The explicitly bracketed group ``((F0 * F1) * F2) * ...``."""
    nested = G.children[0]
    for c in G.children[1:]:
        nested = FreeProduct((nested, c))
    return nested


def left_nested_order(o: Bergman) -> Bergman:
    nested = o.children[0]
    for c in o.children[1:]:
        nested = Bergman((nested, c))
    return nested


# -- homomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class FactorHomomorphism:
    """A homomorphism given by generator images, or by one map per factor.

    ``Integers`` and ``KleinBottle`` sources use ``images`` (one per leaf
    generator, in ``x<i>`` order). ``DirectProduct`` and ``FreeProduct``
    sources use ``factors``, mapping factor ``i`` into factor ``i`` of a
    target of the same kind.
    """

    source: Any
    target: Any
    images: tuple = ()
    factors: tuple = ()

    def __post_init__(self):
        S, T = self.source, self.target
        if isinstance(S, (Integers, KleinBottle)):
            if len(self.images) != num_generators(S):
                raise ShapeMismatch("one image per source generator is required")
            for img in self.images:
                check_element(T, img)
            if isinstance(S, KleinBottle):
                y, x = self.images
                lhs = _mul(T, _mul(T, x, y), _inv(T, x))
                if lhs != _inv(T, y):
                    raise ValueError("images do not satisfy x y x^-1 = y^-1")
        else:
            if type(S) is not type(T) or len(S.children) != len(T.children):
                raise ShapeMismatch("factor maps need a target of the same shape")
            if len(self.factors) != len(S.children):
                raise ShapeMismatch("one factor map per factor is required")
            for f, s, t in zip(self.factors, S.children, T.children):
                if f.source != s or f.target != t:
                    raise ShapeMismatch("factor map does not match its factor")

    @classmethod
    def identity(cls, G) -> "FactorHomomorphism":
        if isinstance(G, (Integers, KleinBottle)):
            return cls(G, G, images=tuple(generator(G, i + 1) for i in range(num_generators(G))))
        return cls(G, G, factors=tuple(cls.identity(c) for c in G.children))

    def __call__(self, w):
        return _apply(self, w)


def _apply(phi: FactorHomomorphism, w):
    S, T = phi.source, phi.target
    if isinstance(S, Integers):
        return power(T, phi.images[0], w)
    if isinstance(S, KleinBottle):
        y, x = phi.images
        return _mul(T, power(T, y, w.m), power(T, x, w.n))
    if isinstance(S, DirectProduct):
        return tuple(_apply(f, a) for f, a in zip(phi.factors, w))
    out = EMPTY
    for i, a in w:
        img = _apply(phi.factors[i], a)
        if img != identity(T.children[i]):
            out = _mul(T, out, Word([(i, img)]))
    return out


def apply_free_hom(phi: FactorHomomorphism, w):
    check_element(phi.source, w)
    return _apply(phi, w)


# -- kernel of alpha ----------------------------------------------------------


def kernel_membership(G: FreeProduct, w) -> bool:
    return alpha(G, w) == identity(DirectProduct(G.children))


def sort_elements(o, G, elements: Iterable) -> list:
    key = functools.cmp_to_key(lambda a, b: int(compare(o, G, a, b)))
    return sorted(elements, key=key)


def convexity_probe(o, G: FreeProduct, samples: Iterable):
    """Return ``None`` if the kernel of alpha is convex among ``samples``.

    Otherwise returns a violating triple ``(k1, w, k2)`` with ``k1 < w < k2``,
    ``k1`` and ``k2`` in the kernel and ``w`` outside it.
    """
    ordered = sort_elements(o, G, set(samples))
    flags = [kernel_membership(G, w) for w in ordered]
    inside = [i for i, f in enumerate(flags) if f]
    if not inside:
        return None
    lo, hi = inside[0], inside[-1]
    for i in range(lo, hi + 1):
        if not flags[i]:
            k1 = max(j for j in inside if j < i)
            k2 = min(j for j in inside if j > i)
            return ordered[k1], ordered[i], ordered[k2]
    return None


# -- injectivity witnesses ----------------------------------------------------


def _as_order(o):
    return Bergman(tuple(o)) if isinstance(o, (list, tuple)) else o


def _witness_candidates(G: FreeProduct, search_bound: int, exp_bound: int):
    for i, c in enumerate(G.children):
        for j in range(num_generators(c)):
            g = generator(c, j + 1)
            yield Word([(i, g)])
            yield Word([(i, _inv(c, g))])
    yield from reduced_words(G, search_bound, exp_bound)


def find_distinguishing_witness(o, o2, G: FreeProduct, search_bound: int = 4, exp_bound: int = 2):
    """An element positive under one ordering and negative under the other, or ``None``.

    ``o`` and ``o2`` are orderings of ``G``, or lists of factor orderings.
    Injected factor generators and their inverses are tried first, then
    reduced words by increasing syllable count.
    """
    if search_bound < 1 or exp_bound < 1:
        raise ValueError("bounds must be at least 1")
    o, o2 = _as_order(o), _as_order(o2)
    validate(o, G)
    validate(o2, G)
    one = identity(G)
    for w in _witness_candidates(G, search_bound, exp_bound):
        if w == one:
            continue
        a = compare(o, G, one, w)
        b = compare(o2, G, one, w)
        if a != b:
            return w
    return None
