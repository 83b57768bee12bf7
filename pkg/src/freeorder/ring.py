"""Sparse integral group ring arithmetic and leading-term positivity."""

from __future__ import annotations

import enum
from typing import Any, Callable, Mapping

from .groups import ShapeMismatch, _mul, encode, identity

__all__ = [
    "Sign",
    "ZeroElement",
    "RingElement",
    "ring_add",
    "ring_neg",
    "ring_mul",
    "leading_term",
    "ring_sign",
]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class ZeroElement(ValueError):
    pass


class RingElement:
    """Element of Z(G): a finite map from group elements to nonzero integers."""

    __slots__ = ("carrier", "terms")

    def __init__(self, carrier, terms: Mapping[Any, int] | None = None):
        self.carrier = carrier
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, carrier, g, coeff: int = 1) -> "RingElement":
        return cls(carrier, {g: coeff})

    @classmethod
    def one(cls, carrier) -> "RingElement":
        return cls(carrier, {identity(carrier): 1})

    def _same(self, other: "RingElement") -> None:
        if self.carrier != other.carrier:
            raise ShapeMismatch("group ring elements over different carriers")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.carrier == other.carrier and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms.get(g, 0) + c
            if s:
                terms[g] = s
            else:
                terms.pop(g, None)
        return _raw(self.carrier, terms)

    def __neg__(self) -> "RingElement":
        return _raw(self.carrier, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        G = self.carrier
        terms: dict = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                k = _mul(G, g, h)
                s = terms.get(k, 0) + c * d
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return _raw(G, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{g!r}" for g, c in sorted(self.terms.items(), key=lambda t: encode(t[0])))


def _raw(carrier, terms: dict) -> RingElement:
    r = RingElement.__new__(RingElement)
    r.carrier = carrier
    r.terms = terms
    return r


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def _leading(a: RingElement, cmp: Callable[[Any, Any], int]) -> tuple[Any, int]:
    if not a.terms:
        raise ZeroElement("the zero element has no leading term")
    keys = sorted(a.terms, key=encode)
    best = keys[0]
    for g in keys[1:]:
        if cmp(g, best) > 0:
            best = g
    return best, a.terms[best]


def _sign_with(a: RingElement, cmp) -> Sign:
    if not a.terms:
        return Sign.ZERO
    _, c = _leading(a, cmp)
    return Sign.POSITIVE if c > 0 else Sign.NEGATIVE


def _order_cmp(o, carrier, ctx):
    from .orders import _cmp

    return lambda g, h: _cmp(o, carrier, g, h, ctx, ())


def leading_term(o, a: RingElement, ctx=None) -> tuple[Any, int]:
    """The largest group element of ``a`` under ``o`` and its coefficient."""
    return _leading(a, _order_cmp(o, a.carrier, ctx))


def ring_sign(o, a: RingElement, ctx=None) -> Sign:
    return _sign_with(a, _order_cmp(o, a.carrier, ctx))
