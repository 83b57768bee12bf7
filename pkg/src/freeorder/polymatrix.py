"""Polynomials in t over a group ring, 2x2 matrices of them, and the embedding rho.

For a two-factor free product ``A * B`` the carrier ring is ``Z(A x B)`` and

    rho(a) = [[a, (a - 1) t], [0, 1]]        a in A
    rho(b) = [[1, 0], [(b - 1) t, b]]        b in B
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .groups import (
    DirectProduct,
    FreeProduct,
    ShapeMismatch,
    check_element,
    identity,
    reduced_words,
)
from .ring import RingElement, Sign, _sign_with

__all__ = [
    "Poly",
    "PolyMatrix2",
    "mat_mul",
    "mat_sub",
    "mat_add",
    "mat_neg",
    "mat_identity",
    "rho",
    "mat_sign",
    "POSITION_ORDER",
    "PingPong",
    "pingpong_class",
    "InjectivityReport",
    "injectivity_check",
]

# Scan order of matrix positions within the lowest nonzero degree.
POSITION_ORDER = ("e11", "e22", "e12", "e21")


class Poly:
    """Dense-by-degree polynomial with group ring coefficients."""

    __slots__ = ("carrier", "coeffs")

    def __init__(self, carrier, coeffs: Sequence[RingElement] = ()):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.carrier = carrier
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, r: RingElement) -> "Poly":
        return cls(r.carrier, [r])

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.carrier == other.carrier and self.coeffs == other.coeffs

    def __getitem__(self, d: int) -> RingElement:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return RingElement(self.carrier)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.carrier, [self[d] + other[d] for d in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.carrier, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly(self.carrier)
        out = [RingElement(self.carrier) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(self.carrier, out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({c!r})t^{d}" for d, c in enumerate(self.coeffs) if c]
        return " + ".join(parts)


@dataclass(frozen=True)
class PolyMatrix2:
    e11: Poly
    e12: Poly
    e21: Poly
    e22: Poly

    @property
    def carrier(self):
        return self.e11.carrier

    def entries(self) -> tuple:
        return (self.e11, self.e12, self.e21, self.e22)

    def __bool__(self) -> bool:
        return any(self.entries())

    def __mul__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        return mat_mul(self, other)

    def __sub__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        return mat_sub(self, other)

    def __add__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        return mat_add(self, other)

    def __neg__(self) -> "PolyMatrix2":
        return mat_neg(self)

    def degree(self) -> float:
        return max(p.degree for p in self.entries())

    def coefficient(self, d: int) -> tuple:
        """The constant matrix multiplying ``t^d``, as ``(e11, e12, e21, e22)``."""
        return tuple(p[d] for p in self.entries())


def _same(A: PolyMatrix2, B: PolyMatrix2) -> None:
    if A.carrier != B.carrier:
        raise ShapeMismatch("matrices over different carriers")


def mat_mul(A: PolyMatrix2, B: PolyMatrix2) -> PolyMatrix2:
    _same(A, B)
    return PolyMatrix2(
        A.e11 * B.e11 + A.e12 * B.e21,
        A.e11 * B.e12 + A.e12 * B.e22,
        A.e21 * B.e11 + A.e22 * B.e21,
        A.e21 * B.e12 + A.e22 * B.e22,
    )


def mat_add(A: PolyMatrix2, B: PolyMatrix2) -> PolyMatrix2:
    _same(A, B)
    return PolyMatrix2(*(a + b for a, b in zip(A.entries(), B.entries())))


def mat_neg(A: PolyMatrix2) -> PolyMatrix2:
    return PolyMatrix2(*(-a for a in A.entries()))


def mat_sub(A: PolyMatrix2, B: PolyMatrix2) -> PolyMatrix2:
    _same(A, B)
    return PolyMatrix2(*(a - b for a, b in zip(A.entries(), B.entries())))


def mat_identity(carrier) -> PolyMatrix2:
    one = Poly.constant(RingElement.one(carrier))
    zero = Poly(carrier)
    return PolyMatrix2(one, zero, zero, one)


# -- the embedding ------------------------------------------------------------


def _generator_matrix(A, B, side: int, e) -> PolyMatrix2:
    carrier = DirectProduct((A, B))
    one = RingElement.one(carrier)
    zero = Poly(carrier)
    key = (e, identity(B)) if side == 0 else (identity(A), e)
    g = RingElement.monomial(carrier, key)
    diag = Poly.constant(g)
    off = Poly(carrier, [RingElement(carrier), g - one])
    if side == 0:
        return PolyMatrix2(diag, off, zero, Poly.constant(one))
    return PolyMatrix2(Poly.constant(one), zero, off, diag)


@lru_cache(maxsize=1 << 16)
def _rho_pair(A, B, syllables: tuple) -> PolyMatrix2:
    if not syllables:
        return mat_identity(DirectProduct((A, B)))
    if len(syllables) == 1:
        side, e = syllables[0]
        return _generator_matrix(A, B, side, e)
    half = len(syllables) // 2
    return mat_mul(_rho_pair(A, B, syllables[:half]), _rho_pair(A, B, syllables[half:]))


def rho(G: FreeProduct, w) -> PolyMatrix2:
    """Image of a reduced word of a two-factor free product in M_2(Z(A x B)[t])."""
    if not isinstance(G, FreeProduct) or len(G.children) != 2:
        raise ShapeMismatch("rho needs a free product of exactly two groups")
    check_element(G, w)
    A, B = G.children
    return _rho_pair(A, B, tuple(w))


# -- positivity ---------------------------------------------------------------


def _first_entry(M: PolyMatrix2) -> RingElement | None:
    lowest = min(
        (next(d for d, c in enumerate(p.coeffs) if c) for p in M.entries() if p),
        default=None,
    )
    if lowest is None:
        return None
    for pos in POSITION_ORDER:
        r = getattr(M, pos)[lowest]
        if r:
            return r
    raise AssertionError("unreachable")


def _mat_sign_with(M: PolyMatrix2, cmp: Callable) -> Sign:
    r = _first_entry(M)
    if r is None:
        return Sign.ZERO
    return _sign_with(r, cmp)


def mat_sign(product_order, M: PolyMatrix2, ctx=None) -> Sign:
    """Sign of the first nonzero entry, lowest t-degree first, under ``product_order``."""
    from .orders import _cmp

    carrier = M.carrier
    return _mat_sign_with(M, lambda g, h: _cmp(product_order, carrier, g, h, ctx, ()))


# -- ping-pong ----------------------------------------------------------------


class PingPong(enum.Enum):
    V1 = 1  # deg A > deg B
    V2 = 2  # deg A < deg B
    V3 = 3  # equal degrees


def pingpong_class(v: tuple[Poly, Poly]) -> PingPong:
    a, b = v
    if not a and not b:
        raise ValueError("the zero vector has no ping-pong class")
    if a.degree > b.degree:
        return PingPong.V1
    if a.degree < b.degree:
        return PingPong.V2
    return PingPong.V3


def apply_to_column(M: PolyMatrix2, v: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    a, b = v
    return (M.e11 * a + M.e12 * b, M.e21 * a + M.e22 * b)


@dataclass
class InjectivityReport:
    ok: bool
    checked: int
    counterexample: object = None
    reason: str = ""


def injectivity_check(G: FreeProduct, max_syllables: int, exponent_bound: int) -> InjectivityReport:
    """Check rho(w) != I and the ping-pong trajectory for every bounded reduced word.

    Starting from (1, 1) in V3, applying a factor-0 syllable must land in V1
    and a factor-1 syllable in V2, so the trajectory never returns to V3.
    """
    if max_syllables < 1 or exponent_bound < 1:
        raise ValueError("bounds must be at least 1")
    if not isinstance(G, FreeProduct) or len(G.children) != 2:
        raise ShapeMismatch("injectivity_check needs a free product of two groups")
    A, B = G.children
    carrier = DirectProduct((A, B))
    one = Poly.constant(RingElement.one(carrier))
    ident = mat_identity(carrier)
    checked = 0
    for w in reduced_words(G, max_syllables, exponent_bound):
        if not w:
            continue
        checked += 1
        if _rho_pair(A, B, tuple(w)) == ident:
            return InjectivityReport(False, checked, w, "rho(w) is the identity")
        v = (one, one)
        for side, e in reversed(w):
            v = apply_to_column(_generator_matrix(A, B, side, e), v)
            expected = PingPong.V1 if side == 0 else PingPong.V2
            if pingpong_class(v) is not expected:
                return InjectivityReport(False, checked, w, f"trajectory left {expected.name}")
    return InjectivityReport(True, checked)
