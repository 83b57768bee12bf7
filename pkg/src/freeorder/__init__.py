"""Computable orderings of free products of ordered groups."""

from .braid import BraidWord, artin_apply, braid_tensor, check_order_preserving, free_group
from .coproduct import (
    FactorHomomorphism,
    apply_free_hom,
    compare_bergman,
    compare_with_product_order,
    find_distinguishing_witness,
    nary_bergman,
)
from .groups import (
    DirectProduct,
    FreeProduct,
    Integers,
    K,
    Klein,
    KleinBottle,
    ShapeMismatch,
    Word,
    Z,
    alpha,
    inject,
    inverse,
    multiply,
)
from .orders import (
    Bergman,
    Certificate,
    DegenerateVecLex,
    IntRev,
    IntStd,
    KleinLeft,
    Lex,
    MissingAnswer,
    ProductPullback,
    Recorder,
    VecLex,
    Verdict,
    compare,
    replay,
    sign,
)
from .parse import ParseError, format_element, parse_element, parse_group, parse_order
from .polymatrix import rho

__version__ = "0.1.0"
