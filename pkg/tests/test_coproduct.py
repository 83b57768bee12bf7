import itertools
import random

import pytest

from freeorder.coproduct import (
    FactorHomomorphism,
    apply_free_hom,
    compare_bergman,
    compare_with_product_order,
    convexity_probe,
    find_distinguishing_witness,
    kernel_membership,
    left_nested,
    left_nested_order,
    nary_bergman,
    sort_elements,
)
from freeorder.groups import DirectProduct, FreeProduct, K, Klein, ShapeMismatch, Word, Z, alpha, multiply, reduced_words, regroup
from freeorder.orders import Bergman, IntRev, IntStd, KleinLeft, Lex, ProductPullback, VecLex, Verdict, compare

STD, REV = IntStd(), IntRev()
ZZ = FreeProduct((Z, Z))
ZZZ = FreeProduct((Z, Z, Z))


def w(*syl):
    return Word(syl)


def x(i, k=1):
    return w((i - 1, k))


def test_compare_bergman_examples():
    assert compare_bergman(STD, STD, ZZ, Word(), x(1)) == Verdict.LESS
    assert compare_bergman(STD, STD, ZZ, x(1), x(2)) == Verdict.GREATER
    comm = w((0, 1), (1, 1), (0, -1), (1, -1))
    assert compare_bergman(STD, STD, ZZ, Word(), comm) == Verdict.LESS
    assert compare_bergman(STD, STD, ZZ, x(2), w((0, 1), (1, -1))) == Verdict.LESS
    with pytest.raises(ShapeMismatch):
        compare_bergman(STD, STD, ZZZ, Word(), x(1))


def test_pullback_lex_matches_bergman(small_words):
    rng = random.Random(1)
    lex = Lex((STD, STD))
    for _ in range(300):
        u, v = rng.choice(small_words), rng.choice(small_words)
        assert compare_with_product_order(lex, ZZ, u, v) == compare(Bergman((STD, STD)), ZZ, u, v)


def test_pullback_swapped_veclex():
    swapped = VecLex([[0, 1], [1, 0]])
    # 1 - a only involves the keys (0,0) and (1,0); the second row still ranks a above 1
    assert compare_with_product_order(swapped, ZZ, x(1), x(2)) == Verdict.GREATER
    assert compare_with_product_order(swapped, ZZ, x(1), x(1)) == Verdict.EQUAL


def test_pullback_follows_factor_restrictions():
    # on this sample the pullback matches the Bergman order of the factor restrictions
    words = reduced_words(ZZ, 3, 2)
    cases = [
        (VecLex([[0, 1], [1, 0]]), Bergman((STD, STD))),
        (VecLex([[1, -1], [0, 1]]), Bergman((STD, REV))),
    ]
    for po, berg in cases:
        for u in words:
            assert compare_with_product_order(po, ZZ, Word(), u) == compare(berg, ZZ, Word(), u)
    tilted = VecLex([[1, -1], [0, 1]])
    assert compare_with_product_order(tilted, ZZ, Word(), x(2)) == Verdict.GREATER
    assert compare(Bergman((STD, STD)), ZZ, Word(), x(2)) == Verdict.LESS


def test_pullback_total_order(small_words):
    po = ProductPullback(VecLex([[1, -1], [0, 1]]))
    ordered = sort_elements(po, ZZ, small_words)
    for a_, b_ in zip(ordered, ordered[1:]):
        assert compare(po, ZZ, a_, b_) == Verdict.LESS


def test_nary_examples():
    o2 = nary_bergman([STD, STD], ZZ)
    assert o2 == Bergman((STD, STD))
    o3 = nary_bergman([STD, STD, STD], ZZZ)
    assert compare(o3, ZZZ, x(1), x(3)) == Verdict.GREATER
    with pytest.raises(ShapeMismatch):
        nary_bergman([STD], ZZ)


def test_nary_matches_explicit_left_nesting():
    o3 = nary_bergman([STD, REV, STD], ZZZ)
    nested_G, nested_o = left_nested(ZZZ), left_nested_order(o3)
    words = reduced_words(ZZZ, 3, 1)
    rng = random.Random(4)
    for _ in range(400):
        u, v = rng.choice(words), rng.choice(words)
        nu, nv = regroup(ZZZ, nested_G, u), regroup(ZZZ, nested_G, v)
        assert compare(o3, ZZZ, u, v) == compare(nested_o, nested_G, nu, nv)


def test_restriction_coherence(small_words):
    o3 = nary_bergman([STD, STD, STD], ZZZ)
    o2 = Bergman((STD, STD))
    for u, v in itertools.combinations(small_words[:80], 2):
        assert compare(o3, ZZZ, u, v) == compare(o2, ZZ, u, v)


def test_bracketings_disagree():
    # left and right bracketings of Z*Z*Z order this word differently
    word = w((0, -1), (1, -1), (0, 1), (1, 1), (2, -1))
    left = nary_bergman([STD, STD, STD], ZZZ)
    right_G = FreeProduct((Z, ZZ))
    right_o = Bergman((STD, Bergman((STD, STD))))
    rw = regroup(ZZZ, right_G, word)
    assert compare(left, ZZZ, Word(), word) == Verdict.LESS
    assert compare(right_o, right_G, Word(), rw) == Verdict.GREATER


def test_apply_free_hom_examples():
    cube = FactorHomomorphism(Z, Z, images=(2,))
    phi = FactorHomomorphism(ZZ, ZZ, factors=(cube, FactorHomomorphism.identity(Z)))
    assert apply_free_hom(phi, w((0, 1), (1, -1))) == w((0, 2), (1, -1))
    assert apply_free_hom(phi, w((0, -1), (1, 1), (0, 1))) == w((0, -2), (1, 1), (0, 2))
    ident = FactorHomomorphism.identity(ZZ)
    for u in reduced_words(ZZ, 2, 2):
        assert apply_free_hom(ident, u) == u


def test_free_hom_collapses_syllables():
    kill = FactorHomomorphism(Z, Z, images=(0,))
    phi = FactorHomomorphism(ZZ, ZZ, factors=(FactorHomomorphism.identity(Z), kill))
    assert apply_free_hom(phi, w((0, 1), (1, 3), (0, 1))) == x(1, 2)


def test_free_hom_is_homomorphism(small_words):
    cube = FactorHomomorphism(Z, Z, images=(3,))
    phi = FactorHomomorphism(ZZ, ZZ, factors=(cube, FactorHomomorphism.identity(Z)))
    rng = random.Random(6)
    for _ in range(300):
        u, v = rng.choice(small_words), rng.choice(small_words)
        assert apply_free_hom(phi, multiply(ZZ, u, v)) == multiply(ZZ, apply_free_hom(phi, u), apply_free_hom(phi, v))


def test_functoriality(small_words):
    cube = FactorHomomorphism(Z, Z, images=(3,))
    phi = FactorHomomorphism(ZZ, ZZ, factors=(cube, FactorHomomorphism.identity(Z)))
    o = Bergman((STD, STD))
    ordered = sort_elements(o, ZZ, small_words)
    images = [apply_free_hom(phi, u) for u in ordered]
    for p, q in zip(images, images[1:]):
        assert compare(o, ZZ, p, q) == Verdict.LESS


def test_klein_hom_checks_relation():
    FactorHomomorphism(K, K, images=(Klein(1, 0), Klein(0, 1)))
    FactorHomomorphism(K, K, images=(Klein(2, 0), Klein(1, 1)))
    with pytest.raises(ValueError):
        FactorHomomorphism(K, K, images=(Klein(0, 1), Klein(1, 0)))


def test_kernel_and_convexity():
    assert kernel_membership(ZZ, w((0, 1), (1, 1), (0, -1), (1, -1)))
    assert not kernel_membership(ZZ, x(1))
    samples = reduced_words(ZZ, 4, 2)
    assert convexity_probe(Bergman((STD, STD)), ZZ, samples) is None


def test_alpha_is_order_homomorphism(small_words):
    o = Bergman((STD, STD))
    lex = Lex((STD, STD))
    P = DirectProduct((Z, Z))
    ordered = sort_elements(o, ZZ, small_words)
    for p, q in zip(ordered, ordered[1:]):
        assert compare(lex, P, alpha(ZZ, p), alpha(ZZ, q)) <= 0


def test_asymmetry():
    o = Bergman((STD, STD))
    lhs, rhs = x(2), w((0, 1), (1, -1))
    assert compare(o, ZZ, lhs, rhs) == Verdict.LESS
    assert alpha(ZZ, lhs)[1] > alpha(ZZ, rhs)[1]


def test_witness_examples():
    assert find_distinguishing_witness([STD, STD], [REV, STD], ZZ) == x(1)
    assert find_distinguishing_witness([STD, STD], [STD, STD], ZZ) is None
    assert find_distinguishing_witness([STD, STD], [STD, REV], ZZ) == x(2)
    G = FreeProduct((K, Z))
    assert find_distinguishing_witness([KleinLeft(), STD], [KleinLeft(), REV], G) == w((1, 1))
