import itertools
import random

import pytest

from freeorder.groups import DirectProduct, FreeProduct, K, Klein, ShapeMismatch, Word, Z, identity, multiply
from freeorder.orders import (
    Bergman,
    Certificate,
    DegenerateVecLex,
    Entry,
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
    default_order,
    holds_under,
    is_bi_invariant,
    leaf_at,
    leaf_paths,
    replay,
    sign,
    validate,
)

STD, REV = IntStd(), IntRev()
Z2 = DirectProduct((Z, Z))
ZZ = FreeProduct((Z, Z))


def x(i, k=1):
    return Word([(i - 1, k)])


def test_validate_examples():
    validate(Lex((STD, STD)), Z2)
    with pytest.raises(DegenerateVecLex):
        validate(VecLex([[1, 1]]), Z2)
    with pytest.raises(DegenerateVecLex):
        validate(VecLex([[1, 2], [2, 4]]), Z2)
    with pytest.raises(ShapeMismatch):
        validate(Bergman((STD, STD)), Z2)
    with pytest.raises(ShapeMismatch):
        validate(KleinLeft(), Z)
    with pytest.raises(ShapeMismatch):
        validate(Lex((STD,) * 3), Z2)
    validate(VecLex([[0, 1], [1, 0]]), Z2)


def test_default_order():
    G = FreeProduct((K, Z2))
    o = default_order(G)
    assert o == Bergman((KleinLeft(), Lex((STD, STD))))
    validate(o, G)


def test_compare_examples():
    assert compare(Lex((STD, STD)), Z2, (1, -5), (0, 7)) == Verdict.GREATER
    assert compare(VecLex([[1, 1], [0, 1]]), Z2, (1, -1), (0, 0)) == Verdict.LESS
    assert compare(KleinLeft(), K, Klein(5, 0), identity(K)) == Verdict.GREATER
    assert compare(STD, Z, 3, 3) == Verdict.EQUAL
    assert compare(REV, Z, 3, 4) == Verdict.GREATER


def test_compare_rejects_foreign_elements():
    with pytest.raises(ShapeMismatch):
        compare(Lex((STD, STD)), Z2, (1, 2, 3), (0, 0))


def vec_oracle(rows, u, v):
    for r in rows:
        d = sum(a * (p - q) for a, p, q in zip(r, u, v))
        if d:
            return 1 if d > 0 else -1
    return 0


def test_veclex_against_dot_products():
    rows = [[2, -1], [1, 3]]
    o = VecLex(rows)
    pts = list(itertools.product(range(-3, 4), repeat=2))
    for u, v in itertools.product(pts, repeat=2):
        assert compare(o, Z2, u, v) == vec_oracle(rows, u, v)


def test_klein_left_is_left_invariant_not_right():
    o = KleinLeft()
    elems = [Klein(m, n) for m in range(-2, 3) for n in range(-2, 3)]
    for u, v, w in itertools.product(elems, repeat=3):
        if compare(o, K, u, v) < 0:
            assert compare(o, K, multiply(K, w, u), multiply(K, w, v)) < 0
    y, xk = Klein(1, 0), Klein(0, 1)
    # 1 < y but y x > x is false: right multiplication by x flips y
    assert compare(o, K, identity(K), y) < 0
    assert compare(o, K, multiply(K, identity(K), xk), multiply(K, y, xk)) > 0


def test_is_bi_invariant():
    assert is_bi_invariant(Bergman((STD, REV)))
    assert not is_bi_invariant(KleinLeft())
    assert not is_bi_invariant(Lex((KleinLeft(), STD)))
    assert is_bi_invariant(ProductPullback(VecLex([[0, 1], [1, 0]])))


def test_sign():
    assert sign(STD, Z, 4) == Verdict.GREATER
    assert sign(Bergman((STD, STD)), ZZ, Word()) == Verdict.EQUAL
    assert sign(Bergman((STD, STD)), ZZ, x(1, -1)) == Verdict.LESS


def test_leaf_paths_and_leaf_at():
    G = FreeProduct((FreeProduct((Z, Z)), K))
    o = Bergman((Bergman((STD, REV)), KleinLeft()))
    assert leaf_paths(o) == [(0, 0), (0, 1), (1,)]
    assert leaf_at(o, G, (0, 1)) == (REV, Z, 1)
    assert leaf_at(o, G, (1,)) == (KleinLeft(), K, 2)
    with pytest.raises(ShapeMismatch):
        leaf_at(o, G, (0,))


# -- certificates -------------------------------------------------------------


def test_replay_examples():
    o = Bergman((STD, STD))
    ctx = Recorder()
    assert compare(o, ZZ, x(1), x(2), ctx) == Verdict.GREATER
    assert ctx.fresh == len(ctx.certificate) > 0
    assert replay(ctx.certificate, o, ZZ, x(1), x(2)) == Verdict.GREATER

    empty = Certificate()
    assert replay(empty, o, ZZ, x(1), x(1)) == Verdict.EQUAL


def test_replay_survives_change_off_certificate():
    o = Bergman((STD, STD))
    u, v = Word(), x(1)
    ctx = Recorder()
    verdict = compare(o, ZZ, u, v, ctx)
    leaves = {e.leaf for e in ctx.certificate.entries}
    assert (1,) not in leaves
    changed = Bergman((STD, REV))
    assert holds_under(ctx.certificate, changed, ZZ)
    assert replay(ctx.certificate, changed, ZZ, u, v) == verdict


def test_certificate_entries_match_leaf_orders():
    o = Bergman((STD, REV))
    rng = random.Random(5)
    from freeorder.groups import reduced_words

    words = reduced_words(ZZ, 3, 2)
    for _ in range(50):
        u, v = rng.choice(words), rng.choice(words)
        ctx = Recorder()
        c = compare(o, ZZ, u, v, ctx)
        for e in ctx.certificate.entries:
            leaf, _, _ = leaf_at(o, ZZ, e.leaf)
            assert compare(leaf, Z, e.lhs, e.rhs) == e.verdict
            assert e.verdict != Verdict.EQUAL
        assert replay(ctx.certificate, o, ZZ, u, v) == c


def test_missing_answer():
    o = Bergman((STD, STD))
    ctx = Recorder()
    compare(o, ZZ, Word(), x(1), ctx)
    with pytest.raises(MissingAnswer):
        replay(ctx.certificate, o, ZZ, Word(), x(2))


def test_holds_under_detects_contradiction():
    cert = Certificate([Entry((0,), 0, 1, Verdict.LESS)])
    assert holds_under(cert, Bergman((STD, STD)), ZZ)
    assert not holds_under(cert, Bergman((REV, STD)), ZZ)


def test_lex_certificate_paths():
    o = Lex((STD, REV))
    ctx = Recorder()
    assert compare(o, Z2, (1, 2), (1, 3), ctx) == Verdict.GREATER
    assert [e.leaf for e in ctx.certificate.entries] == [(1,)]
