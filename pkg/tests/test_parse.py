import json
import random

import pytest

from freeorder.braid import BraidWord
from freeorder.groups import DirectProduct, FreeProduct, K, Klein, Word, Z, reduced_words
from freeorder.orders import Bergman, IntRev, IntStd, KleinLeft, Lex, ProductPullback, Recorder, VecLex, compare, replay
from freeorder.parse import (
    ParseError,
    certificate_from_json,
    certificate_to_json,
    format_element,
    format_group,
    format_order,
    parse_braid,
    parse_element,
    parse_group,
    parse_order,
)

ZZ = FreeProduct((Z, Z))


def test_parse_group_examples():
    assert parse_group("(Z*Z)*Z") == FreeProduct((ZZ, Z))
    assert parse_group("Z*Z*Z") == FreeProduct((Z, Z, Z))
    assert parse_group("K * Z") == FreeProduct((K, Z))
    assert parse_group("ZxZ") == DirectProduct((Z, Z))
    assert parse_group("(ZxZ)*K") == FreeProduct((DirectProduct((Z, Z)), K))


@pytest.mark.parametrize("text", ["", "Z*", "Q", "(Z*Z", "Z*Z)"])
def test_parse_group_errors(text):
    with pytest.raises(ParseError):
        parse_group(text)


def test_parse_element_examples():
    assert parse_element("x1^2*x2^-1", ZZ) == Word([(0, 2), (1, -1)])
    assert parse_element("1", ZZ) == Word()
    assert parse_element("x1*x1^-1", ZZ) == Word()
    assert parse_element("(x1*x2)^-1", ZZ) == Word([(1, -1), (0, -1)])
    assert parse_element("x2*x1", K) == Klein(-1, 1)
    assert parse_element("(x1^2, x2^-3)", DirectProduct((Z, Z))) == (2, -3)


def test_parse_element_errors():
    with pytest.raises(ParseError):
        parse_element("x3", ZZ)
    with pytest.raises(ParseError):
        parse_element("x1^", ZZ)


def test_parse_order_examples():
    assert parse_order("bergman(std,rev)", ZZ) == Bergman((IntStd(), IntRev()))
    assert parse_order("default", FreeProduct((K, Z))) == Bergman((KleinLeft(), IntStd()))
    G = FreeProduct((DirectProduct((Z, Z)), Z))
    assert parse_order("bergman(veclex[[1,1];[0,1]],default)", G) == Bergman((VecLex([[1, 1], [0, 1]]), IntStd()))
    assert parse_order("pullback(lex(std,std))", ZZ) == ProductPullback(Lex((IntStd(), IntStd())))
    from freeorder.orders import DegenerateVecLex

    with pytest.raises(DegenerateVecLex):
        parse_order("pullback(veclex[[1,1]])", ZZ)


def test_round_trips():
    for text in ["Z", "K", "Z*Z", "(Z*Z)*Z", "Z*(Z*K)", "ZxZ", "(Z*Z)x(ZxZ)"]:
        G = parse_group(text)
        assert parse_group(format_group(G)) == G
    G = parse_group("(K*Z)*Z")
    for text in ["default", "bergman(bergman(kleft,rev),std)"]:
        o = parse_order(text, G)
        assert parse_order(format_order(o), G) == o
    rng = random.Random(0)
    for G in [ZZ, FreeProduct((K, Z)), FreeProduct((ZZ, Z))]:
        words = reduced_words(G, 3, 2)
        for w in rng.sample(words, 40):
            assert parse_element(format_element(G, w), G) == w


def test_parse_braid():
    assert parse_braid("s1 s2^-1", 3) == BraidWord(3, [(1, 1), (2, -1)])
    assert parse_braid("1", 2) == BraidWord(2)
    with pytest.raises(ParseError):
        parse_braid("s3", 3)


def test_certificate_json_round_trip():
    o = Bergman((IntStd(), IntRev()))
    u, v = parse_element("x1*x2", ZZ), parse_element("x2^-1*x1^2", ZZ)
    ctx = Recorder()
    verdict = compare(o, ZZ, u, v, ctx)
    doc = certificate_to_json(ctx.certificate, o, ZZ, lhs="x1*x2")
    data = json.loads(doc)
    assert data["lhs"] == "x1*x2"
    assert all(list(e) == ["leaf", "lhs", "rhs", "verdict"] for e in data["entries"])
    back = certificate_from_json(doc, o, ZZ)
    assert back.entries == ctx.certificate.entries
    assert replay(back, o, ZZ, u, v) == verdict


def test_certificate_uses_global_generator_names():
    G = FreeProduct((K, Z))
    o = Bergman((KleinLeft(), IntStd()))
    ctx = Recorder()
    compare(o, G, Word(), parse_element("x3", G), ctx)
    data = json.loads(certificate_to_json(ctx.certificate, o, G))
    assert any("x3" in (e["lhs"] + e["rhs"]) for e in data["entries"])
