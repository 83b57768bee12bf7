"""Property suites used by ``freeorder selftest`` and the acceptance tests.

Each check returns a :class:`Result`; all arithmetic is exact, so every
check demands zero violations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .braid import BraidWord, artin_apply, braid_tensor, check_order_preserving, free_group
from .coproduct import (
    FactorHomomorphism,
    apply_free_hom,
    convexity_probe,
    find_distinguishing_witness,
    nary_bergman,
)
from .groups import (
    DirectProduct,
    FreeProduct,
    KleinBottle,
    Word,
    Z,
    _mul,
    alpha,
    factor_elements,
    identity,
    inject,
    reduced_words,
    regroup,
)
from .orders import (
    Bergman,
    IntRev,
    IntStd,
    KleinLeft,
    Lex,
    Recorder,
    Verdict,
    _leaf_compare,
    compare,
    is_bi_invariant,
    leaf_paths,
    replay,
)
from .parse import format_element
from .polymatrix import injectivity_check
from .ring import RingElement, Sign, ring_sign


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number:2d}] {self.name}: {self.detail}"


@dataclass
class Settings:
    max_syllables: int = 3
    exp_bound: int = 2
    seed: int = 0


STD = IntStd()
REV = IntRev()
ZZ = FreeProduct((Z, Z))
BERG = Bergman((STD, STD))
KZ = FreeProduct((KleinBottle(), Z))
KBERG = Bergman((KleinLeft(), STD))


def universe(G: FreeProduct, s: Settings) -> list[Word]:
    return reduced_words(G, s.max_syllables, s.exp_bound)


# -- reusable property checks -------------------------------------------------


def total_order_violations(o, G, U, rng, triples: int) -> tuple[int, int]:
    bad = 0
    for u, v in itertools.combinations_with_replacement(U, 2):
        a, b = compare(o, G, u, v), compare(o, G, v, u)
        if a != -b or (a == Verdict.EQUAL) != (u == v):
            bad += 1
    bad_t = 0
    for _ in range(triples):
        u, v, w = rng.choice(U), rng.choice(U), rng.choice(U)
        if compare(o, G, u, v) < 0 and compare(o, G, v, w) < 0 and not compare(o, G, u, w) < 0:
            bad_t += 1
    return bad, bad_t


def extension_violations(o, G, bound: int) -> int:
    bad = 0
    for i, (c, oc) in enumerate(zip(G.children, o.children)):
        elems = [identity(c)] + factor_elements(c, bound)
        for a, b in itertools.product(elems, repeat=2):
            expected = Verdict.EQUAL if a == b else _leaf_compare(oc, a, b)
            if compare(o, G, inject(G, i, a), inject(G, i, b)) != expected:
                bad += 1
    return bad


def invariance_violations(o, G, U, rng, samples: int, right: bool) -> tuple[int, int]:
    bad_left = bad_right = 0
    done = 0
    while done < samples:
        u, v, w = rng.choice(U), rng.choice(U), rng.choice(U)
        r = compare(o, G, u, v)
        if r == Verdict.EQUAL:
            continue
        if r > 0:
            u, v = v, u
        done += 1
        if not compare(o, G, _mul(G, w, u), _mul(G, w, v)) < 0:
            bad_left += 1
        if right and not compare(o, G, _mul(G, u, w), _mul(G, v, w)) < 0:
            bad_right += 1
    return bad_left, bad_right


def left_monomial_violations(o, carrier, rng, samples: int, bound: int = 2) -> int:
    """Positive ring elements stay positive under left multiplication by positive monomials."""
    elems = [identity(carrier)] + factor_elements(carrier, bound)
    bad = 0
    for _ in range(samples):
        terms = {rng.choice(elems): rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(rng.randint(1, 4))}
        r = RingElement(carrier, terms)
        if ring_sign(o, r) != Sign.POSITIVE:
            r = -r
        m = RingElement.monomial(carrier, rng.choice(elems), rng.randint(1, 3))
        if ring_sign(o, m * r) != Sign.POSITIVE:
            bad += 1
    return bad


def bracketings(n: int) -> list:
    """All full binary bracketings of n copies of Z, with their default orders."""
    if n == 1:
        return [(Z, STD)]
    out = []
    for k in range(1, n):
        for (L, oL), (R, oR) in itertools.product(bracketings(k), bracketings(n - k)):
            out.append((FreeProduct((L, R)), Bergman((oL, oR))))
    return out


def coherence_disagreements(n: int, rng, pairs: int, s: Settings):
    flat = FreeProduct([Z] * n)
    U = universe(flat, s)
    shapes = bracketings(n)
    bad, example = 0, None
    for _ in range(pairs):
        u, v = rng.choice(U), rng.choice(U)
        verdicts = [compare(o, G, regroup(flat, G, u), regroup(flat, G, v)) for G, o in shapes]
        if len(set(verdicts)) > 1:
            bad += 1
            example = example or (u, v, verdicts)
    return bad, len(shapes), example


# -- criteria -----------------------------------------------------------------


def c01_total_order(s: Settings) -> Result:
    rng = random.Random(s.seed)
    U = universe(ZZ, s)
    bad, bad_t = total_order_violations(BERG, ZZ, U, rng, 10_000)
    return Result(1, "total order axioms", bad == 0 and bad_t == 0,
                  f"|U|={len(U)}, trichotomy violations={bad}, transitivity violations={bad_t}/10000")


def c02_extension(s: Settings) -> Result:
    bad = extension_violations(BERG, ZZ, 10) + extension_violations(Bergman((REV, STD)), ZZ, 10)
    return Result(2, "extends factor orders", bad == 0, f"|exponent|<=10, violations={bad}")


def c03_invariance(s: Settings) -> Result:
    rng = random.Random(s.seed + 3)
    U = universe(ZZ, s)
    bl, br = invariance_violations(BERG, ZZ, U, rng, 2000, right=True)
    UK = reduced_words(KZ, s.max_syllables, 1)
    kl, _ = invariance_violations(KBERG, KZ, UK, rng, 2000, right=False)
    ok = bl == br == kl == 0
    return Result(3, "invariance", ok, f"bi: left={bl} right={br}; left-only K*Z: left={kl} (of 2000 each)")


def c04_functoriality(s: Settings) -> Result:
    U = universe(ZZ, s)
    cube = FactorHomomorphism(Z, Z, images=(3,))
    phi = FactorHomomorphism(ZZ, ZZ, factors=(cube, FactorHomomorphism.identity(Z)))
    images = {w: apply_free_hom(phi, w) for w in U}
    bad = checked = 0
    for u, v in itertools.permutations(U, 2):
        if compare(BERG, ZZ, u, v) < 0:
            checked += 1
            if not compare(BERG, ZZ, images[u], images[v]) < 0:
                bad += 1
    return Result(4, "functoriality x1 -> x1^3", bad == 0, f"pairs u<v checked={checked}, violations={bad}")


def c05_rho_injective(s: Settings) -> Result:
    rep = injectivity_check(ZZ, 4, 2)
    return Result(5, "rho injective / ping-pong", rep.ok, f"words checked={rep.checked} {rep.reason}".strip())


def c06_alpha(s: Settings) -> Result:
    U = universe(ZZ, s)
    P = DirectProduct(ZZ.children)
    lex = Lex((STD, STD))
    alphas = {w: alpha(ZZ, w) for w in U}
    bad = 0
    for u, v in itertools.permutations(U, 2):
        if compare(BERG, ZZ, u, v) < 0 and compare(lex, P, alphas[u], alphas[v]) > 0:
            bad += 1
    violation = convexity_probe(BERG, ZZ, U)
    return Result(6, "alpha order-homomorphism, convex kernel", bad == 0 and violation is None,
                  f"alpha violations={bad}, convexity violation={violation}")


def c07_asymmetry(s: Settings) -> Result:
    x2 = Word([(1, 1)])
    x1x2inv = Word([(0, 1), (1, -1)])
    lhs_first = compare(BERG, ZZ, x2, x1x2inv) == Verdict.LESS
    g, g2 = alpha(ZZ, x2)[1], alpha(ZZ, x1x2inv)[1]
    reversed_second = _leaf_compare(STD, g, g2) == Verdict.GREATER
    return Result(7, "asymmetry witness x2 < x1 x2^-1", lhs_first and reversed_second,
                  f"x2 < x1*x2^-1: {lhs_first}; second coordinates {g} > {g2}: {reversed_second}")


def c08_coherence(s: Settings) -> Result:
    rng = random.Random(s.seed + 8)
    bad3, n3, ex3 = coherence_disagreements(3, rng, 2000, s)
    bad4, n4, ex4 = coherence_disagreements(4, rng, 2000, s)
    detail = f"3 factors ({n3} bracketings): {bad3}/2000 disagree; 4 factors ({n4} bracketings): {bad4}/2000 disagree"
    if ex3:
        flat = FreeProduct([Z] * 3)
        u, v = (format_element(flat, w) for w in ex3[:2])
        detail += f"; e.g. {u} vs {v} -> {', '.join(v.name for v in ex3[2])}"
    return Result(8, "bracketings agree", bad3 == 0 and bad4 == 0, detail)


def _mutations(o, G, cert):
    """Orderings differing from ``o`` only at leaves the certificate never queried."""
    used = {e.leaf for e in cert.entries}
    for path in leaf_paths(o):
        if path not in used:
            yield _swap_leaf(o, path)


def _swap_leaf(o, path):
    if not path:
        return REV if isinstance(o, IntStd) else STD if isinstance(o, IntRev) else o
    children = list(o.children)
    children[path[0]] = _swap_leaf(children[path[0]], path[1:])
    return type(o)(children)


def c09_injectivity_and_certificates(s: Settings) -> Result:
    rng = random.Random(s.seed + 9)
    assignments = list(itertools.product([STD, REV], repeat=2))
    missing = 0
    for a, b in itertools.combinations(assignments, 2):
        w = find_distinguishing_witness(list(a), list(b), ZZ)
        one = identity(ZZ)
        if w is None or compare(Bergman(a), ZZ, one, w) == compare(Bergman(b), ZZ, one, w):
            missing += 1
    U = universe(ZZ, s)
    replay_bad = mutation_bad = 0
    for _ in range(100):
        o = Bergman(rng.choice(assignments))
        u, v = rng.choice(U), rng.choice(U)
        ctx = Recorder()
        verdict = compare(o, ZZ, u, v, ctx)
        if replay(ctx.certificate, o, ZZ, u, v) != verdict:
            replay_bad += 1
        for o2 in _mutations(o, ZZ, ctx.certificate):
            if compare(o2, ZZ, u, v) != verdict or replay(ctx.certificate, o2, ZZ, u, v) != verdict:
                mutation_bad += 1
    ok = missing == 0 and replay_bad == 0 and mutation_bad == 0
    return Result(9, "injectivity witnesses and certificate replay", ok,
                  f"undistinguished pairs={missing}/6, replay mismatches={replay_bad}/100, "
                  f"unqueried-leaf mutations changing verdict={mutation_bad}")


def c10_braids(s: Settings) -> Result:
    s1 = BraidWord(2, [(1, 1)])
    s1sq = s1 * s1
    fail = check_order_preserving(s1, BERG, ZZ, 3, 2)
    expected = (Word([(1, 1)]), Word([(0, 1)]))
    part1 = not fail.passed and fail.counterexample == expected
    part2 = check_order_preserving(s1sq, BERG, ZZ, s.max_syllables, s.exp_bound).passed
    G4 = FreeProduct((ZZ, ZZ))
    o4 = nary_bergman([BERG, BERG], G4)
    tensor = braid_tensor(s1sq, s1sq)
    part3 = check_order_preserving(tensor, o4, G4, 2, 2).passed
    part4 = tensor_artin_mismatches(s1sq, BraidWord(2, [(1, -1)]), random.Random(s.seed + 10), 500) == 0
    return Result(10, "braids", part1 and part2 and part3 and part4,
                  f"s1 counterexample={fail.counterexample == expected}, s1^2 passes={part2}, "
                  f"s1^2 (x) s1^2 passes={part3}, tensor-Artin exact={part4}")


def tensor_artin_mismatches(a: BraidWord, b: BraidWord, rng, samples: int) -> int:
    """Compare the action of ``a (x) b`` with the free product of the two actions."""
    m, n = a.strands, b.strands
    flat = free_group(m + n)
    split = FreeProduct((free_group(m) if m > 1 else Z, free_group(n) if n > 1 else Z))
    ab = braid_tensor(a, b)

    def separate(w):
        out = identity(split)
        for i, e in regroup(flat, split, w):
            img = artin_apply(a if i == 0 else b, e)
            out = _mul(split, out, Word([(i, img)]))
        return regroup(split, flat, out)

    words = [Word([(j, 1)]) for j in range(m + n)]
    U = reduced_words(flat, 4, 2)
    words += [rng.choice(U) for _ in range(samples)]
    return sum(artin_apply(ab, w) != separate(w) for w in words)


def c11_left_order(s: Settings) -> Result:
    rng = random.Random(s.seed + 11)
    UK = reduced_words(KZ, s.max_syllables, 1)
    bad, bad_t = total_order_violations(KBERG, KZ, UK, rng, 10_000)
    ext = extension_violations(KBERG, KZ, 10)
    left, _ = invariance_violations(KBERG, KZ, UK, rng, 2000, right=False)
    carrier = DirectProduct(KZ.children)
    mono = left_monomial_violations(Lex((KleinLeft(), STD)), carrier, rng, 2000)
    flag = not is_bi_invariant(KBERG)
    ok = bad == bad_t == ext == left == mono == 0 and flag
    return Result(11, "left-order mode (K * Z)", ok,
                  f"|U|={len(UK)}, trichotomy={bad}, transitivity={bad_t}, extension={ext}, "
                  f"left invariance={left}, left-monomial positivity={mono}, flagged left-only={flag}")


CRITERIA: list[Callable[[Settings], Result]] = [
    c01_total_order,
    c02_extension,
    c03_invariance,
    c04_functoriality,
    c05_rho_injective,
    c06_alpha,
    c07_asymmetry,
    c08_coherence,
    c09_injectivity_and_certificates,
    c10_braids,
    c11_left_order,
]


def run_all(s: Settings | None = None, report: Callable[[str], None] | None = print) -> list[Result]:
    s = s or Settings()
    results = []
    for check in CRITERIA:
        r = check(s)
        if report:
            report(r.line())
        results.append(r)
    return results
