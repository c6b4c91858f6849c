import random
import re

import pytest

from tracedecat import current
from tracedecat.bubbles import CCW, CW, CartanData, CenterElement, power_sum, spade_offset
from tracedecat.current import (
    CANDIDATES,
    CenterVector,
    CurrentGen,
    GateError,
    _WordEvaluator,
    _xminus_raw,
    _xplus_raw,
    act,
    act_word,
    act_xi,
    act_xminus,
    act_xplus,
    calibrate_closure,
    random_center_poly,
    random_vector,
    sl2_commutator_check,
    verify_current_relations,
    weight_box,
)

SL2 = CartanData(2)
SL3 = CartanData(3)


def xp(i, r):
    return CurrentGen("xplus", i, r)


def xm(i, r):
    return CurrentGen("xminus", i, r)


def xi(i, r):
    return CurrentGen("xi", i, r)


def idem(w):
    return CurrentGen("idem", weight=tuple(w))


def random_element(rng, cd, lam, max_gens=3):
    return CenterElement(lam, random_center_poly(rng, cd.nodes, max_gens=max_gens))


# -- generators and vectors ---------------------------------------------------------


def test_current_gen_validation():
    assert str(xp(1, 2)) == "x+_{1,2}"
    assert str(idem((1, -1))) == "1_[1, -1]"
    with pytest.raises(ValueError):
        CurrentGen("y", 1, 0)
    with pytest.raises(ValueError):
        CurrentGen("idem", 1, 0)
    with pytest.raises(ValueError):
        CurrentGen("xi", 1, 0, weight=(0,))
    with pytest.raises(ValueError):
        CurrentGen("xplus", 1, -1)


def test_vector_basics():
    lam = (1, 0)
    e = CenterElement.parse(lam, "2 b[1,1] - 1")
    v = CenterVector({lam: e, (0, 0): CenterElement.zero((0, 0))})
    assert v.support == [lam]
    assert CenterVector.from_json(v.to_json()) == v
    assert v + v == v.scale(2) and not (v - v)
    with pytest.raises(ValueError):
        CenterVector({(0, 0): e})


# -- examples --------------------------------------------------------------------------


def test_idem_examples():
    u = CenterVector.unit((1, 0))
    assert act(SL3, idem((1, 0)), u) == u
    assert not act(SL3, idem((0, 1)), u)


@pytest.mark.parametrize("lam", [(-2, 3), (0, 0), (4, -1)])
def test_xi_examples(lam):
    u = CenterVector.unit(lam)
    for i in SL3.nodes:
        assert act(SL3, xi(i, 0), u) == u.scale(lam[i - 1])
        for r in range(1, 5):
            sign = (-1) ** ((i + 1) * r)
            expected = CenterVector.of(power_sum(SL3, i, r, lam).scale(sign))
            assert act(SL3, xi(i, r), u) == expected


def test_calibration_result_and_uniqueness():
    assert calibrate_closure() == (CW, "outer")
    working = []
    for convention in CANDIDATES:
        ok = all(
            _xplus_raw(SL2, 1, 0, _xminus_raw(SL2, 1, 0, CenterVector.unit((lam,)), convention), convention)
            - _xminus_raw(SL2, 1, 0, _xplus_raw(SL2, 1, 0, CenterVector.unit((lam,)), convention), convention)
            == CenterVector.unit((lam,)).scale(lam)
            for lam in range(-4, 5)
        )
        if ok:
            working.append(convention)
    assert working == [(CW, "outer")]


@pytest.mark.parametrize("lam", range(-3, 4))
def test_sl2_commutator_on_units(lam):
    u = CenterVector.unit((lam,))
    assert act_word(SL2, [xp(1, 0), xm(1, 0)], u) - act_word(SL2, [xm(1, 0), xp(1, 0)], u) == u.scale(lam)
    value = act_word(SL2, [xp(1, 1), xm(1, 0)], u) - act_word(SL2, [xm(1, 0), xp(1, 1)], u)
    assert value == CenterVector.of(power_sum(SL2, 1, 1, (lam,)))


def test_xplus_on_unit_closes_one_bubble():
    # The loop with r dots leaves one clockwise bubble at lam + alpha_i.
    for lam in range(-3, 4):
        for r in range(4):
            out = act_xplus(SL2, 1, r, CenterVector.unit((lam,)))
            outer = (lam + 2,)
            alpha = spade_offset(SL2, 1, CW, r, outer)
            if alpha < 0:
                assert not out
            else:
                expected = CenterElement.gen(outer, 1, alpha) if alpha else CenterElement.one(outer)
                assert out == CenterVector.of(expected)


def test_linearity():
    rng = random.Random(2)
    weights = weight_box(SL3, -2, 2)
    for g in (xp(1, 1), xm(2, 2), xi(1, 2), xi(2, 0), idem((0, 1))):
        u = random_vector(SL3, rng, weights)
        w = random_vector(SL3, rng, weights)
        assert act(SL3, g, u.scale(2) + w.scale(3)) == act(SL3, g, u).scale(2) + act(SL3, g, w).scale(3)


def test_weight_support():
    rng = random.Random(4)
    lam = (1, -2)
    v = CenterVector.of(random_element(rng, SL3, lam))
    for i in SL3.nodes:
        for r in range(3):
            assert act_xplus(SL3, i, r, v).support in ([], [SL3.shift(lam, i)])
            assert act_xminus(SL3, i, r, v).support in ([], [SL3.shift(lam, i, -1)])
            assert act_xi(SL3, i, r, v).support == [lam]


def test_degree_bookkeeping():
    rng = random.Random(8)
    for _ in range(40):
        lam = (rng.randint(-3, 3), rng.randint(-3, 3))
        mono = tuple(sorted((rng.choice((1, 2)), rng.randint(1, 3)) for _ in range(rng.randint(0, 3))))
        e = CenterElement(lam, {mono: 1})
        d = e.degree
        i, r = rng.choice((1, 2)), rng.randint(0, 3)
        up = act_xplus(SL3, i, r, CenterVector.of(e))
        down = act_xminus(SL3, i, r, CenterVector.of(e))
        # forced degrees: closure offsets of the cw bubble outside x+ and the ccw bubble outside x-
        plus_offset = spade_offset(SL3, i, CW, 0, SL3.shift(lam, i))
        minus_offset = spade_offset(SL3, i, CCW, 0, SL3.shift(lam, i, -1))
        for out, offset in ((up, plus_offset), (down, minus_offset)):
            for comp in out.components().values():
                assert comp.degrees() == [d + 2 * r + 2 * offset]


def test_xi_commutes_with_center_multiplication():
    rng = random.Random(6)
    for _ in range(10):
        lam = (rng.randint(-3, 3), rng.randint(-3, 3))
        a, c = random_element(rng, SL3, lam), random_element(rng, SL3, lam)
        for i in SL3.nodes:
            for r in range(4):
                lhs = act_xi(SL3, i, r, CenterVector.of(a * c))
                rhs = act_xi(SL3, i, r, CenterVector.of(a)).component(lam) * c
                assert lhs == CenterVector.of(rhs)


def test_gate():
    bad = CartanData(3, {(1, 2): 2})
    u = CenterVector.unit((0, 0))
    for g in (xp(1, 0), xm(1, 0), xi(1, 1), idem((0, 0))):
        with pytest.raises(GateError):
            act(bad, g, u)
    with pytest.raises(GateError):
        verify_current_relations(bad, max_degree=0, trials=1)
    ok = CartanData(3, {(1, 2): -1, (2, 1): -1})
    assert act(ok, xp(1, 0), u) is not None


def test_node_range():
    with pytest.raises(ValueError):
        act_xplus(SL3, 3, 0, CenterVector.unit((0, 0)))


# -- module property at composite words ----------------------------------------------


def _module_rewrites(rng):
    """Pairs (relation lhs words, rhs words) that must agree inside any context."""
    i, j = rng.choice(SL3.nodes), rng.choice(SL3.nodes)
    k, l = rng.randint(0, 2), rng.randint(0, 2)
    a = SL3.cartan(i, j)
    lhs = [(1, [xp(i, k), xm(j, l)]), (-1, [xm(j, l), xp(i, k)])]
    rhs = [(1, [xi(i, k + l)])] if i == j else []
    yield lhs, rhs
    lhs = [(1, [xi(i, 0), xp(j, k)]), (-1, [xp(j, k), xi(i, 0)])]
    yield lhs, [(a, [xp(j, k)])]
    lhs = [(1, [xi(i, k + 1), xm(j, l)]), (-1, [xm(j, l), xi(i, k + 1)])]
    yield lhs, [(-a, [xm(j, k + 1 + l)])]


def _eval_terms(terms, prefix, suffix, v):
    out = CenterVector()
    for c, word in terms:
        out = out + act_word(SL3, prefix + word + suffix, v).scale(c)
    return out


def test_module_property_in_context():
    rng = random.Random(12)
    gens = [xp(1, 0), xp(2, 1), xm(1, 1), xm(2, 0), xi(1, 1), xi(2, 2)]
    for _ in range(12):
        lam = (rng.randint(-2, 2), rng.randint(-2, 2))
        v = CenterVector.of(random_element(rng, SL3, lam, max_gens=2))
        prefix = [rng.choice(gens) for _ in range(rng.randint(0, 1))]
        suffix = [rng.choice(gens) for _ in range(rng.randint(0, 1))]
        for lhs, rhs in _module_rewrites(rng):
            assert _eval_terms(lhs, prefix, suffix, v) == _eval_terms(rhs, prefix, suffix, v)


# -- the fast engine agrees with the reference operators --------------------------------


def _letter(g):
    if g.kind == "xi":
        return ("xi", g.node, g.degree)
    return ("x", 1 if g.kind == "xplus" else -1, g.node, g.degree)


@pytest.mark.parametrize("cd", [SL2, SL3], ids=["sl2", "sl3"])
def test_fast_engine_matches_reference(cd):
    rng = random.Random(cd.n)
    weights = weight_box(cd, -2, 2)
    vectors = [random_vector(cd, rng, weights) for _ in range(2)]
    evaluator = _WordEvaluator(cd, vectors)
    kinds = ("xplus", "xminus", "xi")
    for _ in range(25):
        word = [CurrentGen(rng.choice(kinds), rng.choice(cd.nodes), rng.randint(0, 3)) for _ in range(rng.randint(1, 3))]
        for t, v in enumerate(vectors):
            fast = evaluator.eval(tuple(_letter(g) for g in word), t)
            fast = CenterVector._raw({w: evaluator.ring.to_poly(f) for w, f in fast.items()})
            assert fast == act_word(cd, word, v), [str(g) for g in word]


# -- the relation harness --------------------------------------------------------------

LINE = re.compile(r"^AXIOM C[1-6]( [a-z0-9]+=[-+0-9]+)+ λ=\[-?\d+(,-?\d+)*\] (PASS|FAIL)$")


def test_verify_small_sl2():
    report = verify_current_relations(SL2, weight_range=(-2, 2), max_degree=2, trials=2, seed=3)
    assert report.passed
    assert set(report.summary()) == {"C1", "C2", "C3", "C4", "C5"}
    for line in report.lines():
        assert LINE.match(line), line
    assert "AXIOM C5 i=1 j=1 k=1 l=0 λ=[-2] PASS" in report.lines()
    assert report.meta["seed"] == 3
    again = verify_current_relations(SL2, weight_range=(-2, 2), max_degree=2, trials=2, seed=3)
    assert again.lines() == report.lines()


def test_verify_small_sl3():
    report = verify_current_relations(SL3, weight_range=(-1, 1), max_degree=1, trials=1, seed=1)
    assert report.passed
    assert set(report.summary()) == {"C1", "C2", "C3", "C4", "C5", "C6"}
    assert any(line.startswith("AXIOM C6 i=1 j=2 k1=0 k2=1 l=0 sign=-") for line in report.lines())


def test_harness_detects_a_wrong_twist(monkeypatch):
    monkeypatch.setattr(current, "_twist", lambda i, r: 1)
    report = verify_current_relations(SL3, weight_range=(-1, 1), max_degree=1, trials=1, seed=1)
    assert not report.passed
    assert {c.family for c in report.failures()} & {"C3", "C5"}


@pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (3, 0)])
def test_sl2_commutator_check(r, s):
    assert sl2_commutator_check(r, s, trials=2, seed=r + s)
