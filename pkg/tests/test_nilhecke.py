import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import act_word, poly_to_sympy, sym_poly, xs
from tracedecat.nilhecke import (
    NHElement,
    NHMatrix,
    NHWord,
    PolyN,
    TraceClassNH,
    act,
    equals,
    idempotent_e,
    staircase_basis,
    staircase_expand,
    standard_basis_class,
    to_matrix,
    trace_class,
    verify_relations,
)
from tracedecat.symfunc import ParseError, SymFn, SymN, e_in_h, partitions
from tracedecat._exact import exact_rank


def letters(n):
    return [("x", i) for i in range(1, n + 1)] + [("d", i) for i in range(1, n)]


def word(n, *tokens):
    return NHElement.word(n, *tokens)


def random_word(rng, n, max_len=6):
    return NHElement(n, {NHWord(rng.choice(letters(n)) for _ in range(rng.randint(0, max_len))): 1})


@st.composite
def elements(draw, n, max_len=4, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        w = draw(st.lists(st.sampled_from(letters(n)), max_size=max_len))
        terms[NHWord(w)] = terms.get(NHWord(w), 0) + draw(st.integers(-3, 3))
    return NHElement(n, terms)


@st.composite
def polys(draw, n, max_deg=4):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[e] = draw(st.integers(-4, 4))
    return PolyN(n, terms)


# -- the action -------------------------------------------------------------------


def test_act_examples():
    x1 = PolyN.var(2, 1)
    assert act(word(2, "d1"), x1) == PolyN.one(2)
    assert act(word(2, "d1"), PolyN.one(2)) == PolyN(2)
    assert act(word(2, "x1", "d1"), x1) == x1


def test_act_strand_mismatch():
    with pytest.raises(ValueError):
        act(word(2, "d1"), PolyN.one(3))


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_action_matches_divided_difference_oracle(n, data):
    """Exact division and the word convention, checked against sympy."""
    e = data.draw(elements(n))
    p = data.draw(polys(n))
    expected = poly_to_sympy(PolyN(n))
    for w, c in e.terms.items():
        expected = expected + act_word(list(w), poly_to_sympy(p), n) * c
    assert poly_to_sympy(act(e, p)) == expected


def test_word_reads_right_to_left():
    # x1 d1 applies d1 first: x1 d1 (x1) = x1 while d1 x1 (x1) = d1(x1^2) = x1 + x2
    x1 = PolyN.var(2, 1)
    assert act(word(2, "d1", "x1"), x1) == x1 + PolyN.var(2, 2)


# -- relations ----------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_verify_relations(n):
    report = verify_relations(n)
    assert report.passed
    families = set(report.summary())
    if n == 1:
        assert "nil_square" not in families
    if n >= 2:
        assert {"nil_square", "dot_slide_left", "dot_slide_right"} <= families
    if n == 4:
        assert {"braid", "crossing_commute", "dot_crossing_commute"} <= families
    assert all(line.startswith("RELATION ") for line in report.lines())


def test_relation_detector_is_not_vacuous():
    assert not equals(word(3, "d1", "d2"), word(3, "d2", "d1"))
    assert not equals(word(2, "x1", "d1"), word(2, "d1", "x1"))


def test_equals_examples():
    one = NHElement.identity(2)
    assert equals(word(2, "x1", "d1") - word(2, "d1", "x2"), one)
    assert equals(word(2, "d1", "d1"), NHElement.zero(2))
    assert equals(word(2, "x1", "x2"), word(2, "x2", "x1"))
    with pytest.raises(ValueError):
        equals(one, NHElement.identity(3))


# -- idempotent -------------------------------------------------------------------------


def test_idempotent_words():
    assert idempotent_e(1) == NHElement.identity(1) or str(idempotent_e(1)) == "1"
    assert str(idempotent_e(2)) == "x1 d1"
    assert str(idempotent_e(3)) == "x1 x1 x2 d1 d2 d1"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_idempotent(n):
    e = idempotent_e(n)
    assert equals(e * e, e)
    assert e.degrees() == [0]


# -- matrices -----------------------------------------------------------------------


def sym_matrix(n, rows):
    return NHMatrix(n, [[SymN.project(n, x) for x in row] for row in rows])


def test_matrix_examples():
    e1, e2 = e_in_h(1), e_in_h(2)
    assert list(staircase_basis(2)) == [(0, 0), (1, 0)]
    assert to_matrix(word(2, "d1")) == sym_matrix(2, [[0, 1], [0, 0]])
    assert to_matrix(word(2, "x1")) == sym_matrix(2, [[0, -e2], [1, e1]])
    for n in (1, 2, 3):
        assert to_matrix(NHElement.identity(n)) == NHMatrix.identity(n)


def test_staircase_basis_size():
    assert [len(staircase_basis(n)) for n in range(1, 5)] == [1, 2, 6, 24]
    assert list(staircase_basis(3)) == sorted(staircase_basis(3))


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_staircase_expansion_oracle(n, data):
    """sum_b coeff_b(p) x^b equals p, evaluated as honest polynomials."""
    p = data.draw(polys(n, max_deg=5))
    total = poly_to_sympy(PolyN(n))
    for b, c in staircase_expand(p).items():
        total = total + poly_to_sympy(PolyN.monomial(b)) * sym_poly(c.value, n)
    assert total == poly_to_sympy(p)


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_matrix_against_action_oracle(n, data):
    e = data.draw(elements(n))
    m = to_matrix(e)
    basis = staircase_basis(n)
    for col, a in enumerate(basis):
        lhs = poly_to_sympy(PolyN(n))
        for row, b in enumerate(basis):
            lhs = lhs + poly_to_sympy(PolyN.monomial(b)) * sym_poly(m.entries[row][col].value, n)
        expected = poly_to_sympy(PolyN(n))
        for w, c in e.terms.items():
            expected = expected + act_word(list(w), poly_to_sympy(PolyN.monomial(a)), n) * c
        assert lhs == expected


def test_matrix_entry_degrees():
    rng = random.Random(3)
    for n in (2, 3):
        for _ in range(20):
            w = random_word(rng, n)
            (d,) = w.degrees()
            m = to_matrix(w)
            basis = staircase_basis(n)
            for r, b in enumerate(basis):
                for c, a in enumerate(basis):
                    entry = m.entries[r][c]
                    if entry:
                        assert entry.value.is_homogeneous()
                        assert entry.degree == 2 * sum(a) - 2 * sum(b) + d


def test_multiplicative_and_faithful_sample():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.choice([2, 3])
        a, b = random_word(rng, n), random_word(rng, n)
        assert to_matrix(a * b) == to_matrix(a) @ to_matrix(b)
        assert equals(a, b) == (to_matrix(a) == to_matrix(b))


def test_matrix_json_round_trip():
    m = to_matrix(word(2, "x1") + word(2, "d1").scale(Fraction(1, 2)))
    for basis in ("e", "h", "schur"):
        assert NHMatrix.from_json(m.to_json(basis)) == m
    obj = m.to_json()
    assert obj["basis"] == [[0, 0], [1, 0]]
    bad = dict(obj, basis=[[1, 0], [0, 0]])
    with pytest.raises(ParseError):
        NHMatrix.from_json(bad)


# -- traces ----------------------------------------------------------------------------


def test_trace_examples():
    assert trace_class(word(2, "d1")) == TraceClassNH(SymN.zero(2))
    assert trace_class(NHElement.identity(2)) == 2
    assert trace_class(word(2, "x1", "d1")) == 1
    assert trace_class(NHElement.identity(2)) == trace_class(word(2, "x1", "d1")) * 2
    assert trace_class(word(2, "x1", "d1")) == -trace_class(word(2, "x2", "d1"))


def test_trace_cyclic_sample():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.choice([2, 3])
        a, b = random_word(rng, n), random_word(rng, n)
        assert trace_class(a * b) == trace_class(b * a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_negative_degree_traces_vanish(n):
    for length in range(1, 6):
        for w in itertools.product(letters(n), repeat=length):
            e = NHElement(n, {NHWord(w): 1})
            if e.degrees()[0] < 0:
                assert not trace_class(e).value, w


def test_standard_basis_examples():
    assert standard_basis_class(2, ()) == 1
    for k in range(5):
        assert standard_basis_class(1, (k,)) == SymN.project(1, SymFn.h(k) if k else SymFn.one())
    c = standard_basis_class(2, (1,))
    assert c.value and c.value.degree == 2
    with pytest.raises(ValueError):
        standard_basis_class(2, (1, 1, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_standard_basis_independent(n):
    for d in range(0, 6):
        lams = [lam for lam in partitions(d) if len(lam) <= n]
        classes = [standard_basis_class(n, lam) for lam in lams]
        for c in classes:
            assert c.value.degree == 2 * d or not c.value
        target = [lam for lam in partitions(d) if len(lam) <= n]
        from tracedecat.symfunc import to_basis

        rows = [[to_basis(c.value.value, "e").get(mu.conjugate(), 0) for mu in target] for c in classes]
        assert exact_rank(rows, len(target)) == len(lams)


# -- text and JSON ---------------------------------------------------------------------


def test_parse_examples():
    e = NHElement.parse(2, "3 x1 d1 - d1 x2")
    assert e.terms == {NHWord([("x", 1), ("d", 1)]): 3, NHWord([("d", 1), ("x", 2)]): -1}
    assert NHElement.parse(2, "x1^2 d1") == word(2, "x1", "x1", "d1")
    assert NHElement.parse(2, "1/2") == NHElement.identity(2).scale(Fraction(1, 2))
    assert NHElement.parse(2, "-d1 + 1") == NHElement.identity(2) - word(2, "d1")


@pytest.mark.parametrize("bad", ["", "x1 +", "d2", "x3", "x1 3", "y1", "d0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        NHElement.parse(2, bad)


@given(elements(3))
def test_text_and_json_round_trip(e):
    assert NHElement.parse(3, str(e)) == e
    assert NHElement.from_json(e.to_json()) == e
