"""Acceptance criteria 1-10.

Each criterion is a function returning ``(passed, detail)``.  Under pytest
every criterion is its own test and the outcome is collected in RESULTS,
which conftest prints as one ``CRITERION k: PASS/FAIL`` line each.  Run as
a script (``python tests/test_acceptance.py``) to print the same lines
directly.
"""

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

from tracedecat._exact import exact_rank
from tracedecat.bubbles import (
    CCW,
    CW,
    CartanData,
    CenterElement,
    cc_bubble,
    from_absolute,
    power_slide_check,
    power_sum,
    power_sum_via_newton,
    slide_bubble_past_strand,
    slide_center_past_strand,
)
from tracedecat.current import sl2_commutator_check, verify_current_relations
from tracedecat.grassmann import chern_character_report, graded_dimension, ideal_relation_check
from tracedecat.nilhecke import (
    NHElement,
    NHWord,
    equals,
    standard_basis_class,
    to_matrix,
    trace_class,
)
from tracedecat.symfunc import SymN, gaussian_binomial, partitions, to_basis

RESULTS = {}


def report(k, passed, detail=""):
    RESULTS[k] = bool(passed)
    line = f"CRITERION {k}: {'PASS' if passed else 'FAIL'}"
    print(f"{line}  ({detail})" if detail else line)
    return passed


# -- 1. nilHecke relations ---------------------------------------------------------------


def criterion_1():
    from tracedecat.nilhecke import verify_relations

    start = time.perf_counter()
    reports = [verify_relations(n) for n in range(1, 5)]
    elapsed = time.perf_counter() - start
    checks = sum(len(r.checks) for r in reports)
    ok = all(r.passed for r in reports) and elapsed < 10
    return ok, f"{checks} relation instances for n<=4 in {elapsed:.1f}s"


# -- 2. trace examples -------------------------------------------------------------------


def criterion_2():
    def w(*tokens):
        return NHElement.word(2, *tokens)

    checks = [
        not trace_class(w("d1")).value,
        trace_class(NHElement.identity(2)) == trace_class(w("x1", "d1")) * 2,
        trace_class(w("x1", "d1")) == -trace_class(w("x2", "d1")),
        trace_class(w("x1", "d1")) == SymN.one(2),
    ]
    return all(checks), "[d1]=0, [1]=2[x1 d1], [x1 d1]=-[x2 d1]"


# -- 3. matrix model ------------------------------------------------------------------------


def _letters(n):
    return [("x", i) for i in range(1, n + 1)] + [("d", i) for i in range(1, n)]


def _random_word(rng, n, max_len=6):
    return [rng.choice(_letters(n)) for _ in range(rng.randint(0, max_len))]


def _relation_pairs(n):
    """``(lhs, rhs, c)`` with lhs = rhs + c * 1 in NH_n; rhs None means lhs = 0."""
    pairs = []
    for i in range(1, n):
        pairs.append(([("d", i), ("d", i)], None, 0))
        pairs.append(([("x", i), ("d", i)], [("d", i), ("x", i + 1)], 1))
        pairs.append(([("d", i), ("x", i)], [("x", i + 1), ("d", i)], 1))
    for i in range(1, n - 1):
        pairs.append(([("d", i), ("d", i + 1), ("d", i)], [("d", i + 1), ("d", i), ("d", i + 1)], 0))
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                pairs.append(([("x", j), ("d", i)], [("d", i), ("x", j)], 0))
    return pairs


def _element(n, word):
    return NHElement(n, {NHWord(word): 1})


def _pair(rng, n):
    """A random pair; about half are equal in NH_n by one relation in context."""
    if rng.random() < 0.5:
        return _element(n, _random_word(rng, n)), _element(n, _random_word(rng, n))
    prefix, suffix = _random_word(rng, n, 2), _random_word(rng, n, 2)
    lhs, rhs, c = rng.choice(_relation_pairs(n))
    a = _element(n, prefix + lhs + suffix)
    if rhs is None:
        return a, NHElement.zero(n)
    b = _element(n, prefix + rhs + suffix)
    if c:
        b = b + _element(n, prefix + suffix).scale(c)
    return a, b


def criterion_3(seed=2024):
    rng = random.Random(seed)
    start = time.perf_counter()
    mult = faithful = 0
    equal_pairs = 0
    for _ in range(200):
        n = rng.choice([2, 3, 4])
        a, b = _pair(rng, n)
        ma, mb = to_matrix(a), to_matrix(b)
        if to_matrix(a * b) == ma @ mb:
            mult += 1
        same = equals(a, b)
        equal_pairs += same
        if same == (ma == mb):
            faithful += 1
    cyclic = 0
    for _ in range(100):
        n = rng.choice([2, 3])
        a, b = _element(n, _random_word(rng, n)), _element(n, _random_word(rng, n))
        if trace_class(a * b) == trace_class(b * a):
            cyclic += 1
    elapsed = time.perf_counter() - start
    ok = mult == 200 and faithful == 200 and cyclic == 100 and 0 < equal_pairs < 200 and elapsed < 60
    detail = f"multiplicative {mult}/200, faithful {faithful}/200 ({equal_pairs} equal pairs), cyclic {cyclic}/100, {elapsed:.1f}s"
    return ok, detail


# -- 4. standard basis -------------------------------------------------------------------


def criterion_4():
    details = []
    ok = True
    for n in (2, 3):
        for d in range(0, 6):
            lams = [lam for lam in partitions(d) if len(lam) <= n]
            classes = [standard_basis_class(n, lam) for lam in lams]
            if any(c.value and c.value.value.degree != 2 * d for c in classes):
                ok = False
            # coordinates in the e-basis of Sym_n, degree 2d: e_mu with mu_1 <= n
            target = [mu.conjugate() for mu in lams]
            rows = [[to_basis(c.value.value, "e").get(mu, 0) for mu in target] for c in classes]
            rank = exact_rank(rows, len(target))
            ok = ok and rank == len(lams)
            details.append(f"n={n} d={d}: {rank}/{len(lams)}")
    return ok, "; ".join(details)


# -- 5. infinite Grassmannian ------------------------------------------------------------------


def _clockwise_spade(cd, i, alpha, lam):
    m = alpha + lam[i - 1] - 1
    if m >= 0:
        return from_absolute(cd, i, CW, m, lam)
    return CenterElement.gen(lam, i, alpha)


def criterion_5():
    count = 0
    for n in (2, 3, 4):
        cd = CartanData(n)
        for lam in itertools.product(range(-4, 5), repeat=cd.rank):
            for i in cd.nodes:
                for alpha in range(9):
                    total = CenterElement.zero(lam)
                    for a in range(alpha + 1):
                        total = total + cc_bubble(cd, i, a, lam) * _clockwise_spade(cd, i, alpha - a, lam)
                    if total != (1 if alpha == 0 else 0):
                        return False, f"fails at n={n} lam={lam} i={i} alpha={alpha}"
                    count += 1
    return True, f"{count} instances"


# -- 6. power-sum formulas ----------------------------------------------------------------------


def criterion_6():
    count = 0
    for n in (2, 3):
        cd = CartanData(n)
        for lam in itertools.product(range(-4, 5), repeat=cd.rank):
            for i in cd.nodes:
                for r in range(1, 7):
                    values = [power_sum(cd, i, r, lam, formula=f) for f in (1, 2, 3)]
                    if not values[0] == values[1] == values[2] == power_sum_via_newton(cd, i, r, lam):
                        return False, f"fails at n={n} lam={lam} i={i} r={r}"
                    count += 1
                b1, b2 = CenterElement.gen(lam, i, 1), CenterElement.gen(lam, i, 2)
                if power_sum(cd, i, 1, lam) != b1 or power_sum(cd, i, 2, lam) != b2.scale(2) - b1 * b1:
                    return False, f"p1/p2 values wrong at lam={lam}"
    return True, f"{count} instances agree with each other and with Newton"


# -- 7. slides ---------------------------------------------------------------------------------


def criterion_7():
    start = time.perf_counter()
    other = {"left": "right", "right": "left"}
    trips = 0
    for n in (2, 3, 4):
        cd = CartanData(n)
        for lam in itertools.product(range(-2, 3), repeat=cd.rank):
            for i, j in itertools.product(cd.nodes, repeat=2):
                for orientation, alpha, strand, side in itertools.product((CW, CCW), range(5), ("up", "down"), ("left", "right")):
                    start_elem = CenterElement.gen(lam, i, alpha) if orientation == CW else cc_bubble(cd, i, alpha, lam)
                    back = {}
                    for t in slide_bubble_past_strand(cd, (i, alpha, orientation), (j, strand), side, lam):
                        for u in slide_center_past_strand(t.coefficient, cd, (j, strand), other[side]):
                            d = t.dots + u.dots
                            back[d] = back.get(d, CenterElement.zero(lam)) + u.coefficient
                    back = {d: c for d, c in back.items() if c}
                    if back != {0: start_elem}:
                        return False, f"round trip fails: n={n} lam={lam} {(i, alpha, orientation)} past {(j, strand)} from {side}"
                    trips += 1
    checks = 0
    cd = CartanData(4)
    for i, j in itertools.product(cd.nodes, repeat=2):
        for r in range(6):
            for lam_i in range(-3, 4):
                lam = tuple(lam_i if k == i else 0 for k in cd.nodes)
                if not power_slide_check(cd, i, j, r, lam):
                    return False, f"power slide fails: i={i} j={j} r={r} lam={lam}"
                checks += 1
    elapsed = time.perf_counter() - start
    return elapsed < 60, f"{trips} round trips, {checks} power-slide checks in {elapsed:.1f}s"


# -- 8. current algebra ---------------------------------------------------------------------------


def criterion_8(seed=7):
    start = time.perf_counter()
    parts = []
    ok = True
    for n in (2, 3):
        rep = verify_current_relations(CartanData(n), weight_range=(-3, 3), max_degree=3, trials=5, seed=seed)
        summary = rep.summary()
        families = {"C1", "C2", "C3", "C4", "C5"} | ({"C6"} if n > 2 else set())
        ok = ok and rep.passed and set(summary) == families
        parts.append(f"n={n}: {len(rep.checks)} checks, {len(rep.failures())} failures")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 300
    return ok, "; ".join(parts) + f"; {elapsed:.0f}s"


# -- 9. sl_2 commutators -----------------------------------------------------------------------------


def criterion_9():
    pairs = [(r, s) for r in range(5) for s in range(5) if r + s <= 4]
    ok = all(sl2_commutator_check(r, s, weight_range=(-3, 3), trials=5, seed=r * 10 + s) for r, s in pairs)
    return ok, f"{len(pairs)} (r, s) pairs"


# -- 10. Grassmannian ---------------------------------------------------------------------------------


def criterion_10():
    dims = all(graded_dimension(k, n) == gaussian_binomial(n, k) for n in range(7) for k in range(n + 1))
    rels = all(ideal_relation_check(k, n, n) for k, n in ((1, 2), (1, 3), (2, 4)))
    ranks = (chern_character_report(1, 2)["cokernel_rank"], chern_character_report(2, 4)["cokernel_rank"])
    return dims and rels and ranks == (1, 5), f"dimensions {dims}, relations {rels}, cokernel ranks {ranks}"


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    passed, detail = CRITERIA[k]()
    report(k, passed, detail)
    assert passed, detail


def main():
    failed = 0
    for k in sorted(CRITERIA):
        passed, detail = CRITERIA[k]()
        report(k, passed, detail)
        failed += not passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    sys.exit(main())
