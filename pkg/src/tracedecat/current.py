"""The current algebra U(sl_n[t]) acting on Z = sum over lambda of Z(lambda).

xi_{i,r} multiplies by the twisted power sum, and x^+_{i,r}, x^-_{i,s}
encircle a center element by a dotted loop of color i: the element is slid
out of the loop, which leaves a dotted bubble in the new region.  Which
orientation that bubble has, and which of its two regions names its
weight, is fixed by :func:`calibrate_closure` rather than assumed.
"""

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from ._exact import add_into, coeff
from ._flintcenter import BoundExceeded, FlintCenterRing
from ._report import Report
from .bubbles import (
    CCW,
    CW,
    ONE,
    CartanData,
    CenterElement,
    _power_poly,
    c_poly,
    cc_poly,
    padd,
    padd_into,
    pmul,
    pscale,
    slide_poly,
    spade_offset,
)

KINDS = ("xplus", "xminus", "xi", "idem")


class GateError(ValueError):
    """The scalars t_ij do not satisfy the condition the action needs."""


# -- vectors --------------------------------------------------------------------


class CenterVector:
    """A finitely supported family of center elements indexed by weight."""

    __slots__ = ("_parts",)

    def __init__(self, components=None):
        parts = {}
        for weight, elem in (components or {}).items():
            weight = tuple(weight)
            if isinstance(elem, CenterElement):
                if elem.weight != weight:
                    raise ValueError(f"component at {list(weight)} is labelled {list(elem.weight)}")
                poly = elem.poly
            else:
                poly = dict(elem)
            if poly:
                parts[weight] = poly
        self._parts = parts

    @classmethod
    def _raw(cls, parts):
        obj = cls.__new__(cls)
        obj._parts = {w: p for w, p in parts.items() if p}
        return obj

    @classmethod
    def unit(cls, weight):
        return cls._raw({tuple(weight): dict(ONE)})

    @classmethod
    def of(cls, *elements):
        out = {}
        for e in elements:
            out[e.weight] = padd(out.get(e.weight, {}), e.poly)
        return cls._raw(out)

    @property
    def support(self):
        return sorted(self._parts)

    def component(self, weight):
        weight = tuple(weight)
        return CenterElement._raw(weight, dict(self._parts.get(weight, {})))

    def components(self):
        return {w: CenterElement._raw(w, dict(p)) for w, p in sorted(self._parts.items())}

    def __bool__(self):
        return bool(self._parts)

    def __eq__(self, other):
        if not isinstance(other, CenterVector):
            return NotImplemented
        return self._parts == other._parts

    def __add__(self, other):
        out = {w: dict(p) for w, p in self._parts.items()}
        for w, p in other._parts.items():
            padd_into(out.setdefault(w, {}), p)
        return CenterVector._raw(out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = coeff(c)
        return CenterVector._raw({w: pscale(p, c) for w, p in self._parts.items()})

    __rmul__ = scale

    def to_json(self):
        return {"components": [e.to_json() for e in self.components().values()]}

    @classmethod
    def from_json(cls, obj):
        return cls.of(*(CenterElement.from_json(c) for c in obj["components"]))

    def __repr__(self):
        inner = ", ".join(f"{list(w)}: {e}" for w, e in self.components().items())
        return f"CenterVector({{{inner}}})"


@dataclass(frozen=True)
class CurrentGen:
    kind: str
    node: int = 0
    degree: int = 0
    weight: tuple = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.kind == "idem":
            if self.weight is None:
                raise ValueError("idem needs a weight")
        elif self.weight is not None:
            raise ValueError(f"{self.kind} does not carry a weight")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")

    def __str__(self):
        if self.kind == "idem":
            return f"1_{list(self.weight)}"
        sym = {"xplus": "x+", "xminus": "x-", "xi": "xi"}[self.kind]
        return f"{sym}_{{{self.node},{self.degree}}}"


# -- closure conventions and the encircling operators ---------------------------------

# (orientation of the x^+ loop bubble, region whose weight labels it)
CANDIDATES = tuple(itertools.product((CW, CCW), ("outer", "inner")))


def _twist(i, r):
    return -1 if (i + 1) * r % 2 else 1


def _node_index(cd, i):
    cd._check_node(i)
    return i - 1


def _encircle(cd, i, r, poly, lam, raising, convention):
    """Untwisted E_{i,r} (raising) or F_{i,r} (lowering) on a polynomial at lam."""
    orient_plus, reading = convention
    sign = 1 if raising else -1
    outer = cd.shift(lam, i, sign)
    orientation = orient_plus if raising else (CCW if orient_plus == CW else CW)
    label = outer if reading == "outer" else lam
    offset = spade_offset(cd, i, orientation, 0, label) + r
    out = {}
    for mono, c in poly.items():
        padd_into(out, _encircle_monomial(cd.n, i, mono, raising, orientation, offset), c)
    return outer, out


@lru_cache(maxsize=None)
def _cartan(n):
    return CartanData(n)


@lru_cache(maxsize=1_000_000)
def _encircle_monomial(n, i, mono, raising, orientation, offset):
    """Slide one monomial out of the loop and close the loop with ``offset + dots``.

    Only the spade offset of the closing bubble depends on the weight, so
    the result is shared by all weights and degrees with the same offset.
    Valid under the scalar gate, where every slide coefficient v_ij is 1.
    """
    closure = c_poly if orientation == CW else cc_poly
    out = {}
    for d, p in slide_poly(_cartan(n), {mono: 1}, i, raising).items():
        bubble = closure(i, offset + d)
        if bubble:
            pmul(p, bubble, out)
    return out


def _check_gate(cd):
    if not cd.gate_ok():
        raise GateError("the current action needs t_ij^2 = t_ji^2 = t_ij^-1 t_ji = 1 for i != j")


def _apply_vector(cd, v, fn):
    out = {}
    for lam, poly in v._parts.items():
        dest, p = fn(lam, poly)
        if p:
            padd_into(out.setdefault(dest, {}), p)
    return CenterVector._raw(out)


def _xplus_raw(cd, i, r, v, convention):
    t = _twist(i, r)
    return _apply_vector(
        cd, v, lambda lam, p: _scaled(_encircle(cd, i, r, p, lam, True, convention), t)
    )


def _xminus_raw(cd, i, s, v, convention):
    t = _twist(i, s)
    return _apply_vector(
        cd, v, lambda lam, p: _scaled(_encircle(cd, i, s, p, lam, False, convention), t)
    )


def _scaled(pair, c):
    dest, p = pair
    return dest, pscale(p, c)


def _xi_poly(cd, i, r, lam):
    if r == 0:
        return pscale(ONE, lam[_node_index(cd, i)])
    return pscale(_power_poly(i, r, 1), _twist(i, r))


def act_xi(cd, i, r, v):
    _check_gate(cd)
    return _apply_vector(cd, v, lambda lam, p: (lam, pmul(p, _xi_poly(cd, i, r, lam))))


@lru_cache(maxsize=None)
def calibrate_closure(max_weight=4):
    """The unique convention giving [x+_{1,0}, x-_{1,0}] = lambda on units of sl_2."""
    cd = CartanData(2)
    good = []
    for convention in CANDIDATES:
        ok = True
        for lam in range(-max_weight, max_weight + 1):
            u = CenterVector.unit((lam,))
            lhs = _xplus_raw(cd, 1, 0, _xminus_raw(cd, 1, 0, u, convention), convention) - _xminus_raw(
                cd, 1, 0, _xplus_raw(cd, 1, 0, u, convention), convention
            )
            if lhs != u.scale(lam):
                ok = False
                break
        if ok:
            good.append(convention)
    if len(good) != 1:
        raise RuntimeError(f"closure calibration is not unique: {good}")
    return good[0]


def act_xplus(cd, i, r, v):
    _check_gate(cd)
    cd._check_node(i)
    return _xplus_raw(cd, i, r, v, calibrate_closure())


def act_xminus(cd, i, s, v):
    _check_gate(cd)
    cd._check_node(i)
    return _xminus_raw(cd, i, s, v, calibrate_closure())


def act(cd, g, v):
    """Apply a single generator to a CenterVector."""
    if g.kind == "idem":
        _check_gate(cd)
        w = cd.check_weight(g.weight)
        return CenterVector._raw({w: v._parts[w]} if w in v._parts else {})
    if g.kind == "xi":
        return act_xi(cd, g.node, g.degree, v)
    if g.kind == "xplus":
        return act_xplus(cd, g.node, g.degree, v)
    return act_xminus(cd, g.node, g.degree, v)


def act_word(cd, gens, v):
    """Apply ``gens[0] gens[1] ... gens[-1]`` (the last one acts first)."""
    for g in reversed(gens):
        v = act(cd, g, v)
    return v


# -- random test vectors ------------------------------------------------------------


def random_center_poly(rng, nodes, max_gens=4, max_alpha=3, max_terms=3):
    poly = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(
            sorted((rng.choice(nodes), rng.randint(1, max_alpha)) for _ in range(rng.randint(0, max_gens)))
        )
        add_into(poly, mono, rng.choice([c for c in range(-3, 4) if c]))
    return poly or dict(ONE)


def weight_box(cd, low, high):
    return list(itertools.product(range(low, high + 1), repeat=cd.rank))


def random_vector(cd, rng, weights):
    return CenterVector._raw({tuple(w): random_center_poly(rng, cd.nodes) for w in weights})


# -- relation harness ------------------------------------------------------------------


def _fmt_weight(w):
    return "[" + ",".join(str(x) for x in w) + "]"


class _WordEvaluator:
    """Evaluates words in the generators on fixed test vectors, sharing suffixes.

    A letter is ``("x", sign, i, r)`` or ``("xi", i, r)``; a word is a tuple
    of letters whose last entry acts first.  Work happens in the flint
    engine, whose agreement with the reference operators is tested.
    """

    def __init__(self, cd, vectors, bound=24, cache_size=20_000):
        _check_gate(cd)
        self.cd = cd
        self.conv = calibrate_closure()
        self.ring = FlintCenterRing(cd, bound)
        self.vectors = [{w: self.ring.from_poly(p) for w, p in v._parts.items()} for v in vectors]
        self.eval = lru_cache(maxsize=cache_size)(self._eval)
        self.slid = lru_cache(maxsize=cache_size)(self._slid)

    def release(self):
        self.eval.cache_clear()
        self.slid.cache_clear()

    def _slid(self, sign, i, suffix, trial):
        """Slide heads of every component of ``suffix(v)``; shared by all degrees r."""
        return {lam: self.ring.slide_heads(i, f, sign > 0) for lam, f in self.eval(suffix, trial).items()}

    def _eval(self, word, trial):
        if not word:
            return self.vectors[trial]
        ring = self.ring
        letter, suffix = word[0], word[1:]
        out = {}
        if letter[0] == "xi":
            _, i, r = letter
            for lam, f in self.eval(suffix, trial).items():
                factor = lam[i - 1] if r == 0 else _twist(i, r) * ring.power_sum(i, r)
                g = f * factor
                if not g.is_zero():
                    out[lam] = g
            return out
        _, sign, i, r = letter
        t = _twist(i, r)
        for lam, heads in self.slid(sign, i, suffix, trial).items():
            dest, g = ring.close(i, r, heads, lam, sign > 0, self.conv)
            if not g.is_zero():
                out[dest] = out[dest] + t * g if dest in out else t * g
        return out

    def combination(self, terms, trial):
        """Weights where sum of c * word(v) over ``terms = [(c, word), ...]`` is nonzero."""
        out = {}
        for c, word in terms:
            for w, f in self.eval(word, trial).items():
                out[w] = out[w] + c * f if w in out else c * f
        return {w for w, f in out.items() if not f.is_zero()}


def _with_growing_bound(run):
    """Retry ``run(bound)`` with a larger generator bound when it is exceeded."""
    bound = 24
    while True:
        try:
            return run(bound)
        except BoundExceeded:
            bound *= 2


def _commutator(a, b):
    """[A, B] as word terms, for A and B given as word-term lists."""
    out = []
    for ca, wa in a:
        for cb, wb in b:
            out.append((ca * cb, wa + wb))
            out.append((-ca * cb, wb + wa))
    return out


def _letter_terms(letter, c=1):
    return [(c, (letter,))]


def _relations(cd, max_degree):
    """Yield (axiom, label, terms that must vanish, weight shift)."""
    nodes = cd.nodes
    degs = range(max_degree + 1)
    rank = cd.rank

    def alpha(j, sign=1):
        return tuple(sign * cd.cartan(i, j) for i in nodes)

    def add(*shifts):
        return tuple(sum(x) for x in zip(*shifts)) if shifts else (0,) * rank

    def xi(i, r):
        return ("xi", i, r)

    def x(sign, i, r):
        return ("x", sign, i, r)

    for i, j in itertools.product(nodes, nodes):
        for r, s in itertools.product(degs, degs):
            terms = _commutator(_letter_terms(xi(i, r)), _letter_terms(xi(j, s)))
            yield "C1", f"i={i} j={j} r={r} s={s}", terms, add()
    for sign in (1, -1):
        pm = "+" if sign > 0 else "-"
        for i, j in itertools.product(nodes, nodes):
            a = cd.cartan(i, j)
            for k in degs:
                terms = _commutator(_letter_terms(xi(i, 0)), _letter_terms(x(sign, j, k)))
                terms += _letter_terms(x(sign, j, k), -sign * a)
                yield "C2", f"i={i} j={j} k={k} sign={pm}", terms, alpha(j, sign)
            for r, k in itertools.product(range(1, max_degree + 1), degs):
                terms = _commutator(_letter_terms(xi(i, r)), _letter_terms(x(sign, j, k)))
                terms += _letter_terms(x(sign, j, r + k), -sign * a)
                yield "C3", f"i={i} j={j} r={r} k={k} sign={pm}", terms, alpha(j, sign)
            for k, l in itertools.product(range(max_degree), range(max_degree)):
                terms = _commutator(_letter_terms(x(sign, i, k + 1)), _letter_terms(x(sign, j, l)))
                terms += [(-c, w) for c, w in _commutator(_letter_terms(x(sign, i, k)), _letter_terms(x(sign, j, l + 1)))]
                yield "C4", f"i={i} j={j} k={k} l={l} sign={pm}", terms, add(alpha(i, sign), alpha(j, sign))
    for i, j in itertools.product(nodes, nodes):
        for k, l in itertools.product(degs, degs):
            terms = _commutator(_letter_terms(x(1, i, k)), _letter_terms(x(-1, j, l)))
            if i == j:
                terms += _letter_terms(xi(i, k + l), -1)
            yield "C5", f"i={i} j={j} k={k} l={l}", terms, add(alpha(i), alpha(j, -1))
    for sign in (1, -1):
        pm = "+" if sign > 0 else "-"
        for i, j in itertools.product(nodes, nodes):
            if i == j:
                continue
            if cd.cartan(i, j) == 0:
                for k, l in itertools.product(degs, degs):
                    terms = _commutator(_letter_terms(x(sign, i, k)), _letter_terms(x(sign, j, l)))
                    yield "C6", f"i={i} j={j} k={k} l={l} sign={pm}", terms, add(alpha(i, sign), alpha(j, sign))
                continue
            for k1, k2, l in itertools.product(degs, degs, degs):
                terms = []
                for order in itertools.permutations((k1, k2)):
                    for s in range(3):
                        word = [x(sign, i, order[0]), x(sign, i, order[1])]
                        word.insert(s, x(sign, j, l))
                        terms.append(((-1) ** s * comb(2, s), tuple(word)))
                shift = add(alpha(i, sign), alpha(i, sign), alpha(j, sign))
                yield "C6", f"i={i} j={j} k1={k1} k2={k2} l={l} sign={pm}", terms, shift


def verify_current_relations(cd, weight_range=(-3, 3), max_degree=3, trials=5, seed=0):
    """Check C1-C6 on seeded random vectors supported on the weight box.

    Every word in a relation shifts weights by the same amount, so one
    vector with a random component at each weight tests all weights at once;
    the outcome is reported per source weight.
    """
    _check_gate(cd)
    low, high = weight_range
    weights = weight_box(cd, low, high)
    rng = random.Random(seed)
    vectors = [random_vector(cd, rng, weights) for _ in range(trials)]
    return _with_growing_bound(
        lambda bound: _run_relations(cd, vectors, weights, max_degree, seed, weight_range, bound)
    )


def _run_relations(cd, vectors, weights, max_degree, seed, weight_range, bound):
    low, high = weight_range
    report = Report(
        f"current-algebra relations for sl_{cd.n}",
        prefix="AXIOM",
        meta={"n": cd.n, "weights": f"{low}..{high}", "max_degree": max_degree, "trials": len(vectors), "seed": seed},
    )
    relations = list(_relations(cd, max_degree))
    failures = [set() for _ in relations]
    # One trial at a time keeps the word cache to a single vector's worth.
    for vector in vectors:
        evaluator = _WordEvaluator(cd, [vector], bound)
        for bad, (_, _, terms, shift) in zip(failures, relations):
            for w in evaluator.combination(terms, 0):
                bad.add(tuple(a - b for a, b in zip(w, shift)))
        evaluator.release()
    for bad, (axiom, label, _, _) in zip(failures, relations):
        for w in weights:
            report.add(axiom, f"{label} λ={_fmt_weight(w)}", w not in bad)
    return report


def sl2_commutator_check(r, s, weight_range=(-3, 3), trials=5, seed=0):
    """[x+_r, x-_s] = xi_{r+s} on units and random elements of Z(lambda), sl_2."""
    cd = CartanData(2)
    rng = random.Random(seed)
    low, high = weight_range
    weights = weight_box(cd, low, high)
    vectors = [CenterVector._raw({w: dict(ONE) for w in weights})]
    vectors += [random_vector(cd, rng, weights) for _ in range(trials)]
    terms = _commutator([(1, (("x", 1, 1, r),))], [(1, (("x", -1, 1, s),))])
    terms.append((-1, (("xi", 1, r + s),)))

    def run(bound):
        evaluator = _WordEvaluator(cd, vectors, bound)
        return all(not evaluator.combination(terms, t) for t in range(len(vectors)))

    return _with_growing_bound(run)
