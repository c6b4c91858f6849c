"""The center Z(lambda) as a polynomial ring in spade-normalized bubbles.

For every node i the clockwise bubbles c_{i,alpha} = b_{i,alpha}
(alpha >= 1) are free commuting generators, c_{i,0} = 1 and c_{i,alpha} = 0
for alpha < 0.  Counterclockwise bubbles are derived from the clockwise ones
by the infinite Grassmannian relation, and all slide rules act on the
generators independently of the ambient weight.  A CenterElement therefore
stores a weight label and a polynomial in the b_{i,alpha}.

Polynomials are dicts from a sorted tuple of ``(node, alpha)`` pairs (a
multiset of generators) to a rational coefficient.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._exact import add_into, coeff, format_coeff, parse_coeff
from .symfunc import Partition, SymFn, sym_from_basis
from .symfunc.text import ParseError

CW = "cw"
CCW = "ccw"
ORIENTATIONS = (CW, CCW)
UP = "up"
DOWN = "down"

ONE = {(): 1}


# -- raw polynomial arithmetic ------------------------------------------------


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def padd(*polys):
    out = {}
    for p in polys:
        padd_into(out, p)
    return out


def padd_into(acc, p, c=1):
    """acc += c * p, in place."""
    for k, v in p.items():
        add_into(acc, k, v * c)


def pscale(p, c):
    if not c:
        return {}
    return {k: v * c for k, v in p.items()}


def pmul(p, q, out=None):
    """p * q, optionally accumulated into ``out``."""
    out = {} if out is None else out
    for a, ca in p.items():
        for b, cb in q.items():
            add_into(out, _mono_mul(a, b), ca * cb)
    return out


def c_poly(i, alpha):
    """Clockwise spade bubble c_{i,alpha} as a raw polynomial."""
    if alpha < 0:
        return {}
    if alpha == 0:
        return ONE
    return {((i, alpha),): 1}


@lru_cache(maxsize=None)
def _cc_cached(i, alpha):
    if alpha < 0:
        return {}
    if alpha == 0:
        return ONE
    out = {}
    for b in range(1, alpha + 1):
        out = padd(out, pscale(pmul(c_poly(i, b), _cc_cached(i, alpha - b)), -1))
    return out


def cc_poly(i, alpha):
    """Counterclockwise spade bubble: sum_{a+b=alpha} c_a cc_b = delta_{alpha,0}."""
    return dict(_cc_cached(i, alpha))


def pdegree(mono):
    return sum(2 * a for _, a in mono)


# -- Cartan data and weights ----------------------------------------------------


class CartanData:
    """Cartan datum of sl_n with nodes I = {1, ..., n-1} and scalars t_ij."""

    def __init__(self, n, t=None):
        if n < 2:
            raise ValueError("sl_n needs n >= 2")
        self.n = n
        self.nodes = tuple(range(1, n))
        self._t = {}
        for (i, j), value in (t or {}).items():
            self._check_node(i)
            self._check_node(j)
            value = coeff(value)
            if value == 0:
                raise ValueError(f"t_{i}{j} must be invertible")
            if i == j and value != 1:
                raise ValueError("t_ii must be 1")
            self._t[(i, j)] = value

    @property
    def rank(self):
        return self.n - 1

    def _check_node(self, i):
        if i not in range(1, self.n):
            raise ValueError(f"node {i} is not in I = {{1..{self.n - 1}}}")

    def cartan(self, i, j):
        self._check_node(i)
        self._check_node(j)
        if i == j:
            return 2
        return -1 if abs(i - j) == 1 else 0

    def t(self, i, j):
        return self._t.get((i, j), 1)

    def v(self, i, j):
        """v_ij = t_ij^{-1} t_ji."""
        return coeff(Fraction(self.t(j, i)) / self.t(i, j))

    def check_weight(self, lam):
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise ValueError(f"weight {list(lam)} must have {self.rank} entries")
        return lam

    def shift(self, lam, j, sign=1):
        """lam + sign * alpha_j, i.e. lam_i moves by sign * a_ij."""
        lam = self.check_weight(lam)
        return tuple(x + sign * self.cartan(i, j) for i, x in zip(self.nodes, lam))

    def gate_ok(self):
        """Scalar condition needed by the current-algebra action."""
        for i in self.nodes:
            for j in self.nodes:
                if i != j:
                    tij, tji = self.t(i, j), self.t(j, i)
                    if tij * tij != 1 or tji * tji != 1 or self.v(i, j) != 1:
                        return False
        return True

    def __repr__(self):
        return f"CartanData(n={self.n}, t={self._t})"


# -- center elements ------------------------------------------------------------


class CenterElement:
    """An element of Z(lambda): a weight label and a polynomial in b_{i,alpha}."""

    __slots__ = ("weight", "_poly")

    def __init__(self, weight, poly=None):
        self.weight = tuple(int(x) for x in weight)
        clean = {}
        for mono, c in (poly or {}).items():
            mono = tuple(sorted((int(i), int(a)) for i, a in mono))
            if any(a < 1 for _, a in mono):
                raise ValueError("generators b_{i,alpha} need alpha >= 1")
            add_into(clean, mono, coeff(c))
        self._poly = clean

    @classmethod
    def _raw(cls, weight, poly):
        obj = cls.__new__(cls)
        obj.weight = weight
        obj._poly = poly
        return obj

    @classmethod
    def one(cls, weight):
        return cls._raw(tuple(weight), dict(ONE))

    @classmethod
    def zero(cls, weight):
        return cls._raw(tuple(weight), {})

    @classmethod
    def gen(cls, weight, i, alpha):
        return cls._raw(tuple(weight), dict(c_poly(i, alpha)))

    @property
    def poly(self):
        return dict(self._poly)

    def __bool__(self):
        return bool(self._poly)

    def _same(self, other):
        if isinstance(other, CenterElement):
            if other.weight != self.weight:
                raise ValueError(f"weights {list(self.weight)} and {list(other.weight)} differ")
            return other._poly
        return pscale(ONE, coeff(other))

    def __add__(self, other):
        return CenterElement._raw(self.weight, padd(self._poly, self._same(other)))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return CenterElement._raw(self.weight, padd(self._poly, pscale(self._same(other), -1)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CenterElement):
            return self.scale(other)
        return CenterElement._raw(self.weight, pmul(self._poly, self._same(other)))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = CenterElement.one(self.weight)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        return CenterElement._raw(self.weight, pscale(self._poly, coeff(c)))

    def at(self, weight):
        """The same polynomial read at another weight."""
        return CenterElement._raw(tuple(weight), self._poly)

    def __eq__(self, other):
        if isinstance(other, CenterElement):
            return self.weight == other.weight and self._poly == other._poly
        if isinstance(other, (int, Fraction)):
            return self._poly == pscale(ONE, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.weight, frozenset(self._poly.items())))

    def degrees(self):
        return sorted({pdegree(m) for m in self._poly})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs[0] if degs else 0

    def to_json(self):
        return {
            "weight": list(self.weight),
            "terms": [
                {"gens": [{"node": i, "alpha": a} for i, a in mono], "coeff": format_coeff(c)}
                for mono, c in sorted(self._poly.items(), key=_mono_key)
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            poly = {}
            for t in obj["terms"]:
                mono = tuple((int(g["node"]), int(g["alpha"])) for g in t["gens"])
                poly[mono] = poly.get(mono, 0) + coeff(str(t["coeff"]))
            return cls(obj["weight"], poly)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed center-element JSON: {exc}") from None

    @classmethod
    def parse(cls, weight, text):
        """Parse ``"3 b[1,2] b[1,1] - b[2,1] + 1/2"`` at the given weight."""
        return cls(weight, parse_bubble_poly(text))

    def __str__(self):
        return format_bubble_poly(self._poly)

    def __repr__(self):
        return f"CenterElement({list(self.weight)}, {self})"


def _mono_key(item):
    mono = item[0]
    return (pdegree(mono), len(mono), mono)


def format_bubble_poly(poly):
    if not poly:
        return "0"
    chunks = []
    for k, (mono, c) in enumerate(sorted(poly.items(), key=_mono_key)):
        neg = c < 0
        mag = -c if neg else c
        gens = " ".join(f"b[{i},{a}]" for i, a in mono)
        if not gens:
            body = format_coeff(mag)
        else:
            body = gens if mag == 1 else f"{format_coeff(mag)} {gens}"
        if k == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"{'-' if neg else '+'} {body}")
    return " ".join(chunks)


_BTOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|b\s*\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\^(\d+))?|([+\-*]))")


def parse_bubble_poly(text):
    poly = {}
    sign, c, mono = 1, None, None
    dangling = True
    text = text.strip()
    pos = 0
    while pos < len(text):
        m = _BTOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, node, alpha, power, op = m.groups()
        if op == "*":
            if dangling:
                raise ParseError("'*' without a left operand")
            continue
        if op:
            if c is not None or mono is not None:
                add_into(poly, tuple(sorted(mono or ())), sign * (1 if c is None else c))
                sign, c, mono = 1, None, None
            if op == "-":
                sign = -sign
            dangling = True
        elif num:
            value = parse_coeff(num)
            c = value if c is None else c * value
            dangling = False
        else:
            if int(alpha) < 1:
                raise ParseError("bubble generators need alpha >= 1")
            mono = (mono or []) + [(int(node), int(alpha))] * int(power or 1)
            dangling = False
    if dangling:
        raise ParseError("empty or incomplete expression")
    add_into(poly, tuple(sorted(mono or ())), sign * (1 if c is None else c))
    return poly


# -- bubbles at a weight ----------------------------------------------------------


def cc_bubble(cd, i, alpha, lam):
    cd._check_node(i)
    lam = cd.check_weight(lam)
    return CenterElement._raw(lam, cc_poly(i, alpha))


def spade_offset(cd, i, orientation, m, lam):
    """Offset alpha of an absolute-dot bubble from its degree-zero dot count."""
    lam = cd.check_weight(lam)
    lam_i = lam[cd.nodes.index(i)]
    if orientation == CW:
        return m - (lam_i - 1)
    if orientation == CCW:
        return m - (-lam_i - 1)
    raise ValueError(f"orientation must be one of {ORIENTATIONS}")


def from_absolute(cd, i, orientation, m, lam):
    """Bubble with m dots (possibly a fake bubble) in spade form."""
    cd._check_node(i)
    if m < 0:
        raise ValueError("dot count must be nonnegative")
    alpha = spade_offset(cd, i, orientation, m, lam)
    lam = cd.check_weight(lam)
    poly = c_poly(i, alpha) if orientation == CW else cc_poly(i, alpha)
    return CenterElement._raw(lam, dict(poly))


# -- power sums -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _power_poly(i, r, formula):
    terms = []
    for a in range(r + 1):
        b = r - a
        if formula == 1:
            terms.append(pscale(pmul(c_poly(i, a), cc_poly(i, b)), a + 1))
        elif formula == 2:
            terms.append(pscale(pmul(c_poly(i, a), cc_poly(i, b)), -(b + 1)))
        elif formula == 3:
            terms.append(pscale(pmul(c_poly(i, b), cc_poly(i, a)), -a))
        else:
            raise ValueError("formula must be 1, 2 or 3")
    return padd(*terms)


def power_sum(cd, i, r, lam, formula=1):
    """p_{i,r}(lam); p_{i,0}(lam) = lam_i.  ``formula`` picks one of three sums."""
    cd._check_node(i)
    lam = cd.check_weight(lam)
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return CenterElement.one(lam).scale(lam[cd.nodes.index(i)])
    return CenterElement._raw(lam, dict(_power_poly(i, r, formula)))


# -- the map psi_lambda --------------------------------------------------------------


def psi(cd, i, f, lam):
    """Image of a symmetric function under h_r -> b_{i,r} at node i."""
    cd._check_node(i)
    lam = cd.check_weight(lam)
    poly = {}
    for part, c in f.terms.items():
        add_into(poly, tuple(sorted((i, r) for r in part)), c)
    return CenterElement._raw(lam, poly)


def psi_inverse(e, i):
    """Symmetric function of an element involving only node i."""
    terms = {}
    for mono, c in e._poly.items():
        if any(node != i for node, _ in mono):
            raise ValueError(f"element involves nodes other than {i}")
        terms[Partition.from_multiset(a for _, a in mono)] = c
    return SymFn(terms)


def power_sum_via_newton(cd, i, r, lam):
    """psi_lam(p_r) through the power-sum expansion in symfunc."""
    if r == 0:
        return power_sum(cd, i, 0, lam)
    return psi(cd, i, sym_from_basis("p", {Partition((r,)): 1}), lam)


# -- slides -------------------------------------------------------------------------


@dataclass(frozen=True)
class DottedStrandTerm:
    """A center element next to a strand carrying extra dots."""

    strand: tuple
    dots: int
    coefficient: CenterElement

    def to_json(self):
        j, orientation = self.strand
        return {
            "strand": {"node": j, "orientation": orientation},
            "dots": self.dots,
            "coefficient": self.coefficient.to_json(),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            strand = (int(obj["strand"]["node"]), obj["strand"]["orientation"])
            return cls(strand, int(obj["dots"]), CenterElement.from_json(obj["coefficient"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed strand-term JSON: {exc}") from None


def _raises(orientation, side):
    """Whether crossing the strand from ``side`` moves the weight up by alpha_j.

    An up strand E_j has weight mu on its right and mu + alpha_j on its left;
    a down strand is the 180 degree rotation.
    """
    if orientation not in (UP, DOWN):
        raise ValueError("strand orientation must be 'up' or 'down'")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return (orientation == UP) == (side == "right")


def destination_weight(cd, strand, side, lam):
    j, orientation = strand
    return cd.shift(lam, j, 1 if _raises(orientation, side) else -1)


@lru_cache(maxsize=None)
def _generator_slide(i, alpha, orientation, aij, v, raising):
    """``{dots: poly}`` for one spade bubble crossing a strand of color j."""
    c = c_poly if orientation == CW else cc_poly
    if aij == 0:
        return {0: dict(c(i, alpha))}
    # Raising multiplies the cw generating series C(t) by (1 - xt)^2 when
    # i = j and by 1/(1 + vxt) when i.j = -1; lowering uses the inverse
    # factors.  The ccw series is 1/C(t), so for it the factors invert.
    polynomial_factor = ((orientation == CW) == raising) == (aij == 2)
    out = {}
    if aij == 2 and polynomial_factor:
        for f, k in ((0, 1), (1, -2), (2, 1)):
            _put(out, f, pscale(c(i, alpha - f), k))
    elif aij == 2:
        for f in range(alpha + 1):
            _put(out, alpha - f, pscale(c(i, f), alpha + 1 - f))
    elif polynomial_factor:
        # factor 1 + v x t
        _put(out, 0, c(i, alpha))
        _put(out, 1, pscale(c(i, alpha - 1), v))
    else:
        # factor 1 / (1 + v x t)
        for f in range(alpha + 1):
            _put(out, f, pscale(c(i, alpha - f), (-v) ** f))
    return out


def _put(acc, dots, poly):
    if not poly:
        return
    merged = padd(acc.get(dots, {}), poly)
    if merged:
        acc[dots] = merged
    else:
        acc.pop(dots, None)


def _check_bubble(cd, gen):
    i, alpha, orientation = gen
    cd._check_node(i)
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    return i, alpha, orientation


def slide_bubble_past_strand(cd, gen, strand, side, lam):
    """Slide one spade bubble ``gen = (i, alpha, orientation)`` across a strand.

    ``strand = (j, "up" | "down")`` and ``side`` is where the bubble starts;
    ``lam`` is the weight of that region.  Returns DottedStrandTerms whose
    coefficients live at the weight on the other side.
    """
    i, alpha, orientation = _check_bubble(cd, gen)
    j, strand_orientation = strand
    cd._check_node(j)
    lam = cd.check_weight(lam)
    raising = _raises(strand_orientation, side)
    dest = cd.shift(lam, j, 1 if raising else -1)
    table = _generator_slide(i, alpha, orientation, cd.cartan(i, j), cd.v(i, j), raising)
    return [
        DottedStrandTerm((j, strand_orientation), d, CenterElement._raw(dest, dict(p)))
        for d, p in sorted(table.items())
    ]


@lru_cache(maxsize=None)
def _monomial_slide(mono, j, couplings, raising):
    """Slide a product of generators; ``couplings`` maps node -> (a_ij, v_ij)."""
    lookup = dict(couplings)
    out = {0: ONE}
    for i, alpha in mono:
        aij, v = lookup[i]
        table = _generator_slide(i, alpha, CW, aij, v, raising)
        new = {}
        for d1, p1 in out.items():
            for d2, p2 in table.items():
                _put(new, d1 + d2, pmul(p1, p2))
        out = new
    return out


def slide_poly(cd, poly, j, raising):
    """``{dots: poly}`` for a raw polynomial crossing a strand of color j."""
    couplings = tuple((i, (cd.cartan(i, j), cd.v(i, j))) for i in cd.nodes)
    out = {}
    for mono, c in poly.items():
        for d, p in _monomial_slide(mono, j, couplings, raising).items():
            padd_into(out.setdefault(d, {}), p, c)
    return {d: p for d, p in out.items() if p}


def slide_center_past_strand(e, cd, strand, side):
    """Slide a whole center element across a strand, accumulating dots."""
    j, orientation = strand
    cd._check_node(j)
    lam = cd.check_weight(e.weight)
    raising = _raises(orientation, side)
    dest = cd.shift(lam, j, 1 if raising else -1)
    table = slide_poly(cd, e._poly, j, raising)
    return [
        DottedStrandTerm((j, orientation), d, CenterElement._raw(dest, p))
        for d, p in sorted(table.items())
    ]


def terms_as_dict(terms):
    """``{dots: CenterElement}`` with zero coefficients dropped and repeats merged."""
    out = {}
    for t in terms:
        if t.dots in out:
            out[t.dots] = out[t.dots] + t.coefficient
        else:
            out[t.dots] = t.coefficient
    return {d: c for d, c in out.items() if c}


def power_slide_check(cd, i, j, r, lam):
    """Check the power-sum slide rules across E_j and F_j in both directions.

    With mu the weight before and mu' after crossing, sliding p_{i,r}(mu)
    gives p_{i,r}(mu') plus sign * kappa * x^r, where kappa is -2 for i = j,
    (-v_ij)^r for i.j = -1 and 0 otherwise, and sign is +1 when the weight
    goes up and -1 when it goes down.
    """
    cd._check_node(i)
    cd._check_node(j)
    lam = cd.check_weight(lam)
    aij = cd.cartan(i, j)
    kappa = {2: -2, -1: (-cd.v(i, j)) ** r, 0: 0}[aij]
    for orientation in (UP, DOWN):
        for side in ("left", "right"):
            raising = _raises(orientation, side)
            start = cd.shift(lam, j, -1 if raising else 1)
            moved = slide_center_past_strand(power_sum(cd, i, r, start), cd, (j, orientation), side)
            expected = [DottedStrandTerm((j, orientation), 0, power_sum(cd, i, r, lam))]
            correction = kappa if raising else -kappa
            if correction:
                expected.append(
                    DottedStrandTerm((j, orientation), r, CenterElement.one(lam).scale(correction))
                )
            if terms_as_dict(moved) != terms_as_dict(expected):
                return False
    return True
