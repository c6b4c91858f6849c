"""The nilHecke ring NH_n, its polynomial representation and its trace.

Words are read as operator composition: the word ``x1 d1`` applies ``d1``
first and then multiplies by ``x1``.  Every element is compared through its
action on the staircase monomials, which is faithful, and its canonical form
is the ``n! x n!`` matrix over Sym_n in the staircase basis.
"""

import itertools
import re
from functools import lru_cache

from ._exact import add_into, coeff, format_coeff, parse_coeff
from ._report import Report
from .symfunc import SymFn, SymN, e_in_h, sym_to_json
from .symfunc.text import ParseError


class PolyN:
    """Polynomial in ``x_1, ..., x_n`` with rational coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != n or min(exps) < 0:
                raise ValueError(f"bad exponent vector {exps} for n={n}")
            add_into(clean, exps, coeff(c))
        self._terms = clean

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def one(cls, n):
        return cls._raw(n, {(0,) * n: 1})

    @classmethod
    def var(cls, n, i):
        exps = [0] * n
        exps[i - 1] = 1
        return cls._raw(n, {tuple(exps): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyN.one(self.n) * other
        if not isinstance(other, PolyN):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def _same(self, other):
        if isinstance(other, PolyN):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return PolyN.one(self.n).scale(other)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            add_into(out, k, v)
        return PolyN._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._same(other))

    def scale(self, c):
        c = coeff(c)
        if not c:
            return PolyN._raw(self.n, {})
        return PolyN._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyN):
            return self.scale(other)
        self._same(other)
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                add_into(out, tuple(x + y for x, y in zip(a, b)), ca * cb)
        return PolyN._raw(self.n, out)

    __rmul__ = __mul__

    def swap(self, i):
        """Apply the transposition s_i exchanging x_i and x_{i+1}."""
        out = {}
        for a, c in self._terms.items():
            b = list(a)
            b[i - 1], b[i] = b[i], b[i - 1]
            out[tuple(b)] = c
        return PolyN._raw(self.n, out)

    def apply(self, letter):
        """Apply a single letter ``("x", i)`` or ``("d", i)``."""
        out = {}
        for a, c in self._terms.items():
            for b, cb in _letter_on_monomial(letter, a):
                add_into(out, b, c * cb)
        return PolyN._raw(self.n, out)

    def degree_terms(self):
        return sorted({2 * sum(a) for a in self._terms})

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for k, (a, c) in enumerate(sorted(self._terms.items(), reverse=True)):
            mono = " ".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(a) if e
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = format_coeff(mag)
            else:
                body = mono if mag == 1 else f"{format_coeff(mag)} {mono}"
            if k == 0:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"{'-' if neg else '+'} {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"PolyN({self.n}, {self})"


@lru_cache(maxsize=200_000)
def _letter_on_monomial(letter, a):
    kind, i = letter
    if kind == "x":
        b = list(a)
        b[i - 1] += 1
        return ((tuple(b), 1),)
    return tuple(_divided_difference(a, i))


def _divided_difference(a, i):
    """Divided difference of the monomial x^a, without division.

    (x_i^p x_{i+1}^q - x_i^q x_{i+1}^p) / (x_i - x_{i+1}) is a geometric sum.
    """
    p, q = a[i - 1], a[i]
    if p == q:
        return []
    sign = 1 if p > q else -1
    hi, lo = max(p, q), min(p, q)
    out = []
    for k in range(hi - lo):
        b = list(a)
        b[i - 1], b[i] = hi - 1 - k, lo + k
        out.append((tuple(b), sign))
    return out


_LETTER = re.compile(r"([xd])(\d+)(?:\^(\d+))?")
_NH_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([xd]\d+(?:\^\d+)?)|([+\-]))")


class NHWord(tuple):
    """A word in the generators; letters are ``("x", i)`` and ``("d", i)``."""

    __slots__ = ()

    def __new__(cls, letters=()):
        return tuple.__new__(cls, tuple((str(k), int(i)) for k, i in letters))

    def check(self, n):
        for kind, i in self:
            if kind == "x" and not 1 <= i <= n:
                raise ValueError(f"x{i} is out of range for n={n}")
            if kind == "d" and not 1 <= i <= n - 1:
                raise ValueError(f"d{i} is out of range for n={n}")
            if kind not in ("x", "d"):
                raise ValueError(f"unknown letter {kind!r}")
        return self

    @property
    def degree(self):
        return sum(2 if kind == "x" else -2 for kind, _ in self)

    def __str__(self):
        return " ".join(f"{k}{i}" for k, i in self) if self else "1"


class NHElement:
    """A rational linear combination of words in NH_n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        clean = {}
        for word, c in (terms or {}).items():
            word = NHWord(word).check(n)
            add_into(clean, word, coeff(c))
        self._terms = clean

    @classmethod
    def identity(cls, n):
        return cls(n, {NHWord(): 1})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def word(cls, n, *letters):
        """``NHElement.word(2, "x1", "d1")`` is the single word x1 d1."""
        parsed = []
        for token in letters:
            m = _LETTER.fullmatch(token)
            if not m:
                raise ValueError(f"bad letter {token!r}")
            parsed += [(m.group(1), int(m.group(2)))] * int(m.group(3) or 1)
        return cls(n, {NHWord(parsed): 1})

    @classmethod
    def parse(cls, n, text):
        """Parse ``"3 x1 d1 - d1 x2"``; a bare coefficient is a multiple of 1."""
        terms = {}
        sign, c, letters = 1, None, None
        dangling = True
        text = text.strip()
        pos = 0
        while pos < len(text):
            m = _NH_TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse {text[pos:]!r}")
            pos = m.end()
            num, factor, op = m.groups()
            if op:
                if c is not None or letters is not None:
                    add_into(terms, NHWord(letters or ()), sign * (1 if c is None else c))
                    sign, c, letters = 1, None, None
                if op == "-":
                    sign = -sign
                dangling = True
            elif num:
                if c is not None or letters is not None:
                    raise ParseError("a coefficient must lead its term")
                c, dangling = parse_coeff(num), False
            else:
                fm = _LETTER.fullmatch(factor)
                power = int(fm.group(3) or 1)
                letters = (letters or []) + [(fm.group(1), int(fm.group(2)))] * power
                dangling = False
        if dangling:
            raise ParseError("empty or incomplete expression")
        add_into(terms, NHWord(letters or ()), sign * (1 if c is None else c))
        try:
            return cls(n, terms)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @property
    def terms(self):
        return dict(self._terms)

    def __eq__(self, other):
        """Equality of words and coefficients; ``equals`` compares in NH_n."""
        if not isinstance(other, NHElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def _same(self, other):
        if isinstance(other, NHElement):
            if other.n != self.n:
                raise ValueError(f"NH_{self.n} and NH_{other.n} do not mix")
            return other
        return NHElement.identity(self.n).scale(other)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            add_into(out, w, c)
        return NHElement._from(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = coeff(c)
        return NHElement._from(self.n, {w: v * c for w, v in self._terms.items()} if c else {})

    def __mul__(self, other):
        """Composition: ``(a * b)(p) = a(b(p))``."""
        if not isinstance(other, NHElement):
            return self.scale(other)
        self._same(other)
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                add_into(out, NHWord(a + b), ca * cb)
        return NHElement._from(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = NHElement.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _from(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    def degrees(self):
        return sorted({w.degree for w in self._terms})

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"word": str(w), "coeff": format_coeff(c)} for w, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            out = cls.zero(int(obj["n"]))
            for t in obj["terms"]:
                word = cls.parse(out.n, t["word"]) if t["word"].strip() else cls.identity(out.n)
                out = out + word.scale(coeff(str(t["coeff"])))
            return out
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed nilHecke JSON: {exc}") from None

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for k, (w, c) in enumerate(sorted(self._terms.items())):
            neg = c < 0
            mag = -c if neg else c
            if not w:
                body = format_coeff(mag)
            else:
                body = str(w) if mag == 1 else f"{format_coeff(mag)} {w}"
            if k == 0:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"{'-' if neg else '+'} {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"NHElement({self.n}, {self})"


def act(e, p):
    """Apply ``e`` to the polynomial ``p``."""
    if e.n != p.n:
        raise ValueError(f"strand count {e.n} does not match polynomial in {p.n} variables")
    out = PolyN(p.n)
    for word, c in e._terms.items():
        q = p
        for letter in reversed(word):
            q = q.apply(letter)
        out = out + q.scale(c)
    return out


@lru_cache(maxsize=None)
def staircase_basis(n):
    """Exponent vectors a with a_k <= n-k, in lexicographic order."""
    return tuple(itertools.product(*(range(n - k + 1) for k in range(1, n + 1))))


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _reduce_monomial(a):
    """Expand x^a as ``{staircase vector: SymFn}`` over Sym_n.

    Uses x_k^{n-k+1} = -sum_{j>=1} (-1)^j x_k^{n-k+1-j} e_j(x_k..x_n) and
    e_j(x_k..x_n) = sum_i (-1)^i h_i(x_1..x_{k-1}) e_{j-i}(x_1..x_n).
    Each step lowers x_k while leaving x_{k+1}..x_n alone, so the recursion
    terminates.
    """
    n = len(a)
    bad = [k for k in range(1, n + 1) if a[k - 1] > n - k]
    if not bad:
        return {a: SymFn.one()}
    k = bad[-1]
    d = n - k + 1
    base = list(a)
    base[k - 1] -= d
    out = {}
    for j in range(1, d + 1):
        for i in range(j + 1):
            sign = -((-1) ** (j + i))
            sym = e_in_h(j - i).scale(sign)
            for comp in _compositions(i, k - 1):
                new = base[:]
                new[k - 1] += d - j
                for t, extra in enumerate(comp):
                    new[t] += extra
                for b, c in _reduce_monomial(tuple(new)).items():
                    _add_sym(out, b, sym * c)
    return out


def _add_sym(acc, key, value):
    total = acc[key] + value if key in acc else value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def staircase_expand(p):
    """Coefficients of ``p`` in the staircase basis, as ``{vector: SymN}``."""
    out = {}
    for a, c in p._terms.items():
        for b, sym in _reduce_monomial(a).items():
            _add_sym(out, b, sym.scale(c))
    return {b: SymN(p.n, v) for b, v in out.items()}


class NHMatrix:
    """An ``n! x n!`` matrix over Sym_n indexed by the staircase basis."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries):
        size = len(staircase_basis(n))
        if len(entries) != size or any(len(row) != size for row in entries):
            raise ValueError(f"expected a {size}x{size} matrix")
        self.n = n
        self.entries = [[x if isinstance(x, SymN) else SymN(n, x) for x in row] for row in entries]

    @property
    def basis(self):
        return staircase_basis(self.n)

    @classmethod
    def identity(cls, n):
        size = len(staircase_basis(n))
        return cls(n, [[SymN.one(n) if r == c else SymN.zero(n) for c in range(size)] for r in range(size)])

    def __matmul__(self, other):
        if self.n != other.n:
            raise ValueError("matrix sizes differ")
        size = len(self.entries)
        out = []
        for r in range(size):
            row = []
            for c in range(size):
                acc = SymFn.zero()
                for m in range(size):
                    a, b = self.entries[r][m].value, other.entries[m][c].value
                    if a and b:
                        acc = acc + a * b
                row.append(SymN(self.n, acc))
            out.append(row)
        return NHMatrix(self.n, out)

    def trace(self):
        acc = SymFn.zero()
        for k in range(len(self.entries)):
            acc = acc + self.entries[k][k].value
        return SymN(self.n, acc)

    def __eq__(self, other):
        if not isinstance(other, NHMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def to_json(self, basis="e"):
        return {
            "n": self.n,
            "basis": [list(b) for b in self.basis],
            "rows": [[sym_to_json(x, basis) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj):
        from .symfunc import sym_from_json

        try:
            n = int(obj["n"])
            rows = [[_as_symn(n, sym_from_json(x)) for x in row] for row in obj["rows"]]
            if "basis" in obj and [tuple(b) for b in obj["basis"]] != list(staircase_basis(n)):
                raise ParseError("basis does not match the staircase order")
            return cls(n, rows)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed matrix JSON: {exc}") from None

    def to_text(self, basis="e"):
        from .symfunc import format_sym

        labels = [_monomial_label(b) for b in self.basis]
        lines = ["basis: " + ", ".join(labels)]
        for row in self.entries:
            lines.append("[" + ", ".join(format_sym(x, basis) for x in row) + "]")
        return "\n".join(lines)


def _as_symn(n, value):
    if isinstance(value, SymN):
        if value.n != n:
            raise ParseError(f"entry lives in Sym_{value.n}, expected Sym_{n}")
        return value
    return SymN.project(n, value)


def _monomial_label(b):
    return " ".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(b) if e) or "1"


def to_matrix(e):
    """Matrix with entry [b][a] = coefficient of x^b in e(x^a)."""
    basis = staircase_basis(e.n)
    cols = [staircase_expand(act(e, PolyN.monomial(a))) for a in basis]
    zero = SymN.zero(e.n)
    return NHMatrix(e.n, [[col.get(b, zero) for col in cols] for b in basis])


def equals(e, f):
    """True iff ``e`` and ``f`` act identically on every staircase monomial."""
    if e.n != f.n:
        raise ValueError("elements of different NH_n")
    diff = e - f
    return all(not act(diff, PolyN.monomial(a)) for a in staircase_basis(e.n))


class TraceClassNH:
    """A class in Tr(NH_n), identified with its value in Sym_n."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    @property
    def n(self):
        return self.value.n

    def __eq__(self, other):
        if isinstance(other, TraceClassNH):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other):
        return TraceClassNH(self.value + (other.value if isinstance(other, TraceClassNH) else other))

    def __mul__(self, c):
        return TraceClassNH(self.value * c)

    __rmul__ = __mul__

    def __neg__(self):
        return TraceClassNH(-self.value)

    def __repr__(self):
        return f"TraceClassNH({self.value!r})"


def trace_class(e):
    return TraceClassNH(to_matrix(e).trace())


def idempotent_e(n):
    """e_n = x^delta d_{w0}, w0 written as (1)(2 1)(3 2 1)..."""
    dots = [("x", k) for k in range(1, n + 1) for _ in range(n - k)]
    crossings = [("d", i) for top in range(1, n) for i in range(top, 0, -1)]
    return NHElement(n, {NHWord(dots + crossings): 1})


def standard_basis_class(n, lam):
    """Trace class of x^lam e_n for a partition with at most n parts."""
    lam = list(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than {n} parts")
    if any(lam[k] < lam[k + 1] for k in range(len(lam) - 1)) or any(p < 0 for p in lam):
        raise ValueError(f"not a partition: {lam}")
    dots = [("x", k + 1) for k, p in enumerate(lam) for _ in range(p)]
    x_lam = NHElement(n, {NHWord(dots): 1})
    return trace_class(x_lam * idempotent_e(n))


def verify_relations(n):
    """Check every defining relation instance of NH_n by action."""
    report = Report(f"nilHecke relations for n={n}", prefix="RELATION", meta={"n": n})
    one = NHElement.identity(n)
    zero = NHElement.zero(n)

    def w(*tokens):
        return NHElement.word(n, *tokens)

    for i in range(1, n):
        d, xi, xj = f"d{i}", f"x{i}", f"x{i + 1}"
        report.add("nil_square", f"i={i}", equals(w(d, d), zero))
        report.add("dot_slide_left", f"i={i}", equals(w(xi, d) - w(d, xj), one))
        report.add("dot_slide_right", f"i={i}", equals(w(d, xi) - w(xj, d), one))
    for i in range(1, n - 1):
        a, b = f"d{i}", f"d{i + 1}"
        report.add("braid", f"i={i}", equals(w(a, b, a), w(b, a, b)))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        report.add("dot_commute", f"i={i} j={j}", equals(w(f"x{i}", f"x{j}"), w(f"x{j}", f"x{i}")))
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i > 1:
            a, b = f"d{i}", f"d{j}"
            report.add("crossing_commute", f"i={i} j={j}", equals(w(a, b), w(b, a)))
    for i in range(1, n + 1):
        for j in range(1, n):
            if i not in (j, j + 1):
                a, b = f"x{i}", f"d{j}"
                report.add("dot_crossing_commute", f"i={i} j={j}", equals(w(a, b), w(b, a)))
    return report
