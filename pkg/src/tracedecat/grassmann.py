"""Cohomology of the Grassmannian Gr(k, n) in the Schur basis.

H*(Gr(k, n)) is Sym modulo the span of the Schur functions whose diagram
does not fit in the k x (n-k) box; products are Schur products in symfunc
followed by truncation.
"""

from math import comb

from ._exact import add_into, coeff, exact_rank, format_coeff
from .symfunc import LaurentPolyQ, Partition, box_partitions, schur_in_h, to_basis
from .symfunc.text import ParseError


def _check_kn(k, n):
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")


class BoxPartition(Partition):
    """A partition inside the k x (n-k) box; ``k`` and ``n`` travel separately."""

    __slots__ = ()

    @classmethod
    def within(cls, k, n, parts):
        _check_kn(k, n)
        lam = Partition(parts)
        if not lam.fits_box(k, n - k):
            raise ValueError(f"{list(lam)} does not fit in the {k}x{n - k} box")
        return cls(lam)


class GrCohElement:
    """An element of H*(Gr(k, n)) as a combination of box Schur classes."""

    __slots__ = ("k", "n", "_terms")

    def __init__(self, k, n, terms=None):
        _check_kn(k, n)
        self.k, self.n = k, n
        clean = {}
        for lam, c in (terms or {}).items():
            lam = BoxPartition.within(k, n, lam)
            add_into(clean, Partition(lam), coeff(c))
        self._terms = clean

    @classmethod
    def _raw(cls, k, n, terms):
        obj = cls.__new__(cls)
        obj.k, obj.n, obj._terms = k, n, terms
        return obj

    @classmethod
    def one(cls, k, n):
        return cls(k, n, {(): 1})

    @classmethod
    def schur(cls, k, n, parts):
        """s_parts, which is 0 when it leaves the box."""
        lam = Partition(parts)
        _check_kn(k, n)
        return cls._raw(k, n, {lam: 1} if lam.fits_box(k, n - k) else {})

    @classmethod
    def from_sym(cls, k, n, f):
        """Image of a symmetric function under truncation to the box."""
        _check_kn(k, n)
        terms = {lam: c for lam, c in to_basis(f, "schur").items() if lam.fits_box(k, n - k)}
        return cls._raw(k, n, terms)

    @property
    def terms(self):
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _same(self, other):
        if isinstance(other, GrCohElement):
            if (other.k, other.n) != (self.k, self.n):
                raise ValueError(f"Gr({self.k},{self.n}) and Gr({other.k},{other.n}) do not mix")
            return other
        return GrCohElement.one(self.k, self.n).scale(other)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self._terms)
        for lam, c in other._terms.items():
            add_into(out, lam, c)
        return GrCohElement._raw(self.k, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._same(other))

    def scale(self, c):
        c = coeff(c)
        return GrCohElement._raw(self.k, self.n, {lam: v * c for lam, v in self._terms.items()} if c else {})

    def __mul__(self, other):
        if not isinstance(other, GrCohElement):
            return self.scale(other)
        return gr_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GrCohElement):
            return NotImplemented
        return (self.k, self.n, self._terms) == (other.k, other.n, other._terms)

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self._terms.items())))

    def to_sym(self):
        from .symfunc import SymFn

        out = SymFn.zero()
        for lam, c in self._terms.items():
            out = out + schur_in_h(lam).scale(c)
        return out

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "terms": [
                {"partition": list(lam), "coeff": format_coeff(c)}
                for lam, c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            terms = {}
            for t in obj["terms"]:
                lam = Partition(t["partition"])
                terms[lam] = terms.get(lam, 0) + coeff(str(t["coeff"]))
            return cls(int(obj["k"]), int(obj["n"]), terms)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed Grassmannian JSON: {exc}") from None

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        items = sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))
        for idx, (lam, c) in enumerate(items):
            neg = c < 0
            mag = -c if neg else c
            body = f"s[{','.join(map(str, lam))}]"
            if mag != 1:
                body = f"{format_coeff(mag)}*{body}"
            chunks.append((f"-{body}" if neg else body) if idx == 0 else f"{'-' if neg else '+'} {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"GrCohElement({self.k}, {self.n}, {self})"


def gr_mul(a, b):
    """Product in H*(Gr(k, n)): Schur product, then drop what leaves the box."""
    b = a._same(b)
    return GrCohElement.from_sym(a.k, a.n, a.to_sym() * b.to_sym())


def chern_class(k, n, j):
    """c_j = e_j, which is s_(1^j) and vanishes once j > k."""
    return GrCohElement.schur(k, n, (1,) * j) if j >= 0 else GrCohElement._raw(k, n, {})


def dual_chern_class(k, n, j):
    """cbar_j = (-1)^j h_j, the class making sum_j c_j cbar_{a-j} vanish."""
    return GrCohElement.schur(k, n, (j,) if j else ()).scale((-1) ** j) if j >= 0 else GrCohElement._raw(k, n, {})


def ideal_relation_check(k, n, alpha_max, signed=True):
    """True iff sum_j c_j cbar_{alpha-j} = 0 for 1 <= alpha <= alpha_max.

    ``signed=False`` uses cbar_j = h_j without the sign, which fails as soon
    as alpha = 1 (it gives 2 s_(1)); it is kept to document that choice.
    """
    _check_kn(k, n)
    for alpha in range(1, alpha_max + 1):
        total = GrCohElement._raw(k, n, {})
        for j in range(alpha + 1):
            bar = dual_chern_class(k, n, alpha - j)
            if not signed:
                bar = bar.scale((-1) ** (alpha - j))
            total = total + gr_mul(chern_class(k, n, j), bar)
        if total:
            return False
    return True


def graded_dimension(k, n):
    """sum over box partitions of q^(2|lambda|)."""
    _check_kn(k, n)
    out = {}
    for lam in box_partitions(k, n - k):
        add_into(out, 2 * sum(lam), 1)
    return LaurentPolyQ(out)


def chern_character_report(k, n):
    """The map K_0 -> H*(Gr(k, n)) sending the generator to the unit class."""
    _check_kn(k, n)
    basis = box_partitions(k, n - k)
    unit = GrCohElement.one(k, n)
    image = [[unit._terms.get(lam, 0) for lam in basis]]
    rank = exact_rank(image, len(basis))
    dim = len(basis)
    assert dim == comb(n, k)
    return {
        "k": k,
        "n": n,
        "dimension": dim,
        "image_rank": rank,
        "cokernel_rank": dim - rank,
        "surjective": rank == dim,
        "degenerate": k in (0, n),
    }
