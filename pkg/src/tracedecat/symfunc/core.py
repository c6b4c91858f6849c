"""Symmetric functions stored in the complete homogeneous (h) basis."""

from types import MappingProxyType

from .._exact import add_into, coeff
from .partition import Partition, merge, sort_key


class SymFn:
    """An element of Sym with exact rational coefficients.

    ``terms`` maps a partition ``mu`` to the coefficient of
    ``h_mu = h_{mu_1} h_{mu_2} ...``.  Degrees follow the convention
    ``deg h_r = 2r``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for part, c in (terms or {}).items():
            part = part if isinstance(part, Partition) else Partition(part)
            add_into(clean, part, coeff(c))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls):
        return cls._raw({Partition(): 1})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def h(cls, *parts):
        """The h-monomial ``h_{parts[0]} h_{parts[1]} ...`` (``h_0 = 1``)."""
        if any(p < 0 for p in parts):
            return cls.zero()
        return cls._raw({Partition.from_multiset(parts): 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, SymFn):
            return self._terms == other._terms
        if isinstance(other, int) or _is_rational(other):
            return self == SymFn.one() * other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            add_into(out, k, v)
        return SymFn._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFn._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFn):
            out = {}
            for a, ca in self._terms.items():
                for b, cb in other._terms.items():
                    add_into(out, merge(a, b), ca * cb)
            return SymFn._raw(out)
        if isinstance(other, int) or _is_rational(other):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c):
        c = coeff(c)
        if not c:
            return SymFn.zero()
        return SymFn._raw({k: coeff(v * c) for k, v in self._terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = SymFn.one()
        for _ in range(k):
            out = out * self
        return out

    def degrees(self):
        return sorted({2 * sum(p) for p in self._terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs[0] if degs else 0

    def homogeneous_part(self, degree):
        return SymFn._raw({p: c for p, c in self._terms.items() if 2 * sum(p) == degree})

    def max_part(self):
        return max((p[0] for p in self._terms if p), default=0)

    def __repr__(self):
        from .text import format_sym

        return f"SymFn({format_sym(self, 'h')})"


def _is_rational(x):
    from fractions import Fraction

    return isinstance(x, Fraction)


def _lift(x):
    if isinstance(x, SymFn):
        return x
    if isinstance(x, int) or _is_rational(x):
        return SymFn.one().scale(x)
    return NotImplemented


class SymN:
    """An element of Sym_n, the symmetric polynomials in ``n`` variables.

    Stored as the unique SymFn representative using only ``h_1, ..., h_n``;
    since ``Sym_n = Q[h_1, ..., h_n]`` freely, products of reduced values
    are reduced.
    """

    __slots__ = ("n", "value")

    def __init__(self, n, value):
        if n < 1:
            raise ValueError("n must be positive")
        value = _lift(value)
        if value.max_part() > n:
            raise ValueError("value is not reduced; use SymN.project")
        self.n = n
        self.value = value

    @classmethod
    def project(cls, n, f):
        """Image of ``f`` under Sym -> Sym_n (kills e_s for s > n)."""
        from .bases import reduce_to_n

        return cls(n, reduce_to_n(_lift(f), n))

    @classmethod
    def zero(cls, n):
        return cls(n, SymFn.zero())

    @classmethod
    def one(cls, n):
        return cls(n, SymFn.one())

    def _check(self, other):
        if isinstance(other, SymN):
            if other.n != self.n:
                raise ValueError(f"Sym_{self.n} and Sym_{other.n} do not mix")
            return other.value
        return _lift(other)

    def __add__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else SymN(self.n, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else SymN(self.n, self.value - v)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SymN(self.n, -self.value)

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return SymN(self.n, self.value * v)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, SymN):
            return self.n == other.n and self.value == other.value
        v = _lift(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __hash__(self):
        return hash((self.n, self.value))

    def __bool__(self):
        return bool(self.value)

    @property
    def degree(self):
        return self.value.degree

    def __repr__(self):
        from .text import format_sym

        return f"SymN({self.n}, {format_sym(self.value, 'e')})"
