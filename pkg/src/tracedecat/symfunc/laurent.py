"""Laurent polynomials in q with rational coefficients, and q-combinatorics."""

from fractions import Fraction

from .._exact import add_into, coeff, format_coeff


class LaurentPolyQ:
    """A finite sum ``sum c_e q^e`` with ``e`` any integer."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            add_into(clean, int(e), coeff(c))
        self._terms = clean

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: c})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, exp):
        return self._terms.get(exp, 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolyQ({0: other})
        if not isinstance(other, LaurentPolyQ):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = _lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            add_into(out, e, c)
        return LaurentPolyQ(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolyQ({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                add_into(out, a + b, ca * cb)
        return LaurentPolyQ(out)

    __rmul__ = __mul__

    def lowest(self):
        return min(self._terms)

    def highest(self):
        return max(self._terms)

    def divmod(self, other):
        """Long division by ``other``, ordered from the top exponent down.

        Quotient exponents are kept within the range an exact quotient can
        occupy; whatever is left over is returned as the remainder.
        """
        other = _lift(other)
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        top, lead = other.highest(), other._terms[other.highest()]
        rem = dict(self._terms)
        quot = {}
        floor = (self.lowest() if self else 0) + top - other.lowest()
        while rem and max(rem) >= floor:
            e = max(rem)
            c = coeff(Fraction(rem[e]) / lead)
            quot[e - top] = c
            for b, cb in other._terms.items():
                add_into(rem, e - top + b, -c * cb)
        return LaurentPolyQ(quot), LaurentPolyQ(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def to_json(self):
        return {
            "terms": [
                {"exp": e, "coeff": format_coeff(c)} for e, c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, obj):
        return cls({int(t["exp"]): coeff(str(t["coeff"])) for t in obj["terms"]})

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for k, (e, c) in enumerate(sorted(self._terms.items())):
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = format_coeff(mag)
            else:
                power = "q" if e == 1 else f"q^{e}"
                body = power if mag == 1 else f"{format_coeff(mag)}*{power}"
            if k == 0:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"{'-' if neg else '+'} {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"LaurentPolyQ({self})"


def _lift(x):
    if isinstance(x, LaurentPolyQ):
        return x
    return LaurentPolyQ({0: coeff(x)})


def quantum_integer(n):
    """``(n)_{q^2} = 1 + q^2 + ... + q^{2(n-1)}``."""
    if n < 0:
        raise ValueError("quantum integers are defined here for n >= 0")
    return LaurentPolyQ({2 * k: 1 for k in range(n)})


def quantum_factorial(n):
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = LaurentPolyQ({0: 1})
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


def gaussian_binomial(n, k):
    """``(n)! / ((k)! (n-k)!)`` in ``q^2``, computed by exact division."""
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    denom = quantum_factorial(k) * quantum_factorial(n - k)
    return quantum_factorial(n).exact_div(denom)
