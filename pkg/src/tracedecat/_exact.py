"""Exact rational coefficients and small linear-algebra helpers.

Coefficients are plain ``int`` whenever they are integral and
``fractions.Fraction`` otherwise; integral arithmetic is far cheaper and
most of the computations in this package never leave the integers.
"""

from fractions import Fraction
from numbers import Rational

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = [
    "coeff",
    "parse_coeff",
    "format_coeff",
    "add_into",
    "exact_inverse",
    "exact_rank",
    "exact_solve",
]


def coeff(value):
    """Normalize *value* to ``int`` or ``Fraction``; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return coeff(Fraction(int(value.numerator), int(value.denominator)))
    if isinstance(value, str):
        return parse_coeff(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_coeff(text):
    text = text.strip()
    try:
        return coeff(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational literal {text!r}") from None


def format_coeff(value):
    value = coeff(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def add_into(acc, key, value):
    """acc[key] += value, deleting the entry when it cancels."""
    total = acc.get(key, 0) + value
    if total:
        acc[key] = coeff(total) if type(total) is Fraction else total
    else:
        acc.pop(key, None)


def _to_qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x):
    return coeff(Fraction(int(x.numerator), int(x.denominator)))


def _domain_matrix(rows, ncols=None):
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_to_qq(v) for v in row] for row in rows], (nrows, ncols), QQ)


def exact_inverse(rows):
    """Inverse of a square rational matrix given as a list of rows."""
    inv = _domain_matrix(rows).inv()
    return [[_from_qq(v) for v in row] for row in inv.to_list()]


def exact_rank(rows, ncols=None):
    if not rows:
        return 0
    return int(_domain_matrix(rows, ncols).rank())


def exact_solve(rows, rhs):
    """Solve ``A x = b`` for square nonsingular ``A``."""
    a = _domain_matrix(rows)
    b = DomainMatrix([[_to_qq(v)] for v in rhs], (len(rhs), 1), QQ)
    x = a.lu_solve(b)
    return [_from_qq(row[0]) for row in x.to_list()]
