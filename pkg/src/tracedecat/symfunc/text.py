"""Text and JSON forms of symmetric functions.

Text grammar (whitespace insensitive)::

    expression := term (("+" | "-") term)*
    term       := coeff ("*"? factor)* | factor ("*"? factor)*
    factor     := basis "[" parts "]"          e.g. h[2,1], p[3], s[2,2], e[]
    basis      := "e" | "h" | "p" | "m" | "s" | "schur"

A factor list inside one term is a product, so ``h[1] e[2]`` is allowed.
"""

import re

from .._exact import coeff, format_coeff, parse_coeff
from .bases import check_basis, sym_from_basis, to_basis
from .core import SymFn, SymN
from .partition import Partition, sort_key

_LETTER = {"schur": "s"}
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]+)\s*\[([0-9,\s]*)\]|([+\-*]))")


class ParseError(ValueError):
    pass


def _tokens(text):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, letter, parts, op = m.groups()
        if num is not None:
            yield ("num", parse_coeff(num))
        elif letter is not None:
            nums = [int(x) for x in parts.replace(" ", "").split(",") if x]
            yield ("factor", (letter, nums))
        else:
            yield ("op", op)


def parse_sym(text):
    """Parse an expression like ``"3/2 h[2,1] - p[2]"`` into a SymFn."""
    total = SymFn.zero()
    sign = 1
    term = None
    dangling = True
    for kind, val in _tokens(text):
        if kind == "op" and val in "+-":
            if term is not None:
                total = total + term.scale(sign)
                term, sign = None, 1
            if val == "-":
                sign = -sign
            dangling = True
            continue
        if kind == "op":  # '*'
            if term is None:
                raise ParseError("'*' without a left operand")
            dangling = True
            continue
        if kind == "num":
            value = SymFn.one().scale(val)
        else:
            letter, nums = val
            try:
                basis = check_basis(letter)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            value = sym_from_basis(basis, {Partition.from_multiset(nums): 1})
        term = value if term is None else term * value
        dangling = False
    if dangling:
        raise ParseError("empty or incomplete expression")
    return total + term.scale(sign)


def format_expansion(expansion, basis):
    letter = _LETTER.get(basis, basis)
    items = sorted(expansion.items(), key=lambda kv: sort_key(kv[0]))
    if not items:
        return "0"
    chunks = []
    for k, (lam, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        if lam:
            body = f"{letter}[{','.join(map(str, lam))}]"
            if mag != 1:
                body = f"{format_coeff(mag)}*{body}"
        else:
            body = format_coeff(mag)
        if k == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"{'-' if neg else '+'} {body}")
    return " ".join(chunks)


def format_sym(f, basis="h"):
    if isinstance(f, SymN):
        f = f.value
    basis = check_basis(basis)
    return format_expansion(to_basis(f, basis), basis)


def sym_to_json(f, basis="h"):
    """``{"basis": ..., "terms": [{"partition": [...], "coeff": "p/q"}]}``."""
    n = None
    if isinstance(f, SymN):
        n, f = f.n, f.value
    basis = check_basis(basis)
    exp = to_basis(f, basis)
    out = {
        "basis": basis,
        "terms": [
            {"partition": list(lam), "coeff": format_coeff(c)}
            for lam, c in sorted(exp.items(), key=lambda kv: sort_key(kv[0]))
        ],
    }
    if n is not None:
        out = {"n": n, **out}
    return out


def sym_from_json(obj):
    """Inverse of :func:`sym_to_json`; returns SymN when ``"n"`` is present."""
    try:
        basis = check_basis(obj["basis"])
        expansion = {}
        for t in obj["terms"]:
            lam = Partition(t["partition"])
            expansion[lam] = expansion.get(lam, 0) + coeff(str(t["coeff"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed symmetric-function JSON: {exc}") from None
    f = sym_from_basis(basis, expansion)
    if "n" in obj:
        return SymN.project(int(obj["n"]), f)
    return f
