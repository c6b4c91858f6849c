"""Symmetric functions, their finite-variable quotients and q-combinatorics."""

from .bases import BASES, check_basis, e_in_h, e_n, p_in_h, schur_in_h, sym_from_basis, to_basis
from .core import SymFn, SymN
from .laurent import LaurentPolyQ, gaussian_binomial, quantum_factorial, quantum_integer
from .partition import Partition, box_partitions, partitions
from .text import ParseError, format_sym, parse_sym, sym_from_json, sym_to_json

__all__ = [
    "BASES",
    "LaurentPolyQ",
    "ParseError",
    "Partition",
    "SymFn",
    "SymN",
    "box_partitions",
    "check_basis",
    "e_in_h",
    "e_n",
    "format_sym",
    "gaussian_binomial",
    "grassmannian_convolution_check",
    "mul",
    "p_in_h",
    "parse_sym",
    "partitions",
    "project_to_n",
    "quantum_factorial",
    "quantum_integer",
    "schur_in_h",
    "sym_from_basis",
    "sym_from_json",
    "sym_to_json",
    "to_basis",
]


def mul(a, b):
    return a * b


def project_to_n(f, n):
    """Image of ``f`` in Sym_n."""
    return SymN.project(n, f)


def grassmannian_convolution_check(N):
    """True iff ``sum_{a+b=k} (-1)^a e_a h_b = delta_{k,0}`` for all ``k <= N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    for k in range(N + 1):
        total = SymFn.zero()
        for a in range(k + 1):
            total = total + (e_in_h(a) * SymFn.h(k - a)).scale((-1) ** a)
        if total != (SymFn.one() if k == 0 else SymFn.zero()):
            return False
    return True
