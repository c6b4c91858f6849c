"""Conversions between the h basis and the e, p, m and Schur bases.

Every basis is a layer over the h basis: for each degree we build the
matrix whose columns are the h-expansions of the basis elements and invert
it (exactly) when going the other way.
"""

from functools import lru_cache

from .._exact import add_into, coeff, exact_inverse
from .core import SymFn, SymN
from .partition import Partition, partitions

BASES = ("e", "h", "p", "m", "schur")
_ALIASES = {"s": "schur"}


def check_basis(basis):
    basis = _ALIASES.get(basis, basis)
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {', '.join(BASES)}")
    return basis


@lru_cache(maxsize=None)
def e_in_h(k):
    """e_k = s_(1^k), expanded by Jacobi-Trudi."""
    if k < 0:
        return SymFn.zero()
    return schur_in_h((1,) * k)


@lru_cache(maxsize=None)
def p_in_h(k):
    """Power sum p_k via Newton's identity p_k = k h_k - sum h_{k-i} p_i."""
    if k < 1:
        raise ValueError("power sums start at p_1")
    out = SymFn.h(k).scale(k)
    for i in range(1, k):
        out = out - SymFn.h(k - i) * p_in_h(i)
    return out


@lru_cache(maxsize=None)
def schur_in_h(lam):
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j}), h_0 = 1, h_{<0} = 0."""
    lam = Partition(lam)
    ell = len(lam)
    out = {}

    def expand(row, used, picked, sign):
        if row == ell:
            add_into(out, Partition.from_multiset(picked), sign)
            return
        for col in range(ell):
            if used >> col & 1:
                continue
            idx = lam[row] - row + col
            if idx < 0:
                continue
            # sign of the permutation = parity of inversions added by this column
            inversions = bin(used >> col).count("1")
            expand(row + 1, used | 1 << col, picked + [idx], -sign if inversions % 2 else sign)

    expand(0, 0, [], 1)
    return SymFn._raw(out)


@lru_cache(maxsize=None)
def _count_matrices(rows, cols):
    """Number of N-matrices with row sums *rows* and column sums *cols*.

    This is the coefficient of m_cols in h_rows.
    """
    if not rows:
        return 1 if not any(cols) else 0
    first, rest = rows[0], rows[1:]
    total = 0
    for vec in _compositions_bounded(first, cols):
        left = tuple(sorted((c - v for c, v in zip(cols, vec)), reverse=True))
        total += _count_matrices(rest, left)
    return total


def _compositions_bounded(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    head, tail = bounds[0], bounds[1:]
    cap = sum(tail)
    for v in range(min(head, total), -1, -1):
        if total - v > cap:
            break
        for rest in _compositions_bounded(total - v, tail):
            yield (v,) + rest


def h_to_m_coefficient(mu, nu):
    return _count_matrices(tuple(mu), tuple(nu))


def _single_in_h(basis, lam):
    if basis == "h":
        return SymFn._raw({lam: 1})
    if basis == "e":
        out = SymFn.one()
        for k in lam:
            out = out * e_in_h(k)
        return out
    if basis == "p":
        out = SymFn.one()
        for k in lam:
            out = out * p_in_h(k)
        return out
    if basis == "schur":
        return schur_in_h(lam)
    if basis == "m":
        return _m_in_h(lam)
    raise AssertionError(basis)


@lru_cache(maxsize=None)
def _h_to_m_matrix_inverse(d):
    parts = partitions(d)
    # rows indexed by nu, columns by mu: (N^T)[nu][mu] = N(mu, nu)
    mat = [[h_to_m_coefficient(mu, nu) for mu in parts] for nu in parts]
    return exact_inverse(mat)


@lru_cache(maxsize=None)
def _m_in_h(lam):
    d = sum(lam)
    parts = partitions(d)
    inv = _h_to_m_matrix_inverse(d)
    col = parts.index(lam)
    return SymFn._raw({mu: inv[r][col] for r, mu in enumerate(parts) if inv[r][col]})


@lru_cache(maxsize=None)
def _from_h_matrix(basis, d):
    """Matrix taking h-coordinates to *basis*-coordinates in degree 2d."""
    parts = partitions(d)
    index = {p: k for k, p in enumerate(parts)}
    cols = [[0] * len(parts) for _ in parts]
    for c, lam in enumerate(parts):
        for mu, v in _single_in_h(basis, lam).terms.items():
            cols[index[mu]][c] = v
    return exact_inverse(cols)


def sym_from_basis(basis, expansion):
    """Build a SymFn from ``{partition: coefficient}`` in the given basis."""
    basis = check_basis(basis)
    out = SymFn.zero()
    for lam, c in expansion.items():
        lam = lam if isinstance(lam, Partition) else Partition.from_multiset(lam)
        c = coeff(c)
        if c:
            out = out + _single_in_h(basis, lam).scale(c)
    return out


def to_basis(f, basis):
    """Expansion of ``f`` in the given basis as ``{Partition: coefficient}``."""
    basis = check_basis(basis)
    if basis == "h":
        return dict(f.terms)
    out = {}
    by_degree = {}
    for mu, c in f.terms.items():
        by_degree.setdefault(sum(mu), {})[mu] = c
    for d, chunk in by_degree.items():
        parts = partitions(d)
        if basis == "m":
            for nu in parts:
                v = sum(c * h_to_m_coefficient(mu, nu) for mu, c in chunk.items())
                if v:
                    out[nu] = coeff(v)
            continue
        mat = _from_h_matrix(basis, d)
        index = {p: k for k, p in enumerate(parts)}
        for r, lam in enumerate(parts):
            v = sum(mat[r][index[mu]] * c for mu, c in chunk.items())
            if v:
                out[lam] = coeff(v)
    return out


def reduce_to_n(f, n):
    """Representative of ``f`` in Sym_n using only h_1..h_n."""
    if f.max_part() <= n:
        return f
    kept = {lam: c for lam, c in to_basis(f, "e").items() if not lam or lam[0] <= n}
    return sym_from_basis("e", kept)


def e_n(n, k):
    """e_k as an element of Sym_n."""
    return SymN(n, e_in_h(k)) if k <= n else SymN.zero(n)

