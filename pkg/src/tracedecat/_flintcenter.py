"""A fast engine for the encircling operators, built on python-flint.

The dict-based operators in :mod:`tracedecat.current` are the reference;
this module recomputes the same maps with sparse multivariate polynomials
implemented in C, which the relation harness needs for its volume of work.

Variables are b_{i,a} for every node i and 1 <= a <= bound, plus a variable
x for strand dots.  Sliding is one ``compose`` (each generator goes to its
slide series in x); the loop closure then reads off the coefficient of each
power of x and multiplies it by the closing bubble.
"""

from functools import lru_cache

import flint

from .bubbles import CCW, CW

__all__ = ["BoundExceeded", "FlintCenterRing"]


class BoundExceeded(RuntimeError):
    """A bubble index went past the number of variables in the ring."""


class FlintCenterRing:
    def __init__(self, cd, bound=24):
        self.cd = cd
        self.bound = bound
        self.nodes = cd.nodes
        names = [f"b{i}_{a}" for a in range(1, bound + 1) for i in self.nodes] + ["x"]
        self.ctx = flint.fmpz_mpoly_ctx.get(tuple(names), "degrevlex")
        gens = self.ctx.gens()
        self.x = gens[-1]
        self._index = {}
        for k, (a, i) in enumerate((a, i) for a in range(1, bound + 1) for i in self.nodes):
            self._index[(i, a)] = k
        self._gens = gens
        self.zero = self.ctx.from_dict({})
        self.one = self.ctx.constant(1)
        self._cc = {}
        self._subs = {}

    # -- conversion --

    def from_poly(self, poly):
        nvars = len(self._gens)
        terms = {}
        for mono, c in poly.items():
            if not isinstance(c, int):
                raise TypeError("the fast engine works with integer coefficients")
            exps = [0] * nvars
            for g in mono:
                if g[1] > self.bound:
                    raise BoundExceeded(g)
                exps[self._index[g]] += 1
            terms[tuple(exps)] = c
        return self.ctx.from_dict(terms)

    def to_poly(self, f):
        names = {k: g for g, k in self._index.items()}
        out = {}
        for exps, c in f.to_dict().items():
            mono = []
            for k, m in enumerate(exps):
                if m:
                    if k not in names:
                        raise ValueError("dot variable left in a center element")
                    mono += [names[k]] * m
            out[tuple(sorted(mono))] = int(c)
        return out

    # -- bubbles --

    def c(self, i, a):
        if a < 0:
            return self.zero
        if a == 0:
            return self.one
        if a > self.bound:
            raise BoundExceeded((i, a))
        return self._gens[self._index[(i, a)]]

    def cc(self, i, a):
        if a < 0:
            return self.zero
        if a == 0:
            return self.one
        key = (i, a)
        if key not in self._cc:
            out = self.zero
            for b in range(1, a + 1):
                out -= self.c(i, b) * self.cc(i, a - b)
            self._cc[key] = out
        return self._cc[key]

    @lru_cache(maxsize=None)
    def power_sum(self, i, r):
        out = self.zero
        for a in range(r + 1):
            out += (a + 1) * self.c(i, a) * self.cc(i, r - a)
        return out

    # -- slides and closures --

    def _slide_image(self, i, a, j, raising):
        c = self.c
        aij = self.cd.cartan(i, j)
        x = self.x
        if aij == 0:
            return c(i, a)
        v = self.cd.v(i, j)
        if aij == 2 and raising:
            return c(i, a) - 2 * c(i, a - 1) * x + c(i, a - 2) * x**2
        if aij == 2:
            return sum(((a + 1 - f) * c(i, f) * x ** (a - f) for f in range(a + 1)), self.zero)
        if raising:
            return sum(((-v) ** f * c(i, a - f) * x**f for f in range(a + 1)), self.zero)
        return c(i, a) + v * c(i, a - 1) * x

    def substitution(self, j, raising):
        key = (j, raising)
        if key not in self._subs:
            images = [None] * len(self._gens)
            for (i, a), k in self._index.items():
                images[k] = self._slide_image(i, a, j, raising)
            images[-1] = self.x
            self._subs[key] = images
        return self._subs[key]

    def slide_heads(self, i, f, raising):
        """Coefficients of x^0, x^1, ... after sliding f across an i-strand."""
        rest = f.compose(*self.substitution(i, raising))
        heads = []
        while not rest.is_zero():
            head = rest.subs({"x": 0})
            heads.append(head)
            rest = (rest - head) / self.x
        return heads

    def close(self, i, r, heads, lam, raising, convention):
        """Close the loop on precomputed slide heads: returns (weight, poly)."""
        orient_plus, reading = convention
        cd = self.cd
        outer = cd.shift(lam, i, 1 if raising else -1)
        orientation = orient_plus if raising else (CCW if orient_plus == CW else CW)
        label = outer if reading == "outer" else lam
        lam_i = label[i - 1]
        base = -(lam_i - 1) if orientation == CW else lam_i + 1
        closure = self.c if orientation == CW else self.cc
        out = self.zero
        for d, head in enumerate(heads):
            if not head.is_zero():
                bubble = closure(i, base + r + d)
                if not bubble.is_zero():
                    out += head * bubble
        return outer, out

    def encircle(self, i, r, f, lam, raising, convention):
        """Same map as the reference ``_encircle``: returns (weight, poly)."""
        return self.close(i, r, self.slide_heads(i, f, raising), lam, raising, convention)
