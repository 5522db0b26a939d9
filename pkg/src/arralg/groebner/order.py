"""Monomial orders and the packed-integer term encoding used by the engine.

A term (monomial times basis vector e_c) is packed into one Python int::

    T = K * 2**EB + E

``E`` holds the exponents in 16-bit fields (bit 15 of each field is a guard
bit) above a 16-bit component field; ``K`` is an order key that is linear in
the exponents.  Consequently

* comparing terms in the order is comparing ints,
* multiplying a term by a monomial is adding ints,
* ``a`` divides ``b`` iff ``(E_b - E_a) & GUARD == 0``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

FIELD_BITS = 16
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1
DIGIT_BITS = 24
DIGIT_HALF = 1 << (DIGIT_BITS - 1)


class MonomialOrder:
    """Degrevlex, lex, or a two-block elimination order.

    ``Block(k)`` compares the first ``k`` variables by degrevlex first and the
    remaining ones by (weighted) degrevlex only on ties, so it eliminates the
    leading block.
    """

    __slots__ = ("kind", "k")

    def __init__(self, kind: str = "degrevlex", k: int = 0):
        kind = kind.lower()
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and k < 1:
            raise ValueError("block order needs k >= 1")
        self.kind = kind
        self.k = k if kind == "block" else 0

    @classmethod
    def degrevlex(cls):
        return cls("degrevlex")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def block(cls, k: int):
        return cls("block", k)

    def rows(self, n: int, weights: Sequence[int]) -> List[List[int]]:
        """Weight matrix; the order compares the row values lexicographically."""
        def revlex(lo, hi):
            out = []
            for i in range(hi - 1, lo - 1, -1):
                r = [0] * n
                r[i] = -1
                out.append(r)
            return out

        if self.kind == "degrevlex":
            return [list(weights)] + revlex(0, n)
        if self.kind == "lex":
            out = []
            for i in range(n):
                r = [0] * n
                r[i] = 1
                out.append(r)
            return out
        k = self.k
        if k >= n:
            raise ValueError("block size must be smaller than the number of variables")
        first = [1 if i < k else 0 for i in range(n)]
        second = [weights[i] if i >= k else 0 for i in range(n)]
        return [first] + revlex(0, k) + [second] + revlex(k, n)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"Block({self.k})" if self.kind == "block" else self.kind.capitalize()


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class TermEncoder:
    """Packs (exponents, component) pairs for a fixed order, grading and rank.

    ``weights`` is the grading used for sugar and homogeneity (default all
    ones).  ``shifts[c]`` is the degree of basis vector e_c.  Components are
    compared after the monomial (term over position), smaller index first.
    """

    def __init__(self, n: int, order: MonomialOrder = DEGREVLEX, weights: Optional[Sequence[int]] = None,
                 rank: int = 1, shifts: Optional[Sequence[int]] = None):
        self.n = n
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * n
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise ValueError("need one shift per component")
        if rank >= 1 << FIELD_BITS:
            raise ValueError("too many components")
        self.EB = FIELD_BITS * (n + 1)
        self.EMASK = (1 << self.EB) - 1
        guard = 0
        for i in range(n):
            guard |= 1 << (FIELD_BITS * (i + 1) + FIELD_BITS - 1)
        self.GUARD = guard | ((1 << FIELD_BITS) - 1)
        self.CMASK = (1 << FIELD_BITS) - 1
        self.rows = order.rows(n, self.weights)
        # grading row for the shift (first row of degrevlex, otherwise none)
        self._shift_row = 0 if order.kind == "degrevlex" else None
        nd = len(self.rows) + 1
        self.ndigits = nd
        # K contribution of each variable and of each component
        self.var_K = []
        for i in range(n):
            K = 0
            for r in self.rows:
                K = (K << DIGIT_BITS) + r[i]
            K <<= DIGIT_BITS
            self.var_K.append(K)
        self.comp_K = []
        for c in range(rank):
            K = 0
            for j in range(len(self.rows)):
                v = self.shifts[c] if j == self._shift_row else 0
                K = (K << DIGIT_BITS) + v
            K = (K << DIGIT_BITS) - c
            self.comp_K.append(K)

    def encode(self, exps: Sequence[int], comp: int = 0) -> int:
        K = self.comp_K[comp]
        E = comp
        for i, e in enumerate(exps):
            if e:
                if e > MAX_EXP:
                    raise OverflowError("exponent too large for the packed encoding")
                K += e * self.var_K[i]
                E |= e << (FIELD_BITS * (i + 1))
        return (K << self.EB) + E

    def mono(self, exps: Sequence[int]) -> int:
        """Encoding of a pure monomial (no component, no shift)."""
        K = 0
        E = 0
        for i, e in enumerate(exps):
            if e:
                K += e * self.var_K[i]
                E |= e << (FIELD_BITS * (i + 1))
        return (K << self.EB) + E

    def exps(self, T: int) -> Tuple[int, ...]:
        E = T & self.EMASK
        m = (1 << FIELD_BITS) - 1
        return tuple((E >> (FIELD_BITS * (i + 1))) & m for i in range(self.n))

    def comp(self, T: int) -> int:
        return T & self.CMASK

    def decode(self, T: int) -> Tuple[Tuple[int, ...], int]:
        return self.exps(T), T & self.CMASK

    def wdeg(self, T: int) -> int:
        e = self.exps(T)
        return sum(w * x for w, x in zip(self.weights, e)) + self.shifts[T & self.CMASK]

    def mono_wdeg(self, exps: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, exps))

    def divides(self, Ta: int, Tb: int) -> bool:
        return ((Tb & self.EMASK) - (Ta & self.EMASK)) & self.GUARD == 0

    def lcm(self, Ta: int, Tb: int) -> int:
        ea, c = self.decode(Ta)
        eb = self.exps(Tb)
        return self.encode([max(x, y) for x, y in zip(ea, eb)], c)

    def coprime(self, Ta: int, Tb: int) -> bool:
        ea = self.exps(Ta)
        eb = self.exps(Tb)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))
