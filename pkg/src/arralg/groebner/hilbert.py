"""Hilbert series of R/I from the leading-term ideal, Krull dimension, codimension."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .ideal import Ideal
from .order import DEGREVLEX

Mono = Tuple[int, ...]


def _minimalize(gens: Sequence[Mono]) -> Tuple[Mono, ...]:
    gs = sorted(set(gens), key=sum)
    out: List[Mono] = []
    for g in gs:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _pmul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: List[int], b: List[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


@lru_cache(maxsize=200000)
def _numerator(gens: Tuple[Mono, ...]) -> Tuple[int, ...]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of K[x]/(gens)."""
    if not gens:
        return (1,)
    # base case: pairwise coprime generators
    support = [set(i for i, a in enumerate(g) if a) for g in gens]
    used = set()
    coprime = True
    for s in support:
        if used & s:
            coprime = False
            break
        used |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0] = 1
            f[d] = -1
            out = _pmul(out, f)
        return tuple(out)
    # pivot x_v^e: v occurs in a non-pure generator; e is the least such exponent,
    # so the pivot is not in M and both M + piv and M : piv are strictly larger
    n = len(gens[0])
    mixed = [g for g, s in zip(gens, support) if len(s) > 1]
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    v = max((i for g in mixed for i in range(n) if g[i]), key=lambda i: counts[i])
    e = min(g[v] for g in mixed if g[v])
    piv = tuple(e if i == v else 0 for i in range(n))
    # N(M) = N(M + piv) + t^deg(piv) N(M : piv)
    plus = _minimalize(list(gens) + [piv])
    quo = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens])
    a = list(_numerator(plus))
    b = [0] * e + list(_numerator(quo))
    out = _padd(a, b)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def hilbert_numerator(leading: Sequence[Mono]) -> List[int]:
    if any(sum(g) == 0 for g in leading):
        return [0]
    return list(_numerator(_minimalize([tuple(g) for g in leading])))


def _divide_one_minus_t(N: List[int]) -> Tuple[List[int], int]:
    """Strip factors (1-t) from N; returns (quotient, multiplicity)."""
    k = 0
    N = list(N)
    while len(N) > 1 and sum(N) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in N[:-1]:
            acc += c
            q.append(acc)
        N = q
        k += 1
    return N, k


def series_coefficients(N: Sequence[int], n: int, D: int) -> List[int]:
    """Coefficients 0..D of N(t)/(1-t)^n."""
    vals = list(N[:D + 1]) + [0] * max(0, D + 1 - len(N))
    for _ in range(n):
        acc = 0
        for i in range(D + 1):
            acc += vals[i]
            vals[i] = acc
    return vals


@dataclass
class HilbertData:
    values: List[int]
    dim: int
    D: int
    numerator: List[int]
    n: int

    def value(self, d: int) -> int:
        if d < 0:
            return 0
        if d <= self.D:
            return self.values[d]
        return series_coefficients(self.numerator, self.n, d)[d]


def hilbert_data(I: Ideal, D: Optional[int] = None) -> HilbertData:
    """Hilbert function of R/I up to degree D, with the Krull dimension of R/I."""
    if not I.is_homogeneous():
        raise ValueError("Hilbert data needs a homogeneous ideal")
    n = I.ring.n
    lead = I.leading_exponents(DEGREVLEX) if not I.is_zero() else []
    N = hilbert_numerator(lead)
    if N == [0]:
        dim = -1
    else:
        _, k = _divide_one_minus_t(N)
        dim = n - k
    if D is None:
        top = max((g.degree() for g in I.gens), default=0)
        D = max(len(N) - 1, top + n)
    vals = series_coefficients(N, n, D)
    return HilbertData(vals, dim, D, N, n)


def krull_dim(I: Ideal) -> int:
    """Dimension of R/I; -1 for the unit ideal."""
    return hilbert_data(I, 0).dim


def codim(I: Ideal) -> int:
    if I.is_unit():
        raise ValueError("codimension of the unit ideal is undefined")
    return I.ring.n - krull_dim(I)


def is_m_primary(I: Ideal) -> bool:
    if I.is_unit():
        raise ValueError("the unit ideal is not primary to the irrelevant ideal")
    return krull_dim(I) == 0


def standard_monomial_count(I: Ideal, d: int) -> int:
    """dim_K [R/I]_d by counting degree-d monomials outside the leading-term ideal.

    Independent of the numerator recursion; uses the divisibility kernel.
    """
    from .. import kernels

    if not I.is_homogeneous():
        raise ValueError("Hilbert data needs a homogeneous ideal")
    monos = I.ring.monomials_of_degree(d)
    if not monos:
        return 0
    if I.is_zero():
        return len(monos)
    lead = I.leading_exponents(DEGREVLEX)
    mask = kernels.divisible_mask([list(e) for e in monos], [list(e) for e in lead])
    return int(len(monos) - mask.sum())
