"""Ideals of a polynomial ring and the usual ideal-theoretic operations."""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Sequence, Tuple

from ..polycore.polynomial import Polynomial, PolynomialRing, product
from .engine import Engine, groebner_terms
from .order import DEGREVLEX, MonomialOrder, TermEncoder


def poly_to_terms(f: Polynomial, enc: TermEncoder, comp: int = 0, offset: int = 0):
    """Pack ``f``; its variables go to positions ``offset..offset+n-1`` of ``enc``."""
    if offset == 0 and enc.n == f.ring.n:
        return [(enc.encode(e, comp), c) for e, c in f._d.items()]
    pad_l = (0,) * offset
    pad_r = (0,) * (enc.n - offset - f.ring.n)
    return [(enc.encode(pad_l + e + pad_r, comp), c) for e, c in f._d.items()]


def terms_to_poly(terms, enc: TermEncoder, ring: PolynomialRing, offset: int = 0) -> Polynomial:
    d = {}
    n = ring.n
    for T, c in terms:
        e = enc.exps(T)
        if any(e[:offset]) or any(e[offset + n:]):
            raise ValueError("term involves variables outside the target ring")
        d[e[offset:offset + n]] = c
    return Polynomial(ring, d)


class Ideal:
    """Ideal given by generators, with Gröbner bases cached per monomial order."""

    def __init__(self, ring: PolynomialRing, gens: Sequence[Polynomial] = ()):
        gl = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            if g:
                gl.append(g)
        self.ring = ring
        self.gens: Tuple[Polynomial, ...] = tuple(gl)
        self._gb: Dict[tuple, Tuple[Engine, List[Polynomial]]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(g.format() for g in self.gens)})"

    def __len__(self):
        return len(self.gens)

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def irrelevant(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, ring.gens())

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def degrees(self) -> List[int]:
        return [g.degree() for g in self.gens]

    # -- Gröbner bases -------------------------------------------------------

    def _engine(self, order: MonomialOrder = DEGREVLEX, weights=None) -> Tuple[Engine, List[Polynomial]]:
        key = (order, tuple(weights) if weights is not None else None)
        with self._lock:
            hit = self._gb.get(key)
            if hit is not None:
                return hit
            enc = TermEncoder(self.ring.n, order, weights)
            eng = groebner_terms([poly_to_terms(g, enc) for g in self.gens], enc, self.ring.field)
            basis = [terms_to_poly(g.terms, enc, self.ring) for g in eng.basis]
            self._gb[key] = (eng, basis)
            return eng, basis

    def groebner(self, order: MonomialOrder = DEGREVLEX, weights=None) -> List[Polynomial]:
        """Reduced Gröbner basis, monic, sorted by increasing leading term."""
        return list(self._engine(order, weights)[1])

    def leading_exponents(self, order: MonomialOrder = DEGREVLEX) -> List[Tuple[int, ...]]:
        eng, _ = self._engine(order)
        return [eng.enc.exps(g.lt) for g in eng.basis]

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        eng, _ = self._engine(order)
        rem, _ = eng.reduce(poly_to_terms(f, eng.enc))
        return terms_to_poly(rem, eng.enc, self.ring)

    def contains(self, f: Polynomial) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring.constant(f)
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def minimal_generators(self) -> List[Polynomial]:
        """A minimal homogeneous generating set (input generators that are not redundant)."""
        if not self.is_homogeneous():
            raise ValueError("minimal generators are only defined for homogeneous ideals")
        enc = TermEncoder(self.ring.n, DEGREVLEX)
        eng = Engine(enc, self.ring.field)
        for i, g in enumerate(self.gens):
            eng.add_input(poly_to_terms(g, enc), i)
        eng.run()
        return [self.gens[i] for i in sorted(eng.kept)]

    def truncated_basis(self, maxdeg: int) -> List[Polynomial]:
        """Degree-truncated Gröbner basis (homogeneous ideals only)."""
        if not self.is_homogeneous():
            raise ValueError("degree truncation needs homogeneous generators")
        enc = TermEncoder(self.ring.n, DEGREVLEX)
        eng = groebner_terms([poly_to_terms(g, enc) for g in self.gens], enc, self.ring.field, maxdeg=maxdeg)
        return [terms_to_poly(g.terms, enc, self.ring) for g in eng.basis]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_combine(self, other, "sum")

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_combine(self, other, "product")

    def __pow__(self, k: int) -> "Ideal":
        return ideal_combine(self, None, "power", k)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = object.__hash__

    def dump(self, order: MonomialOrder = DEGREVLEX) -> str:
        """Reduced basis in canonical text form, one element per line."""
        return "\n".join(g.format() for g in self.groebner(order))


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> List[Polynomial]:
    return I.groebner(order)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def _dedupe(polys: Sequence[Polynomial]) -> List[Polynomial]:
    seen = set()
    out = []
    for g in polys:
        if g and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def ideal_combine(I: Ideal, J: Optional[Ideal], op: str, k: int = 1) -> Ideal:
    """Sum, product, or k-th power at the level of generators."""
    if op == "sum":
        _same_ring(I, J)
        return Ideal(I.ring, _dedupe(list(I.gens) + list(J.gens)))
    if op == "product":
        _same_ring(I, J)
        return Ideal(I.ring, _dedupe([a * b for a in I.gens for b in J.gens]))
    if op == "power":
        if k < 1:
            raise ValueError("ideal powers need k >= 1")
        out = I
        for _ in range(k - 1):
            out = Ideal(I.ring, _dedupe([a * b for a in out.gens for b in I.gens]))
        return out
    raise ValueError(f"unknown operation {op!r}")


def eliminate(I: Ideal, k: int, weights: Optional[Sequence[int]] = None) -> Ideal:
    """I intersected with K[x_{k+1}..x_n], presented in a ring with n-k variables."""
    n = I.ring.n
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n for elimination")
    basis = I.groebner(MonomialOrder.block(k), weights)
    sub = PolynomialRing(I.ring.field, n - k, I.ring.names[k:])
    kept = []
    for g in basis:
        if all(not any(e[:k]) for e in g._d):
            kept.append(Polynomial(sub, {e[k:]: c for e, c in g._d.items()}))
    return Ideal(sub, kept)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J and elimination of t."""
    _same_ring(I, J)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    n = R.n
    enc = TermEncoder(n + 1, MonomialOrder.block(1), (0,) + (1,) * n)
    t = enc.encode((1,) + (0,) * n)
    inputs = []
    for f in I.gens:
        inputs.append([(T + t, c) for T, c in poly_to_terms(f, enc, offset=1)])
    F = R.field
    for g in J.gens:
        tg = poly_to_terms(g, enc, offset=1)
        inputs.append(tg + [(T + t, F.neg(c)) for T, c in tg])
    eng = groebner_terms(inputs, enc, F)
    out = []
    for g in eng.basis:
        if all(enc.exps(T)[0] == 0 for T, _ in g.terms):
            out.append(terms_to_poly(g.terms, enc, R, offset=1))
    return Ideal(R, out)


def _colon_variable(I: Ideal, i: int) -> Ideal:
    """I : x_i for homogeneous I, from a degrevlex basis with x_i ordered last."""
    R = I.ring
    n = R.n
    perm = [j for j in range(n) if j != i] + [i]  # new position -> old variable
    inv = [0] * n
    for new, old in enumerate(perm):
        inv[old] = new
    enc = TermEncoder(n, DEGREVLEX)
    inputs = []
    for g in I.gens:
        inputs.append([(enc.encode(tuple(e[perm[j]] for j in range(n))), c) for e, c in g._d.items()])
    eng = groebner_terms(inputs, enc, R.field)
    out = []
    for g in eng.basis:
        exps = [enc.exps(T) for T, _ in g.terms]
        shift = 1 if all(e[n - 1] >= 1 for e in exps) else 0
        d = {}
        for e, (T, c) in zip(exps, g.terms):
            e2 = list(e)
            e2[n - 1] -= shift
            d[tuple(e2[inv[j]] for j in range(n))] = c
        out.append(Polynomial(R, d))
    return Ideal(R, out)


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g."""
    R = I.ring
    if not g:
        raise ValueError("colon by the zero element")
    if g.is_constant():
        return Ideal(R, I.gens)
    if I.is_homogeneous() and len(g) == 1:
        (e, _), = g.terms()
        if sum(e) == 1:
            return _colon_variable(I, e.index(1))
    inter = intersect(I, Ideal(R, [g]))
    return Ideal(R, [h / g for h in inter.gens])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of the colons by the generators of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    out = None
    for g in J.gens:
        Q = colon_element(I, g)
        if Q.is_unit():
            continue
        out = Q if out is None else intersect(out, Q)
    return out if out is not None else Ideal.unit(I.ring)


def saturate(I: Ideal, J: Ideal, max_steps: int = 1000) -> Tuple[Ideal, int]:
    """Iterate I <- I : J until it stops growing; return (I : J^inf, number of strict steps)."""
    cur = I
    steps = 0
    while steps < max_steps:
        nxt = colon(cur, J)
        if cur.contains_ideal(nxt):
            return cur, steps
        cur = nxt
        steps += 1
    raise RuntimeError("saturation did not stabilize")


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder = DEGREVLEX) -> bool:
    _same_ring(I, J)
    return I.groebner(order) == J.groebner(order)


def m_power(ring: PolynomialRing, d: int) -> Ideal:
    """The d-th power of the irrelevant ideal, generated by all monomials of degree d."""
    return Ideal(ring, [ring.monomial(e) for e in ring.monomials_of_degree(d)])


__all__ = [
    "Ideal", "groebner_basis", "normal_form", "ideal_combine", "eliminate", "intersect",
    "colon", "colon_element", "saturate", "ideal_equal", "m_power", "poly_to_terms", "terms_to_poly",
    "product",
]
