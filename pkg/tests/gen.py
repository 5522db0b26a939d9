"""Seeded random inputs shared by the property and acceptance tests."""

from __future__ import annotations

import random

from arralg.groebner import Ideal
from arralg.polycore import Polynomial, PolynomialRing


def random_form(R: PolynomialRing, d: int, rng: random.Random, terms: int = 4, coeff: int = 5) -> Polynomial:
    mons = R.monomials_of_degree(d)
    while True:
        p = R.zero()
        for e in rng.sample(mons, min(terms, len(mons))):
            c = rng.randint(-coeff, coeff)
            if c:
                p = p + R.monomial(e, c)
        if p:
            return p


def random_ideal(R: PolynomialRing, rng: random.Random, ngens=(1, 4), degs=(1, 3), terms: int = 3) -> Ideal:
    k = rng.randint(*ngens)
    return Ideal(R, [random_form(R, rng.randint(*degs), rng, terms) for _ in range(k)])


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial for degrevlex (the order of Polynomial.terms)."""
    (ef, cf), (eg, cg) = f.leading_term(), g.leading_term()
    L = tuple(max(a, b) for a, b in zip(ef, eg))
    F = f.ring.field
    uf = tuple(a - b for a, b in zip(L, ef))
    ug = tuple(a - b for a, b in zip(L, eg))
    return f.mul_monomial(uf, F.inv(cf)) - g.mul_monomial(ug, F.inv(cg))
