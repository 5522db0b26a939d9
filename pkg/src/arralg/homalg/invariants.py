"""Regularity, satiety, depth, projective dimension and syzygy initial degree.

Conventions (all for a homogeneous ideal I of R = K[x_1..x_n]):

=================  ==========================================================
quantity           definition used here
=================  ==========================================================
Betti table        resolution of I; step 0 holds the minimal generators
reg(I)             max(j - k) over that table; reg(R/I) = reg(I) - 1
pd(R/I)            length of the resolution of I plus one
depth(R/I)         n - pd(R/I)
sat(I)             least d0 with [I]_d = [I^sat]_d for all d >= d0; 0 if saturated
indeg Syz(I)       least degree of a nonzero syzygy coefficient vector
=================  ==========================================================

The unit ideal has regularity 0 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from ..groebner.hilbert import codim, hilbert_numerator
from ..groebner.ideal import Ideal, saturate
from ..groebner.order import DEGREVLEX
from .resolution import BettiTable, Resolution, minimal_free_resolution, syzygy_module


def _resolution(I: Ideal) -> Resolution:
    cache = getattr(I, "_resolution", None)
    if cache is None:
        cache = minimal_free_resolution(I)
        I._resolution = cache
    return cache


def indeg_syz(I: Ideal) -> Optional[int]:
    """Initial degree of the syzygies of the minimal generators of I.

    The degree of a syzygy is counted on its coefficients, so for generators of
    degree d a syzygy of internal degree j has degree j - d (mixed generator
    degrees use the smallest coefficient degree).  Returns None when I is
    principal.
    """
    res = _resolution(I)
    if len(res.modules) < 2:
        return None
    gdeg = res.modules[0].degrees
    best = None
    for v in res.maps[1]:
        for c, p in enumerate(v):
            if p:
                d = p.degree()
                best = d if best is None else min(best, d)
    return best


def regularity(I: Ideal) -> int:
    if I.is_unit():
        return 0
    return _resolution(I).betti.regularity()


def _hilbert_numerator(I: Ideal):
    return hilbert_numerator(I.leading_exponents(DEGREVLEX)) if not I.is_zero() else [1]


def satiety_from(I: Ideal, Isat: Ideal) -> int:
    """Last degree where I and I^sat differ, plus one (0 if they never differ)."""
    n = I.ring.n
    N1 = _hilbert_numerator(I)
    N2 = _hilbert_numerator(Isat)
    L = max(len(N1), len(N2))
    diff = [(N1[i] if i < len(N1) else 0) - (N2[i] if i < len(N2) else 0) for i in range(L)]
    # diff = (1-t)^n * P(t) with P the difference of Hilbert functions
    P = list(diff)
    for _ in range(n):
        acc = 0
        for i in range(len(P)):
            acc += P[i]
            P[i] = acc
    last = max((i for i, v in enumerate(P) if v), default=None)
    return 0 if last is None else last + 1


def satiety(I: Ideal, Isat: Optional[Ideal] = None) -> int:
    if not I.is_homogeneous():
        raise ValueError("satiety needs a homogeneous ideal")
    if Isat is None:
        Isat, _ = saturate(I, I.ring.irrelevant_ideal())
    return satiety_from(I, Isat)


def depth_and_pd(I: Ideal) -> Tuple[int, int]:
    """(depth R/I, pd R/I)."""
    if I.is_unit():
        raise ValueError("depth of the zero module is not defined here")
    res = _resolution(I)
    pd = len(res.modules)
    return I.ring.n - pd, pd


def is_perfect_codim2(I: Ideal) -> bool:
    c = codim(I)
    if c != 2:
        raise ValueError(f"ideal has codimension {c}, not 2")
    return depth_and_pd(I)[1] == 2


@dataclass
class HomologicalSummary:
    regularity: int
    satiety: int
    projective_dimension: int
    depth: int
    indeg_syz: Optional[int]
    betti: BettiTable

    def to_json(self):
        return {
            "regularity": self.regularity,
            "satiety": self.satiety,
            "projective_dimension": self.projective_dimension,
            "depth": self.depth,
            "indeg_syz": self.indeg_syz,
            "betti": self.betti.to_json(),
        }


def homological_summary(I: Ideal, Isat: Optional[Ideal] = None) -> HomologicalSummary:
    depth, pd = depth_and_pd(I)
    return HomologicalSummary(regularity(I), satiety(I, Isat), pd, depth, indeg_syz(I), _resolution(I).betti)
