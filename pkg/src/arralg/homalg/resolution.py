"""Syzygies and minimal graded free resolutions.

Each step runs the engine with lift tracking on the current generators (vectors
in a graded free module).  Input generators that reduce to zero at their own
degree are redundant, the rest form a minimal generating set.  Syzygies of the
minimal generators come from the S-pairs of the reduced basis (Schreyer) plus
the relations expressing each generator through the basis; they feed the next
step, where they are minimalized in turn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..groebner.engine import Engine
from ..groebner.ideal import Ideal, poly_to_terms
from ..groebner.order import DEGREVLEX, TermEncoder
from ..polycore.field import FieldSpec
from ..polycore.polynomial import Polynomial, PolynomialRing

Vector = List[Polynomial]


@dataclass
class GradedFreeModule:
    """Free module with basis elements in the given degrees."""

    degrees: List[int]

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __repr__(self):
        parts = {}
        for d in self.degrees:
            parts[d] = parts.get(d, 0) + 1
        return " + ".join(f"R(-{d})^{k}" if k > 1 else f"R(-{d})" for d, k in sorted(parts.items())) or "0"


class BettiTable(dict):
    """Map (k, j) -> beta_{k,j}; only nonzero entries are stored."""

    def add(self, k: int, j: int, v: int = 1):
        if v:
            self[(k, j)] = self.get((k, j), 0) + v

    def to_json(self) -> Dict[str, int]:
        return {f"{k},{j}": v for (k, j), v in sorted(self.items())}

    @classmethod
    def from_json(cls, obj: Dict[str, int]) -> "BettiTable":
        t = cls()
        for key, v in obj.items():
            k, j = (int(x) for x in key.split(","))
            t.add(k, j, int(v))
        return t

    def steps(self) -> List[int]:
        return sorted({k for k, _ in self})

    def length(self) -> int:
        return max((k for k, _ in self), default=-1)

    def degrees_at(self, k: int) -> Dict[int, int]:
        return {j: v for (kk, j), v in sorted(self.items()) if kk == k}

    def regularity(self) -> int:
        return max((j - k for k, j in self), default=0)

    def shifted_for_quotient(self) -> "BettiTable":
        """Table of R/I from the table of I."""
        t = BettiTable()
        t.add(0, 0, 1)
        for (k, j), v in self.items():
            t.add(k + 1, j, v)
        return t

    def hilbert_numerator(self) -> List[int]:
        """Numerator of the Hilbert series of the resolved module: sum (-1)^k beta_{k,j} t^j."""
        top = max((j for _, j in self), default=0)
        N = [0] * (top + 1)
        for (k, j), v in self.items():
            N[j] += (-1) ** k * v
        return N

    def pretty(self) -> str:
        if not self:
            return "(empty)"
        ks = sorted({k for k, _ in self})
        rows = sorted({j - k for k, j in self})
        w = max(4, max(len(str(v)) for v in self.values()) + 1)
        lines = ["     " + "".join(str(k).rjust(w) for k in ks)]
        for r in rows:
            cells = "".join((str(self.get((k, k + r), "")) or ".").rjust(w) for k in ks)
            lines.append(f"{r:>4}:" + cells)
        return "\n".join(lines)


def _vec_terms(vec: Sequence[Polynomial], enc: TermEncoder) -> list:
    out = []
    for c, p in enumerate(vec):
        if p:
            out.extend(poly_to_terms(p, enc, comp=c))
    return out


def _terms_vec(terms, enc: TermEncoder, ring: PolynomialRing, rank: int) -> Vector:
    ds = [dict() for _ in range(rank)]
    for T, c in terms:
        e, comp = enc.decode(T)
        ds[comp][e] = c
    return [Polynomial(ring, d) for d in ds]


@dataclass
class SyzygyStep:
    """Result of one minimalize-and-syzygy pass."""

    minimal: List[int]              # indices of the input vectors kept as minimal generators
    degrees: List[int]              # their degrees
    syzygies: List[Vector]          # relations among the minimal generators (not minimal)
    syz_degrees: List[int]


def _vector_degree(vec: Sequence[Polynomial], shifts: Sequence[int]) -> int:
    for c, p in enumerate(vec):
        if p:
            return p.degree() + shifts[c]
    raise ValueError("zero vector has no degree")


def syzygy_step(vectors: Sequence[Vector], shifts: Sequence[int], ring: PolynomialRing) -> SyzygyStep:
    """Minimal generators of the submodule spanned by ``vectors`` and the syzygies among them."""
    rank = len(shifts)
    enc = TermEncoder(ring.n, DEGREVLEX, None, rank, shifts)
    F = ring.field
    eng = Engine(enc, F, track=True)
    for i, v in enumerate(vectors):
        eng.add_input(_vec_terms(v, enc), i)
    eng.run()
    kept = sorted(eng.kept)
    basis = eng.interreduce()
    pos = {idx: k for k, idx in enumerate(kept)}
    degrees = [_vector_degree(vectors[i], shifts) for i in kept]
    EM = enc.EMASK
    CM = enc.CMASK

    def lift_to_vec(lift: dict) -> Optional[Vector]:
        ds = [dict() for _ in kept]
        for key, c in lift.items():
            idx = key & CM
            e = enc.exps(key & EM & ~CM)
            ds[pos[idx]][e] = c
        vec = [Polynomial(ring, d) for d in ds]
        return vec if any(vec) else None

    syz: List[Vector] = []
    # Schreyer pairs of the reduced basis, with the lcm-based redundancy rule
    lts = [g.lt for g in basis]
    comps = [enc.comp(t) for t in lts]
    G = enc.GUARD
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if comps[i] != comps[j]:
                continue
            L = enc.lcm(lts[i], lts[j])
            LE = L & EM
            skip = False
            for k in range(len(basis)):
                if k == i or k == j or comps[k] != comps[i]:
                    continue
                if ((LE - (lts[k] & EM)) & G) == 0:
                    if enc.lcm(lts[i], lts[k]) != L and enc.lcm(lts[j], lts[k]) != L:
                        skip = True
                        break
            if skip:
                continue
            terms, lift = eng._spoly(i, j, L)
            rem, lift = eng.reduce(terms, lift)
            if rem:
                raise RuntimeError("S-polynomial of a Gröbner basis did not reduce to zero")
            v = lift_to_vec(lift)
            if v is not None:
                syz.append(v)
    # each kept generator written through the basis
    for idx in kept:
        terms = _vec_terms(vectors[idx], enc)
        rem, lift = eng.reduce(terms, {idx: F.one})
        if rem:
            raise RuntimeError("generator does not reduce to zero modulo its own basis")
        v = lift_to_vec(lift)
        if v is not None:
            syz.append(v)
    syz_deg = [_vector_degree(v, degrees) for v in syz]
    order = sorted(range(len(syz)), key=lambda k: syz_deg[k])
    return SyzygyStep(kept, degrees, [syz[k] for k in order], [syz_deg[k] for k in order])


@dataclass
class Resolution:
    """Minimal graded free resolution of an ideal I (step 0 = minimal generators of I)."""

    ring: PolynomialRing
    modules: List[GradedFreeModule]
    maps: List[List[Vector]]        # maps[k][b] = image of basis vector b of modules[k]
    betti: BettiTable = field(default_factory=BettiTable)

    def quotient_betti(self) -> BettiTable:
        return self.betti.shifted_for_quotient()

    @property
    def pd_quotient(self) -> int:
        """Projective dimension of R/I."""
        return len(self.modules)

    def check_complex(self) -> bool:
        """Consecutive maps compose to zero."""
        R = self.ring
        for k in range(1, len(self.maps)):
            prev = self.maps[k - 1]
            for v in self.maps[k]:
                acc = None
                for c, p in enumerate(v):
                    if not p:
                        continue
                    img = [p * q for q in prev[c]]
                    acc = img if acc is None else [a + b for a, b in zip(acc, img)]
                if acc is not None and any(acc):
                    return False
        return True


def minimal_free_resolution(I: Ideal, max_steps: Optional[int] = None) -> Resolution:
    if not I.is_homogeneous():
        raise ValueError("resolutions are computed for homogeneous ideals")
    R = I.ring
    if I.is_zero():
        return Resolution(R, [], [], BettiTable())
    vectors: List[Vector] = [[g] for g in I.gens]
    shifts = [0]
    modules: List[GradedFreeModule] = []
    maps: List[List[Vector]] = []
    betti = BettiTable()
    k = 0
    limit = max_steps if max_steps is not None else R.n + 1
    while vectors:
        if k > limit:
            raise RuntimeError("resolution longer than the number of variables")
        step = syzygy_step(vectors, shifts, R)
        mods = GradedFreeModule(step.degrees)
        modules.append(mods)
        maps.append([vectors[i] for i in step.minimal])
        for d in step.degrees:
            betti.add(k, d)
        vectors = step.syzygies
        shifts = step.degrees
        k += 1
    return Resolution(R, modules, maps, betti)


def syzygy_module(gens: Sequence[Polynomial]) -> Tuple[List[Vector], List[int]]:
    """Minimal generators of the syzygies of ``gens`` (as given), with their degrees.

    The degree of a syzygy v is deg(v_i) + deg(gens[i]) for any nonzero entry,
    the internal degree of the relation.
    """
    gens = list(gens)
    if not gens or any(not g for g in gens):
        raise ValueError("syzygy_module needs nonzero generators")
    R = gens[0].ring
    degs = [g.degree() for g in gens]
    step0 = _syzygies_all(gens, R)
    if not step0:
        return [], []
    step1 = syzygy_step(step0, degs, R)
    return [step0[i] for i in step1.minimal], step1.degrees


def _syzygies_all(gens: Sequence[Polynomial], R: PolynomialRing) -> List[Vector]:
    """Generators of the syzygies of all of ``gens`` (redundant ones included)."""
    enc = TermEncoder(R.n, DEGREVLEX)
    F = R.field
    eng = Engine(enc, F, track=True)
    for i, g in enumerate(gens):
        eng.add_input(poly_to_terms(g, enc), i)
    eng.run()
    basis = eng.interreduce()
    n = len(gens)

    def lift_vec(lift):
        ds = [dict() for _ in range(n)]
        for key, c in lift.items():
            idx = key & enc.CMASK
            ds[idx][enc.exps(key & enc.EMASK & ~enc.CMASK)] = c
        v = [Polynomial(R, d) for d in ds]
        return v if any(v) else None

    out = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            L = enc.lcm(basis[i].lt, basis[j].lt)
            terms, lift = eng._spoly(i, j, L)
            rem, lift = eng.reduce(terms, lift)
            v = lift_vec(lift)
            if v is not None:
                out.append(v)
    for i, g in enumerate(gens):
        rem, lift = eng.reduce(poly_to_terms(g, enc), {i: F.one})
        v = lift_vec(lift)
        if v is not None:
            out.append(v)
    return out
