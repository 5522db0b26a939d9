"""Buchberger's algorithm on packed terms (see :mod:`arralg.groebner.order`).

Elements are lists of ``(T, c)`` pairs sorted by decreasing ``T``.  The engine
works for submodules of free modules (``rank > 1``) as well as ideals, can
track how each basis element is built from the input generators ("lifts"),
and can stop after a given degree for homogeneous input.

Pairs are handled with the sugar strategy; at equal sugar S-pairs come before
new input generators, so for homogeneous input an input generator reduces to
zero exactly when it is redundant given the generators processed before it.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Optional, Sequence, Tuple

from ..polycore.field import FieldSpec
from .order import TermEncoder

Terms = List[Tuple[int, object]]


class GBElement:
    __slots__ = ("terms", "lt", "ltE", "sugar", "lift", "active", "idx")

    def __init__(self, terms: Terms, sugar: int, lift, idx: int):
        self.terms = terms
        self.lt = terms[0][0]
        self.ltE = None
        self.sugar = sugar
        self.lift = lift
        self.active = True
        self.idx = idx


def _norm(terms: Terms) -> Terms:
    return sorted(terms, key=lambda t: t[0], reverse=True)


class Engine:
    """State of one Gröbner basis computation."""

    def __init__(self, enc: TermEncoder, field: FieldSpec, track: bool = False):
        self.enc = enc
        self.F = field
        self.p = field.p
        self.track = track
        self.basis: List[GBElement] = []
        self.reducers: List[Tuple[int, GBElement]] = []
        self._cache: Dict[int, Optional[GBElement]] = {}
        self.pairs: Dict[int, Tuple[int, int, int]] = {}
        self.queue: list = []
        self._seq = 0
        self.kept: List[int] = []
        self.redundant: List[int] = []
        self.truncated = False
        self.reductions = 0

    # -- reduction -----------------------------------------------------------

    def find_reducer(self, T: int) -> Optional[GBElement]:
        hit = self._cache.get(T, False)
        if hit is not False:
            return hit
        E = T & self.enc.EMASK
        G = self.enc.GUARD
        found = None
        for gE, g in self.reducers:
            if ((E - gE) & G) == 0:
                found = g
                break
        self._cache[T] = found
        return found

    def reduce(self, terms: Terms, lift: Optional[dict] = None, skip: Optional[GBElement] = None):
        """Full reduction; returns (remainder terms, updated lift)."""
        p = self.p
        EMASK = self.enc.EMASK
        acc: Dict[int, object] = {}
        heap = []
        for T, c in terms:
            acc[T] = c
            heap.append(-T)
        heapq.heapify(heap)
        rem: Terms = []
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            T = -pop(heap)
            c = acc.pop(T, None)
            if c is None:
                continue
            g = self.find_reducer(T) if skip is None else self._find_reducer_skip(T, skip)
            if g is None:
                rem.append((T, c))
                continue
            self.reductions += 1
            q = T - g.lt
            it = iter(g.terms)
            next(it)
            if p:
                for Tg, cg in it:
                    Tn = Tg + q
                    v = acc.get(Tn)
                    if v is None:
                        acc[Tn] = (-c * cg) % p
                        push(heap, -Tn)
                    else:
                        v = (v - c * cg) % p
                        if v:
                            acc[Tn] = v
                        else:
                            del acc[Tn]
            else:
                for Tg, cg in it:
                    Tn = Tg + q
                    v = acc.get(Tn)
                    if v is None:
                        acc[Tn] = -c * cg
                        push(heap, -Tn)
                    else:
                        v = v - c * cg
                        if v:
                            acc[Tn] = v
                        else:
                            del acc[Tn]
            if lift is not None:
                qE = q & EMASK
                self._lift_axpy(lift, g.lift, c, qE, negate=True)
        return rem, lift

    def _find_reducer_skip(self, T: int, skip: GBElement) -> Optional[GBElement]:
        E = T & self.enc.EMASK
        G = self.enc.GUARD
        for gE, g in self.reducers:
            if g is not skip and ((E - gE) & G) == 0:
                return g
        return None

    def _lift_axpy(self, acc: dict, src: dict, c, qE: int, negate: bool = False):
        """acc += (-1 if negate) * c * x^q * src, in place."""
        p = self.p
        for k, v in src.items():
            kk = k + qE
            t = c * v
            if negate:
                t = -t
            w = acc.get(kk)
            w = t if w is None else w + t
            if p:
                w %= p
            if w:
                acc[kk] = w
            else:
                acc.pop(kk, None)

    # -- basis growth --------------------------------------------------------

    def _make_monic(self, terms: Terms, lift):
        c0 = terms[0][1]
        if c0 == self.F.one:
            return terms, lift
        inv = self.F.inv(c0)
        p = self.p
        if p:
            terms = [(T, c * inv % p) for T, c in terms]
            if lift is not None:
                lift = {k: v * inv % p for k, v in lift.items()}
        else:
            terms = [(T, c * inv) for T, c in terms]
            if lift is not None:
                lift = {k: v * inv for k, v in lift.items()}
        return terms, lift

    def _push(self, sugar: int, kind: int, key: int, payload):
        self._seq += 1
        heapq.heappush(self.queue, (sugar, kind, key, self._seq, payload))

    def add_input(self, terms: Terms, idx: int):
        if not terms:
            self.redundant.append(idx)
            return
        terms = _norm(terms)
        sugar = max(self.enc.wdeg(T) for T, _ in terms)
        self._push(sugar, 1, terms[0][0], ("gen", idx, terms))

    def _insert(self, terms: Terms, sugar: int, lift):
        enc = self.enc
        terms, lift = self._make_monic(terms, lift)
        h = GBElement(terms, sugar, lift, len(self.basis))
        h.ltE = h.lt & enc.EMASK
        tE = h.ltE
        G = enc.GUARD
        # drop old pairs (Gebauer-Moller B_k)
        dead = []
        for pid, (i, j, L) in self.pairs.items():
            if ((L & enc.EMASK) - tE) & G == 0:
                Li = enc.lcm(self.basis[i].lt, h.lt)
                Lj = enc.lcm(self.basis[j].lt, h.lt)
                if Li != L and Lj != L:
                    dead.append(pid)
        for pid in dead:
            del self.pairs[pid]
        # candidate new pairs
        comp = enc.comp(h.lt)
        cands = []
        for g in self.basis:
            if not g.active or enc.comp(g.lt) != comp:
                continue
            L = enc.lcm(g.lt, h.lt)
            cop = enc.rank == 1 and enc.coprime(g.lt, h.lt)
            cands.append((L, cop, g.idx))
        # chain criterion: drop pairs whose lcm is properly divisible by another
        keep = []
        Ls = [c[0] for c in cands]
        for L, cop, gi in cands:
            LE = L & enc.EMASK
            bad = False
            for L2 in Ls:
                if L2 != L and ((LE - (L2 & enc.EMASK)) & G) == 0:
                    bad = True
                    break
            if not bad:
                keep.append((L, cop, gi))
        # equal lcms: keep one; discard the class if any member is coprime
        classes: Dict[int, list] = {}
        for L, cop, gi in keep:
            classes.setdefault(L, []).append((cop, gi))
        for L, members in classes.items():
            if any(cop for cop, _ in members):
                continue
            gi = members[0][1]
            g = self.basis[gi]
            sug = max(g.sugar + enc.wdeg(L) - enc.wdeg(g.lt), sugar + enc.wdeg(L) - enc.wdeg(h.lt))
            self._seq += 1
            pid = self._seq
            self.pairs[pid] = (gi, h.idx, L)
            heapq.heappush(self.queue, (sug, 0, L, pid, ("pair", pid)))
        # elements whose leading term h divides are no longer needed for pairs
        for g in self.basis:
            if g.active and ((g.ltE - tE) & G) == 0:
                g.active = False
        self.basis.append(h)
        self.reducers = [(g.ltE, g) for g in self.basis if g.active]
        self._cache.clear()
        return h

    def _spoly(self, i: int, j: int, L: int):
        gi, gj = self.basis[i], self.basis[j]
        qi = L - gi.lt
        qj = L - gj.lt
        p = self.p
        acc: Dict[int, object] = {}
        for T, c in gi.terms[1:]:
            acc[T + qi] = c
        for T, c in gj.terms[1:]:
            k = T + qj
            v = acc.get(k)
            v = -c if v is None else v - c
            if p:
                v %= p
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        lift = None
        if self.track:
            EM = self.enc.EMASK
            lift = {}
            self._lift_axpy(lift, gi.lift, self.F.one, qi & EM)
            self._lift_axpy(lift, gj.lift, self.F.one, qj & EM, negate=True)
        return list(acc.items()), lift

    def run(self, maxdeg: Optional[int] = None):
        while self.queue:
            sugar, kind, key, seq, payload = self.queue[0]
            if maxdeg is not None and sugar > maxdeg:
                self.truncated = any(
                    item[4][0] == "gen" or item[4][1] in self.pairs for item in self.queue)
                return self
            heapq.heappop(self.queue)
            if payload[0] == "pair":
                pid = payload[1]
                pr = self.pairs.pop(pid, None)
                if pr is None:
                    continue
                terms, lift = self._spoly(*pr)
                rem, lift = self.reduce(terms, lift)
                if rem:
                    self._insert(rem, sugar, lift)
            else:
                _, idx, terms = payload
                lift = {idx: self.F.one} if self.track else None
                rem, lift = self.reduce(terms, lift)
                if rem:
                    self._insert(rem, sugar, lift)
                    self.kept.append(idx)
                else:
                    self.redundant.append(idx)
        self.truncated = False
        return self

    # -- output --------------------------------------------------------------

    def minimal_basis(self) -> List[GBElement]:
        return [g for g in self.basis if g.active]

    def interreduce(self) -> List[GBElement]:
        """Reduced basis (tails fully reduced), sorted by increasing leading term."""
        act = self.minimal_basis()
        out = []
        for g in act:
            lt_term = g.terms[0]
            tail, lift = self.reduce(g.terms[1:], dict(g.lift) if g.lift is not None else None, skip=g)
            ng = GBElement([lt_term] + _norm(tail), g.sugar, lift, g.idx)
            ng.ltE = g.ltE
            out.append(ng)
        # replace basis reducers by the reduced elements
        out.sort(key=lambda g: g.lt)
        self.basis = out
        for i, g in enumerate(out):
            g.idx = i
            g.active = True
        self.reducers = [(g.ltE, g) for g in out]
        self._cache.clear()
        return out


def groebner_terms(inputs: Sequence[Terms], enc: TermEncoder, field: FieldSpec, track: bool = False,
                   maxdeg: Optional[int] = None) -> Engine:
    """Run Buchberger on ``inputs`` and return the finished engine (reduced basis)."""
    eng = Engine(enc, field, track)
    for i, t in enumerate(inputs):
        eng.add_input(list(t), i)
    eng.run(maxdeg)
    eng.interreduce()
    return eng
