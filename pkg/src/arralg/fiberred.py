"""Reductions of the fold-product ideal, Orlik-Terao relations, Rees algebras.

Covers: circuit relations and the special-fiber test for J_f being a reduction
of I = <L_1..L_m>, explicit reduction-number certificates, symmetric versus
Rees presentation ideals (linear type), the G_infinity condition via Fitting
ideals, freeness and the complete-intersection property of the Rees algebra.
"""

from __future__ import annotations

import hashlib
import itertools
import warnings
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2

from . import linalg
from .arrangement import Arrangement, CharacteristicWarning, Circuit
from .groebner.engine import Engine
from .groebner.hilbert import codim, hilbert_data, krull_dim
from .groebner.ideal import Ideal, eliminate, ideal_equal, poly_to_terms, saturate, terms_to_poly
from .groebner.order import DEGREVLEX, TermEncoder
from .homalg.invariants import depth_and_pd
from .homalg.resolution import syzygy_module
from .polycore.polynomial import Polynomial, PolynomialRing, product


def _jac(A: Arrangement) -> Ideal:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CharacteristicWarning)
        return A.jacobian_ideal()


# ------------------------------------------------------------------ Orlik-Terao


def circuits(A: Arrangement) -> List[Circuit]:
    return A.circuits()


@dataclass
class OrlikTeraoPresentation:
    ring: PolynomialRing                 # K[T_1..T_m]
    Q: Ideal
    fiber_forms: List[Polynomial]        # l_i = sum_j a_{i,j} T_j
    circuits: List[Circuit]

    def dump(self):
        F = self.ring.field
        return {"circuits": [c.to_json(F) for c in self.circuits],
                "relations": [g.format() for g in self.Q.gens],
                "fiber_forms": [g.format() for g in self.fiber_forms]}


def orlik_terao_ideal(A: Arrangement, verify: bool = True) -> OrlikTeraoPresentation:
    """Relations sum_{i in C} c_i prod_{t in C, t != i} T_t, one per circuit."""
    S = PolynomialRing(A.field, A.m, [f"T{j + 1}" for j in range(A.m)])
    T = S.gens()
    rels = []
    circs = A.circuits()
    for C in circs:
        r = S.zero()
        for i, c in zip(C.indices, C.coeffs):
            r = r + product([T[t] for t in C.indices if t != i], S).scale(c)
        rels.append(r)
    if verify:
        Ls = [A.L(j) for j in range(A.m)]
        for r in rels:
            if r.substitute(Ls, A.ring):
                raise RuntimeError("circuit relation does not vanish on the fold products")
    forms = [S.linear_form([A.cols[j][i] for j in range(A.m)]) for i in range(A.n)]
    return OrlikTeraoPresentation(S, Ideal(S, rels), forms, circs)


def fiber_kernel_by_elimination(A: Arrangement) -> Ideal:
    """Kernel of K[T] -> R, T_j -> L_j, by eliminating x from <T_j - L_j>.

    Independent of the circuit description; used to cross-check it.
    """
    n, m = A.n, A.m
    big = PolynomialRing(A.field, n + m)
    gens = []
    for j in range(m):
        Lj = A.L(j)
        emb = Polynomial(big, {e + (0,) * m: c for e, c in Lj._d.items()})
        gens.append(big.gen(n + j) - emb)
    weights = (1,) * n + (m - 1,) * m
    K = eliminate(Ideal(big, gens), n, weights)
    S = PolynomialRing(A.field, m, [f"T{j + 1}" for j in range(m)])
    return Ideal(S, [Polynomial(S, g._d) for g in K.gens])


def fiber_criterion(A: Arrangement) -> bool:
    """<l_1..l_n> + Q is primary to <T_1..T_m>, i.e. J_f is a reduction of I."""
    P = orlik_terao_ideal(A)
    I = Ideal(P.ring, list(P.fiber_forms) + list(P.Q.gens))
    if I.is_unit():
        return True
    return krull_dim(I) == 0


def analytic_spread(A: Arrangement) -> int:
    """Krull dimension of K[T]/Q."""
    return krull_dim(orlik_terao_ideal(A).Q)


# ------------------------------------------------------------------ reduction numbers


@dataclass
class ReductionCertificate:
    """Outcome of a reduction-number search.

    ``r`` is the least exponent with I^{r+1} = J I^r (None on failure).
    Each witness records one standard generator of I^{r+1}, its membership
    status, a digest of its normal form (zero for members) and the scalar
    combination of the generators of J I^r that produces it.
    """

    r: Optional[int]
    k_max: int
    witnesses: List[dict] = field(default_factory=list)
    generator_labels: List[str] = field(default_factory=list)
    tried: Dict[int, int] = field(default_factory=dict)   # exponent -> number of non-members
    double_checked: bool = False

    @property
    def success(self) -> bool:
        return self.r is not None

    def to_json(self, combinations: bool = False):
        ws = []
        for w in self.witnesses:
            d = {"generator": w["generator"], "status": w["status"], "nf_digest": w["nf_digest"]}
            if combinations and "combination" in w:
                d["combination"] = w["combination"]
            ws.append(d)
        out = {"r": self.r, "k_max": self.k_max, "witnesses": ws,
               "non_members_by_exponent": {str(k): v for k, v in sorted(self.tried.items())}}
        if combinations:
            out["combination_basis"] = self.generator_labels
        return out


def _digest(p: Polynomial) -> str:
    return hashlib.sha256(p.format().encode()).hexdigest()[:16]


_SHIFT = 16


class _Packed:
    """Integer-coefficient polynomial with exponents packed into one int.

    ``scale`` records the factor that made the source polynomial integral, so
    the packed data equals scale * source.
    """

    __slots__ = ("d", "scale", "deg")

    def __init__(self, d: Dict[int, int], scale, deg: int):
        self.d = d
        self.scale = scale
        self.deg = deg


def _pack(f: Polynomial) -> _Packed:
    F = f.field
    if F.p:
        scale = 1
        d = {sum(a << (_SHIFT * i) for i, a in enumerate(e)): int(c) for e, c in f._d.items()}
    else:
        den = 1
        for c in f._d.values():
            q = int(gmpy2.mpq(c).denominator)
            den = den * q // gcd(den, q)
        scale = den
        d = {sum(a << (_SHIFT * i) for i, a in enumerate(e)): int(gmpy2.mpq(c) * den) for e, c in f._d.items()}
    return _Packed(d, scale, f.degree())


def _pmul(a: _Packed, b: _Packed, p: int) -> _Packed:
    x, y = (a.d, b.d) if len(a.d) >= len(b.d) else (b.d, a.d)
    out: Dict[int, int] = {}
    get = out.get
    for eb, cb in y.items():
        for ea, ca in x.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    if p:
        out = {e: c % p for e, c in out.items() if c % p}
    else:
        out = {e: c for e, c in out.items() if c}
    return _Packed(out, a.scale * b.scale, a.deg + b.deg)


def _unpack(P: _Packed, ring: PolynomialRing) -> Polynomial:
    n = ring.n
    mask = (1 << _SHIFT) - 1
    F = ring.field
    d = {}
    for e, c in P.d.items():
        d[tuple((e >> (_SHIFT * i)) & mask for i in range(n))] = F.div(F.convert(c), F.convert(P.scale))
    return Polynomial(ring, d)


class _ProductTable:
    """Memoized products of a fixed generator list, indexed by sorted index tuples."""

    def __init__(self, gens: Sequence[Polynomial]):
        self.base = [_pack(g) for g in gens]
        self.p = gens[0].field.p if gens else 0
        self.memo: Dict[tuple, _Packed] = {}

    def get(self, combo: tuple) -> _Packed:
        if len(combo) == 1:
            return self.base[combo[0]]
        P = self.memo.get(combo)
        if P is None:
            P = _pmul(self.get(combo[:-1]), self.base[combo[-1]], self.p)
            self.memo[combo] = P
        return P


def _product_gens(gens: Sequence[Polynomial], k: int, names: Sequence[str]):
    R = gens[0].ring
    out = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        out.append((product([gens[i] for i in combo], R), "*".join(names[i] for i in combo)))
    return out


def _membership(targets, basis_gens, ring: PolynomialRing):
    """Normal forms of targets modulo the ideal of basis_gens (truncated at the top target degree),
    together with polynomial combinations of basis_gens for members (GB lifting)."""
    maxdeg = max(t.degree() for t in targets)
    enc = TermEncoder(ring.n, DEGREVLEX)
    eng = Engine(enc, ring.field, track=True)
    for i, g in enumerate(basis_gens):
        eng.add_input(poly_to_terms(g, enc), i)
    eng.run(maxdeg)
    eng.interreduce()
    F = ring.field
    out = []
    for t in targets:
        rem, lift = eng.reduce(poly_to_terms(t, enc), {})
        nf = terms_to_poly(rem, enc, ring)
        combo = None
        if not rem:
            combo = {}
            for key, c in lift.items():
                idx = key & enc.CMASK
                e = enc.exps(key & enc.EMASK & ~enc.CMASK)
                combo.setdefault(idx, {})[e] = F.neg(c)
            combo = {i: Polynomial(ring, d) for i, d in combo.items()}
        out.append((nf, combo))
    return out


def _span_membership(F, targets: Sequence[_Packed], basis: Sequence[_Packed]):
    """Membership of same-degree targets in the K-span of same-degree basis forms.

    Returns a list with None for non-members and, for members, a dict
    basis index -> scalar expressing the (unscaled) target through the
    (unscaled) basis forms.  Combinations are proven exactly.
    """
    index: Dict[int, int] = {}
    for P in itertools.chain(basis, targets):
        for e in P.d:
            index.setdefault(e, len(index))
    rows = len(index)
    B = [[0] * len(basis) for _ in range(rows)]
    for j, P in enumerate(basis):
        for e, c in P.d.items():
            B[index[e]][j] = c
    T = [[0] * len(targets) for _ in range(rows)]
    for k, P in enumerate(targets):
        for e, c in P.d.items():
            T[index[e]][k] = c
    sol = linalg.solve_span(F, B, T)
    if not sol.verified:
        raise RuntimeError("span combination failed its exact check")
    out = []
    for k, c in enumerate(sol.coeffs):
        if c is None:
            out.append(None)
            continue
        mu = F.convert(targets[k].scale)
        combo = {}
        for i, x in enumerate(c):
            if x:
                combo[i] = F.div(F.mul(F.convert(x), F.convert(basis[i].scale)), mu)
        out.append(combo)
    return out


def _span_contains(F, small: Sequence[Polynomial], big: Sequence[Polynomial]) -> bool:
    """Linear algebra: span(big) is inside span(small) (same-degree forms)."""
    ech = linalg.SparseEchelon(F)
    index: Dict[tuple, int] = {}

    def vec(p):
        return {index.setdefault(e, len(index)): c for e, c in p._d.items()}

    for g in small:
        ech.add(vec(g))
    return all(ech.contains(vec(g)) for g in big)


def _equigenerated(polys: Sequence[Polynomial]) -> bool:
    return len({g.degree() for g in polys}) == 1 and all(g.is_homogeneous() for g in polys)


def reduction_number(J: Ideal, I: Ideal, k_max: Optional[int] = None, labels_I=None, labels_J=None,
                     double_check: bool = True) -> ReductionCertificate:
    """Least r <= k_max with I^{r+1} = J I^r, certified generator by generator.

    When the generators of I and J share one degree, I^{r+1} and J I^r live in
    a single degree and membership is a K-linear question: combinations are
    found by multimodular elimination and proven exactly.  Otherwise (and as
    the independent double check) the truncated Gröbner basis of J I^r is
    used with lift tracking.
    """
    R = I.ring
    if J.ring != R:
        raise ValueError("ideals live in different rings")
    if not I.contains_ideal(J):
        raise ValueError("J is not contained in I")
    if k_max is None:
        k_max = R.n - 1
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    Ig = list(I.gens)
    Jg = list(J.gens)
    labels_I = labels_I or [f"g{i + 1}" for i in range(len(Ig))]
    labels_J = labels_J or [f"h{i + 1}" for i in range(len(Jg))]
    linear = _equigenerated(Ig + Jg)
    table = _ProductTable(Ig + Jg)
    offs = len(Ig)
    cert = ReductionCertificate(None, k_max)
    cert._field = R.field
    for r in range(0, k_max + 1):
        t_combos = list(itertools.combinations_with_replacement(range(len(Ig)), r + 1))
        p_combos = list(itertools.combinations_with_replacement(range(len(Ig)), r))
        t_labels = ["*".join(labels_I[i] for i in c) for c in t_combos]
        b_combos = [tuple(sorted(pc)) + (offs + h,) if pc else (offs + h,) for h in range(len(Jg)) for pc in p_combos]
        b_labels = [labels_J[h] + ("*" + "*".join(labels_I[i] for i in pc) if pc else "")
                    for h in range(len(Jg)) for pc in p_combos]
        if linear:
            tp = [table.get(c) for c in t_combos]
            bp = [table.get(c) for c in b_combos]
            combos = _span_membership(R.field, tp, bp)
            bad = sum(1 for c in combos if c is None)
            cert.tried[r] = bad
            if bad:
                continue
            cert.r = r
            cert.generator_labels = b_labels
            cert._basis = bp
            for lab, P, combo in zip(t_labels, tp, combos):
                w = {"generator": lab, "status": "member", "nf_digest": _digest(R.zero())}
                w["combination"] = {b_labels[i]: R.field.format(c) for i, c in sorted(combo.items())}
                w["_combo"] = combo
                w["_target"] = P
                cert.witnesses.append(w)
        else:
            targets = [_unpack(table.get(c), R) for c in t_combos]
            basis = [_unpack(table.get(c), R) for c in b_combos]
            results = _membership(targets, basis, R)
            bad = sum(1 for nf, _ in results if nf)
            cert.tried[r] = bad
            if bad:
                continue
            cert.r = r
            cert.generator_labels = b_labels
            cert._basis = basis
            for lab, t, (nf, combo) in zip(t_labels, targets, results):
                w = {"generator": lab, "status": "member", "nf_digest": _digest(nf)}
                w["combination"] = {b_labels[i]: p.format() for i, p in sorted(combo.items())}
                w["_combo"] = combo
                w["_target"] = t
                cert.witnesses.append(w)
        if double_check:
            targets = [_unpack(table.get(c), R) for c in t_combos]
            basis = [_unpack(table.get(c), R) for c in b_combos]
            res = _membership(targets, basis, R)
            cert.double_checked = all(not nf for nf, _ in res)
        return cert
    return cert


def replay_certificate(cert: ReductionCertificate) -> bool:
    """Recompute every recorded combination and compare with its target."""
    if not cert.success:
        return False
    basis = cert._basis
    F = cert._field
    for w in cert.witnesses:
        combo = w["_combo"]
        target = w["_target"]
        if isinstance(target, _Packed):
            acc: Dict[int, object] = {}
            for i, c in combo.items():
                b = basis[i]
                f = F.div(c, F.convert(b.scale))
                for e, x in b.d.items():
                    acc[e] = F.add(acc.get(e, F.zero), F.mul(f, F.convert(x)))
            got = {e: v for e, v in acc.items() if v != 0}
            inv = F.inv(F.convert(target.scale))
            want = {e: F.mul(F.convert(x), inv) for e, x in target.d.items()}
            want = {e: v for e, v in want.items() if v != 0}
            if got != want:
                return False
        else:
            acc = target.ring.zero()
            for i, coef in combo.items():
                acc = acc + coef * basis[i]
            if acc != target:
                return False
    return True


def arrangement_reduction_number(A: Arrangement, k_max: Optional[int] = None,
                                 double_check: Optional[bool] = None) -> ReductionCertificate:
    """Reduction certificate for J_f inside I.  The Gröbner double check runs by default for n <= 3."""
    J = _jac(A)
    I = A.fold_product_ideal()
    if double_check is None:
        double_check = A.n <= 3
    return reduction_number(J, I, k_max if k_max is not None else A.n - 1,
                            labels_I=[f"L{i + 1}" for i in range(A.m)],
                            labels_J=[f"f_{A.ring.names[i]}" for i in range(A.n)],
                            double_check=double_check)


def key_lemma_check(A: Arrangement) -> Dict[str, object]:
    """Every product of n distinct L_i lies in J_f I^{n-1}.

    Returns {"holds", "generic_precondition", "failures"}; the precondition
    ((n-1)-genericity) is reported, not enforced.
    """
    J = _jac(A)
    n, m = A.n, A.m
    Ls = [A.L(i) for i in range(m)]
    table = _ProductTable(Ls + list(J.gens))
    subsets = list(itertools.combinations(range(m), n))
    p_combos = list(itertools.combinations_with_replacement(range(m), n - 1))
    basis = [table.get(tuple(pc) + (m + h,)) for h in range(len(J.gens)) for pc in p_combos]
    targets = [table.get(S) for S in subsets]
    if _equigenerated(Ls + list(J.gens)):
        res = _span_membership(A.field, targets, basis)
        fails = [list(S) for S, c in zip(subsets, res) if c is None]
    else:
        res = _membership([_unpack(t, A.ring) for t in targets], [_unpack(b, A.ring) for b in basis], A.ring)
        fails = [list(S) for S, (nf, _) in zip(subsets, res) if nf]
    return {"holds": not fails, "generic_precondition": A.genericity_level() >= n - 1, "failures": fails}


def colon_infinity_reduction_test(J: Ideal, I: Ideal) -> bool:
    """J : I^inf is the unit ideal (necessary for J to be a reduction of I)."""
    S, _ = saturate(J, I)
    return S.is_unit()


def mu_I_squared(A: Arrangement) -> int:
    if A.rank != 2 or A.n != 2:
        raise ValueError("mu_I_squared is defined for rank-2 arrangements")
    I2 = A.fold_product_ideal() ** 2
    d = 2 * (A.m - 1)
    total = len(A.ring.monomials_of_degree(d))
    return total - hilbert_data(I2, d).values[d]


# ------------------------------------------------------------------ Rees / symmetric algebras


@dataclass
class ReesPresentation:
    ring: PolynomialRing               # K[x_1..x_n, T_1..T_mu]
    generators: List[Polynomial]       # minimal generators of the ideal, in T order
    symmetric: Ideal
    rees: Ideal

    def to_json(self):
        return {"generators": [g.format() for g in self.generators],
                "symmetric": [g.format() for g in self.symmetric.gens],
                "rees": [g.format() for g in self.rees.gens]}


def _rees_ring(R: PolynomialRing, mu: int) -> PolynomialRing:
    names = list(R.names) + [f"T{i + 1}" for i in range(mu)]
    return PolynomialRing(R.field, R.n + mu, names)


def _embed_x(p: Polynomial, S: PolynomialRing, pad: int) -> Polynomial:
    return Polynomial(S, {e + (0,) * pad: c for e, c in p._d.items()})


def symmetric_ideal(I: Ideal, gens: Optional[Sequence[Polynomial]] = None) -> Tuple[Ideal, List[Polynomial]]:
    """Ideal of the biforms sum_i s_i T_i over minimal syzygies s; returns (ideal, generators used)."""
    gens = list(gens) if gens is not None else I.minimal_generators()
    R = I.ring
    mu = len(gens)
    S = _rees_ring(R, mu)
    T = [S.gen(R.n + i) for i in range(mu)]
    if mu == 1:
        return Ideal(S, []), gens
    syz, _ = syzygy_module(gens)
    forms = []
    for v in syz:
        b = S.zero()
        for i, s in enumerate(v):
            if s:
                b = b + _embed_x(s, S, mu) * T[i]
        forms.append(b)
    return Ideal(S, forms), gens


def rees_ideal(I: Ideal, gens: Optional[Sequence[Polynomial]] = None) -> Tuple[Ideal, List[Polynomial]]:
    """Kernel of K[x, T] -> R[t], T_i -> t g_i, by eliminating t from <T_i - t g_i>."""
    gens = list(gens) if gens is not None else I.minimal_generators()
    R = I.ring
    mu = len(gens)
    n = R.n
    big = PolynomialRing(R.field, 1 + n + mu, ["t"] + list(R.names) + [f"T{i + 1}" for i in range(mu)])
    t = big.gen(0)
    rels = []
    for i, g in enumerate(gens):
        eg = Polynomial(big, {(0,) + e + (0,) * mu: c for e, c in g._d.items()})
        rels.append(big.gen(1 + n + i) - t * eg)
    weights = (0,) + (1,) * n + tuple(g.degree() for g in gens)
    K = eliminate(Ideal(big, rels), 1, weights)
    S = _rees_ring(R, mu)
    out = Ideal(S, [Polynomial(S, g._d) for g in K.gens])
    out = Ideal(S, out.minimal_generators())
    # sanity: T_i -> g_i kills everything
    images = [S.gen(i) for i in range(n)] + [_embed_x(g, S, mu) for g in gens]
    for h in out.gens:
        if h.substitute(images, S):
            raise RuntimeError("Rees relation does not vanish under T_i -> g_i")
    return out, gens


def rees_presentation(I: Ideal) -> ReesPresentation:
    gens = I.minimal_generators()
    Sym, _ = symmetric_ideal(I, gens)
    Rees, _ = rees_ideal(I, gens)
    return ReesPresentation(Rees.ring, gens, Sym, Rees)


def is_linear_type(I: Ideal, presentation: Optional[ReesPresentation] = None) -> bool:
    P = presentation or rees_presentation(I)
    if not P.rees.contains_ideal(P.symmetric):
        raise RuntimeError("symmetric ideal is not contained in the Rees ideal")
    return ideal_equal(P.symmetric, P.rees)


def _det(M: List[List[Polynomial]], R: PolynomialRing) -> Polynomial:
    k = len(M)
    if k == 1:
        return M[0][0]
    if k == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    out = R.zero()
    for j in range(k):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, R)
        out = out + term if j % 2 == 0 else out - term
    return out


def minors_ideal(phi: List[List[Polynomial]], k: int, R: PolynomialRing) -> Ideal:
    rows = len(phi)
    cols = len(phi[0]) if phi else 0
    if k <= 0:
        return Ideal.unit(R)
    if k > min(rows, cols):
        return Ideal(R, [])
    dets = []
    seen = set()
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            d = _det([[phi[r][c] for c in cs] for r in rs], R)
            if d and d not in seen:
                seen.add(d)
                dets.append(d)
    return Ideal(R, dets)


def g_infinity_check(I: Ideal) -> Dict[str, object]:
    """G_infinity via Fitting ideals: codim I_{mu-i}(phi) > i for 1 <= i < mu.

    phi is the mu x s matrix whose columns are the minimal syzygies.  Returns
    {"holds", "heights": {i: codim}, "first_failure"}.
    """
    R = I.ring
    gens = I.minimal_generators()
    mu = len(gens)
    heights: Dict[int, object] = {}
    fail = None
    if mu <= 1:
        return {"holds": True, "heights": heights, "first_failure": None}
    syz, _ = syzygy_module(gens)
    phi = [[v[i] for v in syz] for i in range(mu)]
    for i in range(1, mu):
        Fi = minors_ideal(phi, mu - i, R)
        if Fi.is_zero():
            h = 0
        elif Fi.is_unit():
            h = "inf"
        else:
            h = codim(Fi)
        heights[i] = h
        if h != "inf" and h <= i and fail is None:
            fail = i
    return {"holds": fail is None, "heights": heights, "first_failure": fail}


def is_free(A: Arrangement) -> bool:
    """J_f is perfect of codimension two (pd R/J_f = 2)."""
    J = _jac(A)
    if codim(J) != 2:
        return False
    return depth_and_pd(J)[1] == 2


def rees_is_ci(A: Arrangement, presentation: Optional[ReesPresentation] = None) -> bool:
    """The Rees ideal of J_f is minimally generated by codim-many elements."""
    P = presentation or rees_presentation(_jac(A))
    K = P.rees
    if K.is_zero():
        return True
    mingens = K.minimal_generators()
    return len(mingens) == codim(K)
