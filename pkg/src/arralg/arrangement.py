"""Central hyperplane arrangements and the ideals attached to them.

An arrangement is stored as its list of linear forms (columns of the n x m
coefficient matrix: entry (i, j) is the coefficient of x_i in l_j).  Each form
is scaled so its first nonzero coefficient is 1; this does not change any of
the ideals and makes duplicate detection exact.
"""

from __future__ import annotations

import itertools
import json
import random
import warnings
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .groebner.hilbert import hilbert_data
from .groebner.ideal import Ideal, ideal_equal
from .polycore.field import FieldSpec, QQ
from .polycore.polynomial import Polynomial, PolynomialRing, default_names, product


class ArrangementError(ValueError):
    pass


class CharacteristicWarning(UserWarning):
    """The characteristic divides the number of hyperplanes (no Euler relation for f)."""


def _normalize(F: FieldSpec, col: Sequence) -> Tuple:
    col = [F.convert(x) for x in col]
    lead = next((x for x in col if x != 0), None)
    if lead is None:
        raise ArrangementError("zero linear form")
    inv = F.inv(lead)
    return tuple(F.mul(x, inv) for x in col)


@dataclass(frozen=True)
class Circuit:
    """Minimal dependent set of forms with its dependency sum_i c_i l_i = 0 (first c = 1)."""

    indices: Tuple[int, ...]
    coeffs: Tuple

    def to_json(self, F: FieldSpec):
        return {"indices": list(self.indices), "coeffs": [F.to_json_value(c) for c in self.coeffs]}


class Arrangement:
    def __init__(self, ring: PolynomialRing, forms: Sequence[Sequence], require_essential: bool = True):
        F = ring.field
        n = ring.n
        cols = []
        for col in forms:
            if len(col) != n:
                raise ArrangementError(f"form {list(col)} does not have {n} coefficients")
            cols.append(_normalize(F, col))
        if len(set(cols)) != len(cols):
            raise ArrangementError("two forms are proportional (repeated hyperplane)")
        self.ring = ring
        self.field = F
        self.n = n
        self.cols: Tuple[Tuple, ...] = tuple(cols)
        self.m = len(cols)
        self.rank = linalg.rank(F, [list(c) for c in cols]) if cols else 0
        if require_essential:
            if self.m < n:
                raise ArrangementError("need at least n forms")
            if self.rank != n:
                raise ArrangementError(f"forms span rank {self.rank}, expected {n}")
        self._cache: Dict[str, object] = {}

    # -- construction ------------------------------------------------------------

    @classmethod
    def from_forms(cls, field: FieldSpec, n: int, forms: Sequence[Sequence], names=None, **kw) -> "Arrangement":
        return cls(PolynomialRing(field, n, names), forms, **kw)

    @classmethod
    def from_linear_polys(cls, polys: Sequence[Polynomial], **kw) -> "Arrangement":
        R = polys[0].ring
        cols = []
        for p in polys:
            if not p.is_homogeneous() or p.degree() != 1:
                raise ArrangementError(f"{p} is not a linear form")
            cols.append([p.coefficient(tuple(int(i == j) for j in range(R.n))) for i in range(R.n)])
        return cls(R, cols, **kw)

    @classmethod
    def parse(cls, ring: PolynomialRing, text: str, **kw) -> "Arrangement":
        """Forms separated by commas, e.g. ``"x, y, z, x+y"``."""
        return cls.from_linear_polys([ring.parse(s) for s in text.split(",")], **kw)

    @classmethod
    def from_json(cls, obj, field: Optional[FieldSpec] = None) -> "Arrangement":
        if isinstance(obj, str):
            obj = json.loads(obj)
        F = field if field is not None else FieldSpec.from_json(obj.get("field", "Q"))
        n = int(obj["n"])
        forms = obj["forms"]
        if forms and all(isinstance(t, str) for t in forms):
            R = PolynomialRing(F, n, obj.get("names") or default_names(n))
            return cls.from_linear_polys([R.parse(t) for t in forms])
        return cls(PolynomialRing(F, n, obj.get("names")), forms)

    def to_json(self):
        F = self.field
        out = {"field": F.to_json(), "n": self.n, "forms": [[F.to_json_value(x) for x in c] for c in self.cols]}
        if self.ring.names != tuple(f"x{i + 1}" for i in range(self.n)):
            out["names"] = list(self.ring.names)
        return out

    def __repr__(self):
        return f"Arrangement({', '.join(self.form_texts())})"

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self.ring == other.ring and set(self.cols) == set(other.cols)

    def __hash__(self):
        return hash((self.ring, frozenset(self.cols)))

    def form(self, j: int) -> Polynomial:
        return self.ring.linear_form(self.cols[j])

    def forms(self) -> List[Polynomial]:
        return [self.form(j) for j in range(self.m)]

    def form_texts(self) -> List[str]:
        """Forms rendered like ``x + 3y - z``."""
        F = self.field
        out = []
        for c in self.cols:
            parts = []
            for k, a in enumerate(c):
                if a == 0:
                    continue
                s = F.format(a)
                neg = s.startswith("-")
                s = s.lstrip("-")
                body = self.ring.names[k] if s == "1" else s + self.ring.names[k]
                if not parts:
                    parts.append(("-" if neg else "") + body)
                else:
                    parts.append((" - " if neg else " + ") + body)
            out.append("".join(parts))
        return out

    def matrix(self) -> List[list]:
        """n x m coefficient matrix."""
        return [[self.cols[j][i] for j in range(self.m)] for i in range(self.n)]

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def char_divides_m(self) -> bool:
        return self.field.divides_char(self.m)

    # -- polynomials and ideals ----------------------------------------------------

    def defining_polynomial(self) -> Polynomial:
        return self._cached("f", lambda: product(self.forms(), self.ring))

    def jacobian_ideal(self) -> Ideal:
        if self.char_divides_m():
            warnings.warn(f"characteristic {self.field.p} divides m={self.m}; the Euler relation "
                          "does not put f in its Jacobian ideal", CharacteristicWarning, stacklevel=2)
        return self._cached("J", lambda: Ideal(self.ring, [self.defining_polynomial().derivative(i)
                                                           for i in range(self.n)]))

    def L(self, i: int) -> Polynomial:
        """Product of all forms except the i-th."""
        return product([self.form(j) for j in range(self.m) if j != i], self.ring)

    def fold_product_ideal(self, k: Optional[int] = None) -> Ideal:
        """Ideal of all products of k distinct forms (k = m - 1 by default)."""
        if k is None:
            k = self.m - 1
        if not 1 <= k <= self.m:
            raise ArrangementError(f"fold length {k} out of range 1..{self.m}")

        def build():
            forms = self.forms()
            if k == self.m - 1:
                return Ideal(self.ring, [self.L(i) for i in range(self.m)])
            return Ideal(self.ring, [product([forms[j] for j in S], self.ring)
                                     for S in itertools.combinations(range(self.m), k)])

        return self._cached(("I", k), build)

    # -- combinatorics ------------------------------------------------------------

    def subset_rank(self, S: Sequence[int]) -> int:
        if not S:
            return 0
        return linalg.rank(self.field, [list(self.cols[j]) for j in S])

    def genericity_level(self) -> int:
        """Largest d such that any d forms are linearly independent."""
        def compute():
            d = 0
            for k in range(1, min(self.n, self.m) + 1):
                if all(self.subset_rank(S) == k for S in itertools.combinations(range(self.m), k)):
                    d = k
                else:
                    break
            return d

        return self._cached("gen", compute)

    def is_generic(self) -> bool:
        return self.genericity_level() == self.n

    def coloops(self) -> List[int]:
        return [i for i in range(self.m) if self.subset_rank([j for j in range(self.m) if j != i]) < self.rank]

    def circuits(self) -> List[Circuit]:
        """All minimal dependent subsets with normalized dependency coefficients."""
        def compute():
            F = self.field
            out: List[Circuit] = []
            dep_sets: List[frozenset] = []
            for k in range(2, min(self.m, self.n + 1) + 1):
                for S in itertools.combinations(range(self.m), k):
                    if any(C <= set(S) for C in dep_sets):
                        continue
                    if self.subset_rank(S) == k - 1:
                        # one-dimensional kernel of the n x k matrix
                        M = [[self.cols[j][i] for j in S] for i in range(self.n)]
                        ker = linalg.nullspace(F, M, k)
                        if len(ker) != 1 or any(c == 0 for c in ker[0]):
                            continue
                        v = ker[0]
                        inv = F.inv(v[0])
                        out.append(Circuit(tuple(S), tuple(F.mul(c, inv) for c in v)))
                        dep_sets.append(frozenset(S))
            return out

        return self._cached("circuits", compute)

    def components(self) -> List[List[int]]:
        """Connected components of the matroid (two forms connected when they share a circuit)."""
        parent = list(range(self.m))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for C in self.circuits():
            for a in C.indices[1:]:
                ra, rb = find(C.indices[0]), find(a)
                if ra != rb:
                    parent[rb] = ra
        groups: Dict[int, List[int]] = {}
        for i in range(self.m):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def sub_arrangement(self, S: Sequence[int]) -> "Arrangement":
        return Arrangement(self.ring, [self.cols[j] for j in S], require_essential=False)

    # -- deletion / restriction ---------------------------------------------------

    def deletion(self, i: int) -> "Arrangement":
        """Drop form i; the result may have rank < n (check ``rank``)."""
        if not 0 <= i < self.m:
            raise IndexError(f"form index {i} out of range")
        return Arrangement(self.ring, [c for j, c in enumerate(self.cols) if j != i], require_essential=False)

    def restriction(self, i: int) -> "Arrangement":
        """Residual forms on the hyperplane l_i, in n - 1 variables.

        The last variable with a nonzero coefficient in l_i is solved for and
        dropped; zero residuals are discarded and proportional ones merged.
        """
        if not 0 <= i < self.m:
            raise IndexError(f"form index {i} out of range")
        if self.n < 2:
            raise ArrangementError("cannot restrict a rank-1 arrangement")
        F = self.field
        li = self.cols[i]
        piv = max(k for k in range(self.n) if li[k] != 0)
        inv = F.inv(li[piv])
        keep = [k for k in range(self.n) if k != piv]
        res = []
        for j, c in enumerate(self.cols):
            if j == i:
                continue
            # substitute x_piv = -(sum_{k != piv} li[k] x_k) / li[piv]
            t = F.mul(c[piv], inv)
            new = [F.sub(c[k], F.mul(t, li[k])) for k in keep]
            if all(x == 0 for x in new):
                continue
            nv = _normalize(F, new)
            if nv not in res:
                res.append(nv)
        ring = PolynomialRing(F, self.n - 1, [self.ring.names[k] for k in keep])
        return Arrangement(ring, res, require_essential=False)

    # -- membership claims ----------------------------------------------------------

    def delta(self) -> Polynomial:
        """(l_1...l_{m-n})^2 * l_{m-n+1} ... l_{m-1}."""
        if self.m < self.n + 1:
            raise ArrangementError("needs m >= n + 1")
        forms = self.forms()
        k = self.m - self.n
        return product(forms[:k], self.ring) ** 2 * product(forms[k:self.m - 1], self.ring)


def defining_polynomial(A: Arrangement) -> Polynomial:
    return A.defining_polynomial()


def jacobian_ideal(A: Arrangement) -> Ideal:
    return A.jacobian_ideal()


def fold_product_ideal(A: Arrangement, k: Optional[int] = None) -> Ideal:
    return A.fold_product_ideal(k)


def deletion(A: Arrangement, i: int) -> Arrangement:
    return A.deletion(i)


def restriction(A: Arrangement, i: int) -> Arrangement:
    return A.restriction(i)


def genericity_level(A: Arrangement) -> int:
    return A.genericity_level()


def coloops(A: Arrangement) -> List[int]:
    return A.coloops()


def components(A: Arrangement) -> List[List[int]]:
    return A.components()


def random_generic(ring: PolynomialRing, m: int, seed: int, bound: int = 10, retries: int = 1000) -> Arrangement:
    """Rejection-sample integer coefficient matrices until every n forms are independent."""
    n = ring.n
    if m < n + 1:
        raise ArrangementError("random generic arrangements need m >= n + 1")
    rng = random.Random(seed)
    for _ in range(retries):
        cols = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
        try:
            A = Arrangement(ring, cols)
        except ArrangementError:
            continue
        if A.is_generic():
            return A
    raise ArrangementError(f"no generic arrangement found within {retries} tries (bound {bound})")


def _silent_jacobian(A: Arrangement) -> Ideal:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CharacteristicWarning)
        return A.jacobian_ideal()


def delta_membership_check(A: Arrangement) -> bool:
    return _silent_jacobian(A).contains(A.delta())


def graded_piece_equality(A: Arrangement, d: Optional[int] = None) -> bool:
    """[I]_d == [J_f]_d, decided by J_f in I plus equal dimensions in degree d."""
    if d is None:
        d = 2 * A.m - A.n - 1
    J = _silent_jacobian(A)
    I = A.fold_product_ideal()
    if not I.contains_ideal(J):
        return False
    R = A.ring
    total = len(R.monomials_of_degree(d))
    dim_J = total - hilbert_data(J, d).values[d]
    dim_I = total - hilbert_data(I, d).values[d]
    return dim_J == dim_I


def partition_law_check(A: Arrangement, block: Sequence[int]) -> Dict[str, bool]:
    """For forms ``block`` living in variables disjoint from the others, check
    I_F = <f I_g, g I_f> and J_F = <f J_g, g J_f> with f, g the two partial products."""
    rest = [j for j in range(A.m) if j not in set(block)]
    vars_b = {k for j in block for k in range(A.n) if A.cols[j][k] != 0}
    vars_c = {k for j in rest for k in range(A.n) if A.cols[j][k] != 0}
    if vars_b & vars_c or not block or not rest:
        raise ArrangementError("block is not a variable-split part of the arrangement")
    R = A.ring
    fb = [A.form(j) for j in block]
    fc = [A.form(j) for j in rest]
    f = product(fb, R)
    g = product(fc, R)

    def fold(fs):
        if len(fs) == 1:
            return [R.one()]
        return [product(fs[:i] + fs[i + 1:], R) for i in range(len(fs))]

    def jac(h):
        return [h.derivative(i) for i in range(R.n) if h.derivative(i)]

    I_F = A.fold_product_ideal()
    rhs_I = Ideal(R, [f * q for q in fold(fc)] + [g * q for q in fold(fb)])
    J_F = _silent_jacobian(A)
    rhs_J = Ideal(R, [f * q for q in jac(g)] + [g * q for q in jac(f)])
    return {"fold_product": ideal_equal(I_F, rhs_I), "jacobian": ideal_equal(J_F, rhs_J)}


def transport_check(A: Arrangement, M: Sequence[Sequence]) -> Dict[str, bool]:
    """Under x -> x M^-1 the Jacobian and fold-product ideals move to those of the transported forms."""
    from .polycore.changevars import LinearChangeOfVariables

    T = LinearChangeOfVariables(M, A.field)
    R = A.ring
    moved_forms = [T.apply(l) for l in A.forms()]
    B = Arrangement.from_linear_polys(moved_forms)
    J_moved = Ideal(R, [T.apply(g) for g in _silent_jacobian(A).gens])
    I_moved = Ideal(R, [T.apply(g) for g in A.fold_product_ideal().gens])
    return {"jacobian": ideal_equal(J_moved, _silent_jacobian(B)),
            "fold_product": ideal_equal(I_moved, B.fold_product_ideal())}


def load_arrangement(path: str, field: Optional[FieldSpec] = None) -> Arrangement:
    with open(path) as fh:
        return Arrangement.from_json(json.load(fh), field)
