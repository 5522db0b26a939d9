"""Products of forms of higher degree.

Smoothness of a single form, near transversality of a system of forms, the
two-forms suite for F = f g, the lower bound on the syzygy initial degree of
J_F and the unbalanced-degree depth criterion.  Every check reports the
characteristic preconditions it depends on instead of assuming them.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .arrangement import CharacteristicWarning
from .fiberred import minors_ideal
from .groebner.hilbert import krull_dim
from .groebner.ideal import Ideal, colon_element, saturate
from .homalg.invariants import depth_and_pd, indeg_syz
from .polycore.field import FieldSpec
from .polycore.polynomial import Polynomial, PolynomialRing, default_names, gradient, product

class FormSystemError(ValueError):
    pass


def _jacobian_ideal(f: Polynomial) -> Ideal:
    return Ideal(f.ring, gradient(f))


def _is_m_primary(I: Ideal) -> bool:
    return I.is_unit() or krull_dim(I) == 0


def _codim(I: Ideal) -> int:
    """Codimension, with n + 1 standing in for the unit ideal (empty zero set)."""
    return I.ring.n - krull_dim(I)


def _char_flags(F: FieldSpec, integers: Dict[str, int]) -> Dict[str, bool]:
    """name -> True when the characteristic does not divide that integer."""
    return {k: not F.divides_char(v) for k, v in integers.items()}


def coprime(f: Polynomial, g: Polynomial) -> bool:
    """gcd(f, g) = 1, decided by <f> : g = <f> (R is a UFD)."""
    if f.is_constant() or g.is_constant():
        return True
    return colon_element(Ideal(f.ring, [f]), g) == Ideal(f.ring, [f])


def is_smooth_form(f: Polynomial) -> bool:
    """The hypersurface of f is smooth: J_f is primary to the irrelevant ideal."""
    if not f.is_homogeneous() or not f:
        raise FormSystemError("smoothness is tested for nonzero forms")
    d = f.degree()
    if d < 2:
        raise FormSystemError(f"form of degree {d}; smoothness needs degree >= 2")
    if f.field.divides_char(d):
        warnings.warn(f"characteristic {f.field.p} divides the degree {d}", CharacteristicWarning, stacklevel=2)
    return _is_m_primary(_jacobian_ideal(f))


class FormSystem:
    """Forms f_1..f_m (m >= 2) of degrees >= 2 in one ring, pairwise non-proportional."""

    def __init__(self, ring: PolynomialRing, forms: Sequence[Polynomial]):
        forms = [f if isinstance(f, Polynomial) else ring.parse(str(f)) for f in forms]
        if len(forms) < 2:
            raise FormSystemError("a form system needs at least two forms")
        for f in forms:
            if f.ring != ring:
                raise FormSystemError("forms live in different rings")
            if not f or not f.is_homogeneous():
                raise FormSystemError(f"{f} is not a nonzero form")
            if f.degree() < 2:
                raise FormSystemError(f"{f} has degree {f.degree()} < 2")
        monic = [f.monic() for f in forms]
        if len(set(monic)) != len(monic):
            raise FormSystemError("two forms are proportional")
        self.ring = ring
        self.field = ring.field
        self.forms = list(forms)
        self.m = len(forms)
        self.n = ring.n
        self.degrees = [f.degree() for f in forms]
        self.c = min(self.m, self.n)

    @classmethod
    def parse(cls, ring: PolynomialRing, texts: Sequence[str]) -> "FormSystem":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def from_json(cls, obj, field: Optional[FieldSpec] = None) -> "FormSystem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        F = field if field is not None else FieldSpec.from_json(obj.get("field", "Q"))
        n = int(obj["n"])
        names = obj.get("names") or default_names(n)
        R = PolynomialRing(F, n, names)
        return cls.parse(R, obj["forms"])

    def to_json(self):
        return {"field": self.field.to_json(), "n": self.n, "names": list(self.ring.names),
                "forms": [f.format() for f in self.forms]}

    def product(self) -> Polynomial:
        return product(self.forms, self.ring)

    def jacobian_ideal(self) -> Ideal:
        return _jacobian_ideal(self.product())

    def pairwise_coprime(self) -> bool:
        return all(coprime(f, g) for f, g in itertools.combinations(self.forms, 2))

    def __repr__(self):
        return f"FormSystem({', '.join(f.format() for f in self.forms)})"


def load_form_system(path: str, field: Optional[FieldSpec] = None) -> FormSystem:
    with open(path) as fh:
        return FormSystem.from_json(json.load(fh), field)


# ------------------------------------------------------------------ near transversality


def jacobian_matrix(forms: Sequence[Polynomial]) -> List[List[Polynomial]]:
    return [gradient(f) for f in forms]


@dataclass
class TransversalityReport:
    smooth: List[bool]
    subsets: List[dict]                      # {"indices", "codim", "maximal_rank"}
    nearly_transversal: bool
    two_forms: Optional[dict] = None         # flags (a), (b), (c) and the two JJ checks when m = 2
    theta: Optional[List[List[Polynomial]]] = field(default=None, repr=False)
    J_ideal: Optional[Ideal] = field(default=None, repr=False)

    def to_json(self):
        out = {"smooth": self.smooth, "condition_b": self.subsets, "nearly_transversal": self.nearly_transversal}
        if self.two_forms is not None:
            out["two_forms"] = self.two_forms
        return out


def rank_drop_codim(forms: Sequence[Polynomial]) -> int:
    """Codimension of <S> + I_c(Jac(S)) for the c = len(forms) forms S."""
    R = forms[0].ring
    I = Ideal(R, list(forms)) + minors_ideal(jacobian_matrix(forms), len(forms), R)
    return _codim(I)


def near_transversality(FS: FormSystem) -> TransversalityReport:
    """Condition (a) per form and condition (b) per c-subset via the codimension surrogate.

    Condition (b) holds for a subset S when the rank-drop locus of the Jacobian
    matrix inside V(S) has codimension >= n, so no height n-1 prime containing
    S can witness a rank drop.
    """
    if FS.n < 3:
        raise FormSystemError("near transversality is defined for n >= 3")
    smooth = [is_smooth_form(f) for f in FS.forms]
    subsets = []
    for S in itertools.combinations(range(FS.m), FS.c):
        cd = rank_drop_codim([FS.forms[i] for i in S])
        subsets.append({"indices": list(S), "codim": cd, "maximal_rank": cd >= FS.n})
    nt = all(smooth) and all(s["maximal_rank"] for s in subsets)
    rep = TransversalityReport(smooth, subsets, nt)
    if FS.m == 2:
        f, g = FS.forms
        R = FS.ring
        theta = jacobian_matrix([f, g])
        JJ = Ideal(R, [f]) + minors_ideal(theta, 2, R)
        rep.theta = theta
        rep.J_ideal = JJ
        rep.two_forms = {
            "a": smooth[0],
            "b": subsets[0]["maximal_rank"],
            "c": _is_m_primary(Ideal(R, [f] + gradient(g))),
            "jj_m_primary": _is_m_primary(JJ),
            "g_jj_in_JF": _contained_after_multiplying(g, JJ, FS.jacobian_ideal()),
        }
    return rep


def _contained_after_multiplying(g: Polynomial, I: Ideal, J: Ideal) -> bool:
    """g I is inside J, checked on generators by normal forms."""
    return all(J.contains(g * h) for h in I.gens)


# ------------------------------------------------------------------ two forms


def leibniz_holds(f: Polynomial, g: Polynomial) -> bool:
    """F_{x_i} = f_{x_i} g + f g_{x_i} for every i, with F = f g."""
    F = f * g
    return all(F.derivative(i) == f.derivative(i) * g + f * g.derivative(i) for i in range(f.ring.n))


def trade_identity_holds(f: Polynomial, g: Polynomial) -> bool:
    """g_{x_i} F_{x_j} - g_{x_j} F_{x_i} = (g_{x_i} f_{x_j} - g_{x_j} f_{x_i}) g for all i < j."""
    F = f * g
    n = f.ring.n
    dF = gradient(F)
    df = gradient(f)
    dg = gradient(g)
    for i in range(n):
        for j in range(i + 1, n):
            if dg[i] * dF[j] - dg[j] * dF[i] != (dg[i] * df[j] - dg[j] * df[i]) * g:
                return False
    return True


def two_forms_suite(f: Polynomial, g: Polynomial) -> dict:
    """Items (i)-(iii) for F = f g with deg f = d <= deg g = e.

    Each item lists its preconditions; items whose preconditions fail are
    still computed and a warning is emitted.
    """
    R = f.ring
    K = R.field
    d, e = f.degree(), g.degree()
    F = f * g
    JF = _jacobian_ideal(F)
    m = R.irrelevant_ideal()
    JFsat, _ = saturate(JF, m)
    f_smooth = is_smooth_form(f)
    g_smooth = is_smooth_form(g)
    cop = coprime(f, g)

    def warn(item, pre):
        bad = [k for k, v in pre.items() if not v]
        if bad:
            warnings.warn(f"item {item}: preconditions not met: {', '.join(bad)}", stacklevel=3)
        return bad

    out: Dict[str, object] = {"d": d, "e": e, "degree_order": d <= e,
                              "leibniz": leibniz_holds(f, g), "trade_identity": trade_identity_holds(f, g)}

    # (i)
    pre_i = {"f_smooth": f_smooth}
    g2 = g * g
    out["i"] = {
        "preconditions": pre_i,
        "unmet": warn("i", pre_i),
        "fprime_g2_in_JF": all(JF.contains(df * g2) for df in gradient(f)),
        "g2_in_JF_sat": JFsat.contains(g2),
        "g2_in_JF": JF.contains(g2),
    }
    out["i"]["holds"] = out["i"]["g2_in_JF_sat"]

    # (ii)
    pre_ii = {"coprime": cop}
    pre_ii.update({f"char_ndiv_{k}": v for k, v in _char_flags(K, {"e": e, "d+e": d + e}).items()})
    r_F = indeg_syz(JF)
    r_g = indeg_syz(_jacobian_ideal(g))
    item = {"preconditions": pre_ii, "unmet": warn("ii", pre_ii), "indeg_syz_JF": r_F, "indeg_syz_Jg": r_g}
    item["holds"] = r_F is not None and r_g is not None and r_F >= r_g
    if g_smooth:
        item["g_smooth_bound"] = e - 1
        item["g_smooth_bound_holds"] = r_F is not None and r_F >= e - 1
    out["ii"] = item

    # (iii)
    theta = jacobian_matrix([f, g])
    JJ = Ideal(R, [f]) + minors_ideal(theta, 2, R)
    b_codim = rank_drop_codim([f, g])
    pre_iii = {"a_f_smooth": f_smooth, "b_maximal_rank": b_codim >= R.n,
               "c_f_Jg_m_primary": _is_m_primary(Ideal(R, [f] + gradient(g)))}
    pre_iii.update({f"char_ndiv_{k}": v for k, v in _char_flags(K, {"d": d, "e": e, "d+e": d + e}).items()})
    depth, pd = depth_and_pd(JF)
    item = {
        "preconditions": pre_iii,
        "unmet": warn("iii", pre_iii),
        "b_codim": b_codim,
        "jj_m_primary": _is_m_primary(JJ),
        "g_jj_in_JF": _contained_after_multiplying(g, JJ, JF),
        "g_in_JF_sat": JFsat.contains(g),
        "g_in_JF": JF.contains(g),
        "depth": depth,
        "projective_dimension": pd,
        "JF_saturated": JFsat == JF,
    }
    item["holds"] = depth == 0
    out["iii"] = item
    # evidence only: do the hypotheses of (iii) and an isolated singularity of <f, g> go together?
    out["isolated_singularity"] = {
        "hypotheses_iii": not item["unmet"],
        "isolated": _is_m_primary(Ideal(R, [f, g]) + minors_ideal(theta, 2, R)),
    }
    return out


# ------------------------------------------------------------------ many forms


def indeg_lower_bound_check(FS: FormSystem) -> dict:
    """indeg Syz(J_F) >= floor((d_1 + ... + d_m) / m) - 1."""
    if not FS.pairwise_coprime():
        raise FormSystemError("the forms are not pairwise coprime")
    bound = sum(FS.degrees) // FS.m - 1
    r = indeg_syz(FS.jacobian_ideal())
    crit = {"d_sum": sum(FS.degrees)}
    crit.update({f"d{i + 1}": d for i, d in enumerate(FS.degrees)})
    return {"indeg": r, "bound": bound, "holds": r is not None and r >= bound,
            "char_ok": _char_flags(FS.field, crit)}


def unbalanced_inequality(degrees: Sequence[int], j: int) -> bool:
    m = len(degrees)
    d = sum(degrees) - degrees[j]
    return d - degrees[j] <= d // (m - 1) - 3


def unbalanced_depth_check(FS: FormSystem, j: int) -> dict:
    """Depth-zero criterion for one form of large degree.

    With f = f_j and G = F / f: when the degree inequality holds, depth R/J_F
    is checked to be 0 together with G^2 in J_F^sat and G^2 not in J_F.  The
    argument behind G^2 in J_F^sat needs f_j smooth, which is recorded as a
    precondition.
    """
    if not 0 <= j < FS.m:
        raise IndexError(f"form index {j} out of range")
    if not unbalanced_inequality(FS.degrees, j):
        return {"applicable": False, "j": j}
    R = FS.ring
    f = FS.forms[j]
    G = product([g for i, g in enumerate(FS.forms) if i != j], R)
    JF = FS.jacobian_ideal()
    JFsat, _ = saturate(JF, R.irrelevant_ideal())
    G2 = G * G
    indeg_JF = sum(FS.degrees) - 1
    if G2.degree() < indeg_JF:
        reason, in_JF = "degree", False
    else:
        reason, in_JF = "normal_form", JF.contains(G2)
    depth, pd = depth_and_pd(JF)
    smooth = is_smooth_form(f)
    if not smooth:
        warnings.warn(f"form {j} is not smooth; the saturation step is not backed by the criterion", stacklevel=2)
    return {
        "applicable": True,
        "j": j,
        "f_smooth": smooth,
        "G2_in_JF_sat": JFsat.contains(G2),
        "G2_in_JF": in_JF,
        "G2_membership_reason": reason,
        "depth": depth,
        "projective_dimension": pd,
        "holds": depth == 0,
    }


def form_system_report(FS: FormSystem) -> dict:
    """Everything the forms checks compute for one system, as JSON-ready data."""
    rep: Dict[str, object] = {"input": FS.to_json(), "degrees": FS.degrees, "c": FS.c}
    JF = FS.jacobian_ideal()
    rep["codim_JF"] = _codim(JF)
    rep["JF_degrees"] = sorted(set(JF.degrees()))
    rep["pairwise_coprime"] = FS.pairwise_coprime()
    if FS.n >= 3:
        rep["transversality"] = near_transversality(FS).to_json()
    if FS.m == 2:
        f, g = sorted(FS.forms, key=lambda p: p.degree())
        rep["two_forms"] = two_forms_suite(f, g)
    if rep["pairwise_coprime"]:
        rep["indeg_bound"] = indeg_lower_bound_check(FS)
    rep["unbalanced"] = [unbalanced_depth_check(FS, j) for j in range(FS.m)]
    return rep
