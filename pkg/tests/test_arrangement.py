import itertools
import json
import warnings

import pytest

from arralg import linalg
from arralg.arrangement import (
    Arrangement,
    ArrangementError,
    CharacteristicWarning,
    delta_membership_check,
    graded_piece_equality,
    partition_law_check,
    random_generic,
    transport_check,
)
from arralg.groebner import Ideal, ideal_equal, m_power
from arralg.polycore import GF, QQ, PolynomialRing

import oracles as O

R2 = PolynomialRing(QQ, 2, ["x", "y"])
R3 = PolynomialRing(QQ, 3, ["x", "y", "z"])
X2 = PolynomialRing(QQ, 2, ["x1", "x2"])
X3 = PolynomialRing(QQ, 3, ["x1", "x2", "x3"])
F2 = PolynomialRing(GF(2), 3, ["x", "y", "z"])


def arr(R, text):
    return Arrangement.parse(R, text)


def test_normalization_and_validation():
    A = arr(R3, "2*x, y, z")
    assert A.cols[0] == (1, 0, 0)
    with pytest.raises(ArrangementError):
        arr(R3, "x, 2*x, y, z")
    with pytest.raises(ArrangementError):
        arr(R3, "x, y, x+y")
    with pytest.raises(ArrangementError):
        Arrangement(R3, [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ArrangementError):
        Arrangement(R3, [[1, 0]])


def test_json_roundtrip_and_text_forms():
    A = random_generic(R3, 5, seed=1)
    assert Arrangement.from_json(json.dumps(A.to_json())) == A
    B = Arrangement.from_json({"n": 3, "forms": ["x", "y", "z", "x+y+z"]})
    assert B.m == 4 and B.is_generic()
    C = Arrangement.from_json({"field": "GF(7)", "n": 2, "forms": [[1, 0], [0, 1], [1, 1]]})
    assert C.field.p == 7


def test_defining_polynomials():
    assert arr(X3, "x1, x2, x3").defining_polynomial() == X3.parse("x1*x2*x3")
    assert arr(R2, "x, y, x+y").defining_polynomial() == R2.parse("x^2*y + x*y^2")
    A = Arrangement(X2, [[1, 1], [2, 1], [1, -1], [1, 3]])
    # columns are scaled to a leading 1, so compare up to a unit
    assert A.defining_polynomial().monic() == X2.parse("(x1+x2)*(2*x1+x2)*(x1-x2)*(x1+3*x2)").monic()


def test_jacobian_examples():
    J = arr(X3, "x1, x2, x3").jacobian_ideal()
    assert ideal_equal(J, Ideal(X3, [X3.parse(t) for t in ("x2*x3", "x1*x3", "x1*x2")]))
    # f = x1 x2 x3 l with l = a1 x1 + a2 x2 + a3 x3: f_{x_i} = (f / (x_i l)) (a_i x_i + l)
    a = [2, 3, 5]
    A = Arrangement(X3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], a])
    l = X3.linear_form(a)
    xs = X3.gens()
    for i in range(3):
        others = [xs[j] for j in range(3) if j != i]
        assert A.jacobian_ideal().gens[i].monic() == (others[0] * others[1] * (xs[i] * a[i] + l)).monic()


def test_char2_f_not_in_jacobian():
    A = arr(F2, "x, y, z, x+y+z")
    with pytest.warns(CharacteristicWarning):
        J = A.jacobian_ideal()
    assert not J.contains(A.defining_polynomial())


def test_fold_products():
    A = arr(R2, "x, y, x+y")
    assert ideal_equal(A.fold_product_ideal(2), m_power(R2, 2))
    B = random_generic(R3, 5, seed=2)
    assert ideal_equal(B.fold_product_ideal(2), m_power(R3, 2))
    assert list(B.fold_product_ideal(5).gens) == [B.defining_polynomial()]
    assert len(B.fold_product_ideal().minimal_generators()) == 5
    with pytest.raises(ArrangementError):
        B.fold_product_ideal(0)


def test_deletion_and_restriction():
    A = arr(R3, "x, y, z, x+y+z")
    H = A.restriction(0)
    assert H.n == 2 and H.m == 3 and H.is_generic()
    assert sorted(map(str, H.forms())) == sorted(["y", "z", "y + z"])
    D = arr(R3, "x, y, z, x+y").deletion(3)
    assert D.defining_polynomial() == R3.parse("x*y*z")
    G = random_generic(R3, 5, seed=3)
    for i in range(5):
        assert G.deletion(i).is_generic()
        assert G.restriction(i).is_generic()


def test_genericity_levels():
    assert arr(R3, "x, y, z, x+y+z").genericity_level() == 3
    assert arr(R3, "x, y, z, x+y").genericity_level() == 2
    for seed in range(5):
        assert random_generic(R3, 5, seed=seed).genericity_level() >= 2


def test_coloops():
    assert arr(R3, "x, y, z, x+y").coloops() == [2]
    assert random_generic(R3, 5, seed=4).coloops() == []
    assert arr(R3, "x, y, z").coloops() == [0, 1, 2]


def separator_components(A):
    """Finest direct-sum split by brute force: S separates when rank S + rank S^c = rank."""
    F = A.field
    m = A.m

    def rk(S):
        return linalg.rank(F, [list(A.cols[j]) for j in S]) if S else 0

    seps = []
    for k in range(1, m + 1):
        for S in itertools.combinations(range(m), k):
            rest = [j for j in range(m) if j not in S]
            if rk(list(S)) + rk(rest) == A.rank and not any(set(T) < set(S) for T in seps):
                seps.append(S)
    return sorted(list(S) for S in seps)


def test_components_against_separators():
    for A in (arr(R3, "x, y, x+y, z"), random_generic(R3, 5, seed=5), arr(R3, "x, y, z"),
              arr(R3, "x, y, z, x+y+z, x-y")):
        assert A.components() == separator_components(A)
    assert arr(R3, "x, y, x+y, z").components() == [[0, 1, 2], [3]]


def test_circuits():
    A = arr(R2, "x, y, x+y")
    (C,) = A.circuits()
    assert C.indices == (0, 1, 2) and tuple(C.coeffs) == (1, 1, -1)
    assert len(random_generic(R3, 5, seed=6).circuits()) == 5
    B = random_generic(R2, 6, seed=7)
    assert len(B.circuits()) == 20


def test_random_generic_deterministic():
    assert random_generic(R3, 5, seed=9) == random_generic(R3, 5, seed=9)
    assert random_generic(R3, 5, seed=9).is_generic()


def test_delta_membership():
    assert delta_membership_check(arr(R3, "x, y, z, x+y+z"))
    assert delta_membership_check(random_generic(R3, 5, seed=10))
    assert not delta_membership_check(arr(F2, "x, y, z, x+y+z"))


def test_graded_piece_examples():
    A = random_generic(R3, 4, seed=11)
    assert graded_piece_equality(A, 4)
    assert not graded_piece_equality(A, 3)
    R4 = PolynomialRing(QQ, 4, ["x", "y", "z", "w"])
    assert graded_piece_equality(random_generic(R4, 5, seed=12), 5)


def test_graded_piece_against_oracle():
    A = random_generic(R3, 5, seed=13)
    K = O.Field()
    J = [O.as_dict(g, K) for g in A.jacobian_ideal().gens]
    I = [O.as_dict(g, K) for g in A.fold_product_ideal().gens]
    d = 2 * 5 - 3 - 1
    assert O.dim_ideal(J, 3, d, K) == O.dim_ideal(I, 3, d, K) == O.dim_ideal(I + J, 3, d, K)


def test_partition_law():
    A = arr(R3, "x, y, x+y, z")
    assert partition_law_check(A, [0, 1, 2]) == {"fold_product": True, "jacobian": True}
    with pytest.raises(ArrangementError):
        partition_law_check(random_generic(R3, 4, seed=1), [0])


def test_transport():
    A = random_generic(R3, 5, seed=14)
    assert transport_check(A, [[1, 2, 0], [0, 1, 3], [1, 0, 1]]) == {"jacobian": True, "fold_product": True}


def test_char_warning_only_when_char_divides_m():
    A = arr(PolynomialRing(GF(5), 3, ["x", "y", "z"]), "x, y, z, x+y+z")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        A.jacobian_ideal()
