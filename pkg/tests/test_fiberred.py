import itertools
import warnings

import pytest

from arralg.arrangement import Arrangement, random_generic
from arralg.fiberred import (
    analytic_spread,
    arrangement_reduction_number,
    colon_infinity_reduction_test,
    fiber_criterion,
    fiber_kernel_by_elimination,
    g_infinity_check,
    is_free,
    is_linear_type,
    key_lemma_check,
    mu_I_squared,
    orlik_terao_ideal,
    rees_ideal,
    rees_is_ci,
    rees_presentation,
    reduction_number,
    replay_certificate,
)
from arralg.groebner import Ideal, ideal_equal, m_power
from arralg.polycore import GF, QQ, PolynomialRing, product

import oracles as O

R2 = PolynomialRing(QQ, 2, ["x", "y"])
R3 = PolynomialRing(QQ, 3, ["x", "y", "z"])
F2 = PolynomialRing(GF(2), 3, ["x", "y", "z"])


def arr(R, text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return Arrangement.parse(R, text)


def jac(A):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return A.jacobian_ideal()


def power_products(gens, k, R):
    return [product([gens[i] for i in c], R) for c in itertools.combinations_with_replacement(range(len(gens)), k)]


def oracle_reduction_holds(A, r):
    K = O.Field(A.ring.field.characteristic())
    I = [O.as_dict(A.L(i), K) for i in range(A.m)]
    J = [O.as_dict(g, K) for g in jac(A).gens]
    return O.reduction_holds(I, J, A.n, r, K)


def test_orlik_terao_rank_two():
    P = orlik_terao_ideal(arr(R2, "x, y, x+y"))
    assert len(P.Q.gens) == 1
    S = P.ring
    assert ideal_equal(P.Q, Ideal(S, [S.parse("T2*T3 + T1*T3 - T1*T2")]))


def test_orlik_terao_against_elimination():
    for A in (arr(R2, "x, y, x+y, x-y"), random_generic(R3, 5, seed=1), arr(R3, "x, y, z, x+y")):
        assert ideal_equal(orlik_terao_ideal(A).Q, fiber_kernel_by_elimination(A))


def test_orlik_terao_quadrics_rank_two():
    A = random_generic(R2, 4, seed=2)
    Q = orlik_terao_ideal(A).Q
    mins = Q.minimal_generators()
    assert len(mins) == 3 and all(g.degree() == 2 for g in mins)


def test_single_circuit_relation():
    A = random_generic(R3, 4, seed=3)
    P = orlik_terao_ideal(A)
    assert len(P.Q.gens) == 1 and P.Q.gens[0].degree() == 3


def test_analytic_spread():
    assert analytic_spread(random_generic(R3, 5, seed=4)) == 3
    assert analytic_spread(arr(R2, "x, y, x+y, x-y")) == 2


def test_fiber_criterion_examples():
    assert fiber_criterion(random_generic(R3, 4, seed=5))
    assert fiber_criterion(arr(R3, "x, y, x+y, z"))
    assert not fiber_criterion(arr(F2, "x, y, z, x+y+z"))


def test_colon_infinity_examples():
    A = random_generic(R3, 4, seed=6)
    assert colon_infinity_reduction_test(jac(A), A.fold_product_ideal())
    C = arr(F2, "x, y, z, x+y+z")
    assert not colon_infinity_reduction_test(jac(C), C.fold_product_ideal())
    I = A.fold_product_ideal()
    assert colon_infinity_reduction_test(I, I)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_rank_two_reduction_number_one(m):
    A = random_generic(R2, m, seed=m)
    cert = arrangement_reduction_number(A)
    assert cert.r == 1 and replay_certificate(cert)
    assert oracle_reduction_holds(A, 1)


def test_generic_3_5_reduction_and_oracle():
    A = random_generic(R3, 5, seed=7)
    cert = arrangement_reduction_number(A)
    assert cert.success and cert.r <= 2
    assert cert.double_checked
    assert replay_certificate(cert)
    assert oracle_reduction_holds(A, cert.r)
    if cert.r > 0:
        assert not oracle_reduction_holds(A, cert.r - 1)


def test_xyz_sum_reduction_minimal():
    A = arr(R3, "x, y, z, x+y+z")
    cert = arrangement_reduction_number(A)
    assert cert.success
    assert oracle_reduction_holds(A, cert.r)
    assert cert.r == 0 or not oracle_reduction_holds(A, cert.r - 1)


def test_char2_reduction_fails():
    A = arr(F2, "x, y, z, x+y+z")
    cert = arrangement_reduction_number(A, k_max=4)
    assert not cert.success
    assert not replay_certificate(cert)
    assert not oracle_reduction_holds(A, 4)


def test_coloop_reduction():
    A = arr(R3, "x, y, x+y, z")
    cert = arrangement_reduction_number(A)
    assert cert.success and replay_certificate(cert)
    assert fiber_criterion(A)


def test_certificate_json_shape():
    cert = arrangement_reduction_number(random_generic(R2, 4, seed=8))
    js = cert.to_json(combinations=True)
    assert js["r"] == 1
    assert all(w["status"] == "member" for w in js["witnesses"])
    assert js["combination_basis"]


def test_reduction_number_non_equigenerated():
    # J = <x^2, y^2> inside m^2 in two variables: m^4 = J m^2, m^3 != J m
    I = m_power(R2, 2)
    J = Ideal(R2, [R2.parse("x^2"), R2.parse("y^2")])
    cert = reduction_number(J, I, 3)
    assert cert.r == 1 and replay_certificate(cert)


def test_key_lemma_check():
    rep = key_lemma_check(random_generic(R3, 5, seed=9))
    assert rep["holds"] and rep["generic_precondition"] and rep["failures"] == []


@pytest.mark.parametrize("m,expected", [(3, 5), (4, 7), (5, 9)])
def test_mu_I_squared(m, expected):
    A = random_generic(R2, m, seed=10 + m)
    assert mu_I_squared(A) == expected
    K = O.Field()
    sq = [O.as_dict(p, K) for p in power_products([A.L(i) for i in range(m)], 2, R2)]
    assert O.dim_ideal(sq, 2, 2 * (m - 1), K) == expected


def test_mu_I_squared_rank_check():
    with pytest.raises(ValueError):
        mu_I_squared(random_generic(R3, 4, seed=1))


def test_rees_of_two_variables():
    I = Ideal(R2, [R2.parse("x"), R2.parse("y")])
    P = rees_presentation(I)
    S = P.ring
    assert ideal_equal(P.rees, Ideal(S, [S.parse("y*T1 - x*T2")]))
    assert is_linear_type(I, P)


def test_monomial_cover_linear_type():
    assert is_linear_type(Ideal(R3, [R3.parse(t) for t in ("x*y", "x*z", "y*z")]))


def test_m_squared_not_linear_type():
    I = m_power(R2, 2)
    P = rees_presentation(I)
    assert not is_linear_type(I, P)
    # a pure T-relation of T-degree 2 sits among the Rees generators
    pure = [g for g in P.rees.gens if all(sum(e[:2]) == 0 for e, _ in g.terms())]
    assert pure and all(g.degree() == 2 for g in pure)


def test_free_arrangement():
    A = arr(R3, "x, y, z, x+y")
    P = rees_presentation(jac(A))
    assert is_free(A) and rees_is_ci(A, P)
    assert len(P.rees.minimal_generators()) == 2
    assert len(P.symmetric.minimal_generators()) == 2


def test_generic_3_4_not_free():
    A = random_generic(R3, 4, seed=12)
    assert not is_free(A)
    assert not rees_is_ci(A)
    assert is_linear_type(jac(A))


def test_boole_free():
    assert is_free(arr(R3, "x, y, z"))


def test_g_infinity():
    assert g_infinity_check(jac(random_generic(R3, 5, seed=13)))["holds"]
    assert g_infinity_check(jac(arr(R3, "x, y, z, x+y")))["holds"]
    rep = g_infinity_check(m_power(R2, 2))
    assert not rep["holds"] and rep["first_failure"] is not None


def test_rees_elimination_matches_symmetric_free_case():
    A = arr(R3, "x, y, z, x+y")
    J = jac(A)
    Rees, gens = rees_ideal(J)
    assert len(gens) == 3 and len(Rees.minimal_generators()) == 2
