from fractions import Fraction

import pytest

from arralg.polycore import (
    GF,
    QQ,
    UNDEFINED,
    LinearChangeOfVariables,
    PolynomialRing,
    PolynomialSyntaxError,
    default_names,
    euler_combination,
    jacobian_transport_check,
    partial_derivative,
    poly_arith,
)

R = PolynomialRing(QQ, 2, ["x", "y"])
R2 = PolynomialRing(GF(2), 2, ["x", "y"])
X = PolynomialRing(QQ, 2, ["x1", "x2"])
Y = PolynomialRing(QQ, 2, ["y1", "y2"])
QUARTIC = "(x1+x2)*(2*x1+x2)*(x1-x2)*(x1+3*x2)"


def test_difference_of_squares():
    assert poly_arith(R.parse("x+y"), R.parse("x-y"), "mul") == R.parse("x^2-y^2")


def test_times_zero():
    assert poly_arith(R.parse("x^3+y"), R.zero(), "mul").is_zero()


def test_ring_mismatch():
    with pytest.raises(ValueError):
        poly_arith(R.parse("x"), R2.parse("x"), "add")


def test_zero_degree_is_undefined():
    assert R.zero().degree() is UNDEFINED
    assert R.parse("x*y^2").degree() == 3


def test_parse_error_position():
    with pytest.raises(PolynomialSyntaxError) as ei:
        R.parse("x+*y")
    assert ei.value.position == 2


def test_parse_unknown_name():
    with pytest.raises(PolynomialSyntaxError):
        R.parse("x+z")


def test_rational_coefficients_roundtrip():
    p = R.parse("1/2*x^2 - 3/4*y^2")
    assert p.coefficient((2, 0)) == Fraction(1, 2)
    assert R.parse(p.format()) == p


def test_field_conversion_and_validation():
    assert GF(7).convert(Fraction(1, 2)) == 4
    with pytest.raises(ValueError):
        GF(6)


def test_default_names():
    assert default_names(3) == ["x", "y", "z"]
    assert default_names(5) == ["x1", "x2", "x3", "x4", "x5"]


def test_derivative_of_product_of_variables():
    assert partial_derivative(X.parse("x1*x2"), 0) == X.parse("x2")


def test_derivative_vanishes_in_char_p():
    assert partial_derivative(R2.parse("x^2*y"), 0).is_zero()


def test_derivative_index_error():
    with pytest.raises(IndexError):
        partial_derivative(R.parse("x"), 5)


def test_euler_examples():
    T = PolynomialRing(QQ, 3, ["x", "y", "z"])
    assert euler_combination(T.parse("x*y*z")) == T.parse("3*x*y*z")
    assert euler_combination(R2.parse("x^3*y+y^4")).is_zero()
    F = X.parse(QUARTIC)
    assert euler_combination(F) == F * 4
    with pytest.raises(ValueError):
        euler_combination(R.parse("x^2+y"))


# worked two-variable example: exact strings


def test_quartic_partials_text():
    F = X.parse(QUARTIC)
    assert str(partial_derivative(F, 0)) == "8*x1^3 + 21*x1^2*x2 + 2*x1*x2^2 - 7*x2^3"
    assert str(partial_derivative(F, 1)) == "7*x1^3 + 2*x1^2*x2 - 21*x1*x2^2 - 12*x2^3"


def test_transport_golden_vectors():
    F = X.parse(QUARTIC)
    T = LinearChangeOfVariables([[1, 2], [1, 1]], QQ)
    G = T.apply(F, ring=Y)
    assert G == Y.parse("y1*y2*(-3*y1+2*y2)*(5*y1-2*y2)")
    assert str(partial_derivative(G, 0)) == "-45*y1^2*y2 + 32*y1*y2^2 - 4*y2^3"
    assert str(partial_derivative(G, 1)) == "-15*y1^3 + 32*y1^2*y2 - 12*y1*y2^2"
    assert str(T.apply(partial_derivative(F, 0), ring=Y)) == "-30*y1^3 + 19*y1^2*y2 + 8*y1*y2^2 - 4*y2^3"
    assert str(T.apply(partial_derivative(F, 1), ring=Y)) == "-15*y1^3 - 13*y1^2*y2 + 20*y1*y2^2 - 4*y2^3"
    assert jacobian_transport_check(F, T)


def test_identity_change():
    F = X.parse(QUARTIC)
    T = LinearChangeOfVariables([[1, 0], [0, 1]], QQ)
    assert T.apply(F) == F
    assert jacobian_transport_check(F, T)


def test_transport_three_variables():
    T3 = PolynomialRing(QQ, 3, ["x", "y", "z"])
    M = LinearChangeOfVariables([[2, 1, 0], [-1, 3, 1], [0, 5, -2]], QQ)
    assert jacobian_transport_check(T3.parse("x*y*z*(x+y+z)"), M)


def test_singular_change_rejected():
    with pytest.raises(ValueError):
        LinearChangeOfVariables([[1, 2], [2, 4]], QQ)
