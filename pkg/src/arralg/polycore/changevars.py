"""Linear changes of coordinates and transport of gradients."""

from __future__ import annotations

from typing import List, Optional, Sequence

from .. import linalg
from .field import FieldSpec
from .polynomial import Polynomial, PolynomialRing, gradient


class LinearChangeOfVariables:
    """The substitution defined by ``[x_1..x_n] * M = [y_1..y_n]``.

    ``forward`` rewrites a polynomial in x as one in y by replacing x_i with
    L_i = sum_j (M^-1)_{j,i} y_j; ``inverse`` substitutes y_j = sum_i M_{i,j} x_i.
    Both sides share the same ring (only variable names would differ).
    """

    def __init__(self, M: Sequence[Sequence], field: FieldSpec):
        self.field = field
        self.M = [[field.convert(x) for x in row] for row in M]
        self.n = len(self.M)
        if self.n == 0 or any(len(r) != self.n for r in self.M):
            raise ValueError("change of variables needs a square matrix")
        if linalg.determinant(field, self.M) == 0:
            raise ValueError("change of variables matrix is singular")
        self.Minv = linalg.inverse(field, self.M)

    def inverse_transpose(self) -> List[list]:
        return linalg.transpose(self.Minv)

    def images(self, ring: PolynomialRing, direction: str = "forward") -> List[Polynomial]:
        if ring.n != self.n or ring.field != self.field:
            raise ValueError("ring does not match the change of variables")
        if direction == "forward":
            return [ring.linear_form([self.Minv[j][i] for j in range(self.n)]) for i in range(self.n)]
        if direction == "inverse":
            return [ring.linear_form([self.M[i][j] for i in range(self.n)]) for j in range(self.n)]
        raise ValueError(f"unknown direction {direction!r}")

    def apply(self, p: Polynomial, direction: str = "forward", ring: Optional[PolynomialRing] = None) -> Polynomial:
        target = ring or p.ring
        return p.substitute(self.images(target, direction), target)


def change_of_variables(p: Polynomial, T: LinearChangeOfVariables, direction: str = "forward",
                        ring: Optional[PolynomialRing] = None) -> Polynomial:
    return T.apply(p, direction, ring)


def jacobian_transport_check(F: Polynomial, T: LinearChangeOfVariables) -> bool:
    """Chain rule check: grad G = grad F(L) * (M^-1)^T, and J_G equals the transported J_F."""
    from ..groebner.ideal import Ideal, ideal_equal

    if not F.is_homogeneous():
        raise ValueError("jacobian_transport_check needs a homogeneous polynomial")
    R = F.ring
    G = T.apply(F)
    lhs = gradient(G)
    moved = [T.apply(g) for g in gradient(F)]
    B = T.inverse_transpose()
    rhs = []
    for j in range(R.n):
        s = R.zero()
        for i in range(R.n):
            if B[i][j] != 0:
                s = s + moved[i].scale(B[i][j])
        rhs.append(s)
    if lhs != rhs:
        return False
    return ideal_equal(Ideal(R, lhs), Ideal(R, moved))
