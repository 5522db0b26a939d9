"""Sparse multivariate polynomials over a :class:`FieldSpec`.

A polynomial is an immutable map from exponent tuples to nonzero field
elements.  Terms are exposed in degrevlex-descending order, which is also the
printing order.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .field import FieldSpec, QQ

Exps = Tuple[int, ...]


class _Undefined:
    """Degree of the zero polynomial."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False

    def __int__(self):
        raise TypeError("the zero polynomial has no degree")

    __index__ = __int__


UNDEFINED = _Undefined()


class Monomial(tuple):
    """Exponent vector; the total degree is the sum of the entries."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(self)

    def divides(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other):
        return Monomial(a + b for a, b in zip(self, other))

    def lcm(self, other):
        return Monomial(max(a, b) for a, b in zip(self, other))


def degrevlex_key(e: Sequence[int]):
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


SHORT_NAMES = ("x", "y", "z", "w")


def default_names(n: int) -> List[str]:
    """x, y, z (and w) for small n, x1..xn beyond; used by file readers."""
    if n <= len(SHORT_NAMES):
        return list(SHORT_NAMES[:n])
    return [f"x{i + 1}" for i in range(n)]


class PolynomialRing:
    """K[x_1, ..., x_n]; variable names are used for parsing and printing only."""

    def __init__(self, field: FieldSpec = QQ, n: int = 1, names: Optional[Sequence[str]] = None):
        if n < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        if names is None:
            names = [f"x{i + 1}" for i in range(n)]
        names = [str(s) for s in names]
        if len(names) != n:
            raise ValueError("number of variable names does not match n")
        if len(set(names)) != n:
            raise ValueError("variable names must be distinct")
        self.field = field
        self.n = n
        self.names = tuple(names)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.field == other.field and self.n == other.n

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"PolynomialRing({self.field!r}, {', '.join(self.names)})"

    def with_names(self, names: Sequence[str]) -> "PolynomialRing":
        return PolynomialRing(self.field, self.n, names)

    # -- constructors --------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.n: c} if c != 0 else {})

    def gen(self, i: int) -> "Polynomial":
        """The variable x_{i+1} (0-based index)."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n or min(exps) < 0:
            raise ValueError("bad exponent vector")
        c = self.field.convert(c)
        return Polynomial(self, {exps: c} if c != 0 else {})

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.n:
            raise ValueError("coefficient vector length does not match n")
        d = {}
        for i, c in enumerate(coeffs):
            c = self.field.convert(c)
            if c != 0:
                e = [0] * self.n
                e[i] = 1
                d[tuple(e)] = c
        return Polynomial(self, d)

    def from_dict(self, terms: Dict[Sequence[int], object]) -> "Polynomial":
        F = self.field
        d = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise ValueError("bad exponent vector")
            c = F.add(d.get(e, F.zero), F.convert(c))
            if c == 0:
                d.pop(e, None)
            else:
                d[e] = c
        return Polynomial(self, d)

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def irrelevant_ideal(self):
        """The homogeneous maximal ideal generated by all variables."""
        from ..groebner.ideal import Ideal

        return Ideal(self, self.gens())

    def monomials_of_degree(self, d: int) -> List[Exps]:
        """All exponent vectors of total degree d, degrevlex-descending."""
        out: List[Exps] = []

        def rec(i, left, cur):
            if i == self.n - 1:
                out.append(tuple(cur + [left]))
                return
            for a in range(left, -1, -1):
                rec(i + 1, left - a, cur + [a])

        if d < 0:
            return []
        rec(0, d, [])
        out.sort(key=degrevlex_key, reverse=True)
        return out


class Polynomial:
    """Immutable sparse polynomial; see :class:`PolynomialRing`."""

    __slots__ = ("ring", "_d", "_sorted", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Exps, object]):
        # callers guarantee: tuple keys of length n, nonzero canonical values
        self.ring = ring
        self._d = terms
        self._sorted = None
        self._hash = None

    # -- inspection ----------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def terms(self) -> List[Tuple[Exps, object]]:
        """(exponents, coefficient) pairs in degrevlex-descending order."""
        if self._sorted is None:
            self._sorted = sorted(self._d.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)
        return self._sorted

    def as_dict(self) -> Dict[Exps, object]:
        return dict(self._d)

    def coefficient(self, exps: Sequence[int]):
        return self._d.get(tuple(exps), self.field.zero)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def degree(self):
        """Total degree, or ``UNDEFINED`` for the zero polynomial."""
        if not self._d:
            return UNDEFINED
        return max(sum(e) for e in self._d)

    def is_homogeneous(self) -> bool:
        if not self._d:
            return True
        it = iter(self._d)
        d = sum(next(it))
        return all(sum(e) == d for e in it)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._d)

    def constant_value(self):
        return self._d.get((0,) * self.ring.n, self.field.zero)

    def leading_term(self):
        t = self.terms()
        return t[0] if t else None

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self._d.items() if sum(e) == d})

    def variables(self) -> List[int]:
        used = set()
        for e in self._d:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.constant(other)
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        d = dict(self._d)
        for e, c in other._d.items():
            v = d.get(e)
            if v is None:
                d[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    d[e] = v
                else:
                    del d[e]
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self._d.items()})
        return Polynomial(self.ring, {e: -c for e, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        a, b = self._d, other._d
        if len(a) < len(b):
            a, b = b, a
        p = self.field.p
        d: Dict[Exps, object] = {}
        get = d.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = get(e)
                d[e] = ca * cb if v is None else v + ca * cb
        if p:
            d = {e: c % p for e, c in d.items() if c % p}
        else:
            d = {e: c for e, c in d.items() if c}
        return Polynomial(self.ring, d)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F.convert(c)
        if c == 0:
            return self.ring.zero()
        p = F.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._d.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self._d.items()})

    def mul_monomial(self, exps: Sequence[int], c=None) -> "Polynomial":
        q = self if c is None else self.scale(c)
        return Polynomial(self.ring, {tuple(x + y for x, y in zip(e, exps)): v for e, v in q._d.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            q, r = self.divmod(other)
            if r:
                raise ArithmeticError("division is not exact")
            return q
        return self.scale(self.field.inv(self.field.convert(other)))

    def divmod(self, g: "Polynomial"):
        """Division by a single polynomial with respect to degrevlex."""
        g = self._check(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        lg, lc = g.terms()[0]
        inv = F.inv(lc)
        q: Dict[Exps, object] = {}
        r: Dict[Exps, object] = {}
        cur = self
        while cur:
            e, c = cur.terms()[0]
            if all(a >= b for a, b in zip(e, lg)):
                m = tuple(a - b for a, b in zip(e, lg))
                cq = F.mul(c, inv)
                q[m] = cq
                cur = cur - g.mul_monomial(m, cq)
            else:
                r[e] = c
                cur = cur - Polynomial(self.ring, {e: c})
        return Polynomial(self.ring, q), Polynomial(self.ring, r)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.field.inv(self.terms()[0][1]))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # -- calculus and substitution --------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        return partial_derivative(self, i)

    def substitute(self, images: Sequence["Polynomial"], ring: Optional[PolynomialRing] = None) -> "Polynomial":
        """Evaluate at ``x_i -> images[i]``; the images live in ``ring``."""
        if len(images) != self.ring.n:
            raise ValueError("need one image per variable")
        target = ring if ring is not None else images[0].ring
        powers: List[Dict[int, Polynomial]] = [{0: target.one(), 1: g} for g in images]

        def pw(i, k):
            tab = powers[i]
            if k not in tab:
                tab[k] = pw(i, k - 1) * images[i]
            return tab[k]

        out = target.zero()
        for e, c in self.terms():
            t = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    def evaluate(self, point: Sequence):
        F = self.field
        pt = [F.convert(v) for v in point]
        s = F.zero
        for e, c in self._d.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t = F.mul(t, pow(v, k, F.p) if F.p else v ** k)
            s = F.add(s, t)
        return s

    # -- printing ------------------------------------------------------------

    def format(self, compact: bool = False, names: Optional[Sequence[str]] = None) -> str:
        """Degrevlex-ordered text.

        The default style is ``8*x1^3 + 21*x1^2*x2 - 7*x2^3``; ``compact=True``
        gives ``8x1^3+21x1^2x2-7x2^3``.  Both parse back to the same polynomial.
        """
        if not self._d:
            return "0"
        names = names or self.ring.names
        F = self.field
        mul = "" if compact else "*"
        parts = []
        for k, (e, c) in enumerate(self.terms()):
            s = F.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = mul.join(names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a)
            if mono:
                if s == "1":
                    body = mono
                elif "/" in s and compact:
                    body = f"{s}*{mono}"
                else:
                    body = f"{s}{mul}{mono}"
            else:
                body = s
            if k == 0:
                parts.append(("-" if neg else "") + body)
            elif compact:
                parts.append(("-" if neg else "+") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Formal derivative with respect to x_{i+1} (0-based ``i``)."""
    n = f.ring.n
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    p = f.field.p
    d = {}
    for e, c in f._d.items():
        k = e[i]
        if k == 0:
            continue
        v = (c * k) % p if p else c * k
        if v:
            e2 = list(e)
            e2[i] -= 1
            d[tuple(e2)] = v
    return Polynomial(f.ring, d)


def gradient(f: Polynomial) -> List[Polynomial]:
    return [partial_derivative(f, i) for i in range(f.ring.n)]


def euler_combination(f: Polynomial) -> Polynomial:
    """Sum of x_i * df/dx_i; for a form of degree d this equals d*f."""
    if not f.is_homogeneous():
        raise ValueError("euler_combination needs a homogeneous polynomial")
    out = f.ring.zero()
    for i, g in enumerate(gradient(f)):
        out = out + f.ring.gen(i) * g
    return out


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise ValueError("polynomials live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def product(polys: Iterable[Polynomial], ring: PolynomialRing) -> Polynomial:
    out = ring.one()
    for g in polys:
        out = out * g
    return out
