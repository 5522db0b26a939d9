"""Exact coefficient fields: the rationals (gmpy2 ``mpq``) and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

# Prime fields are capped so that products of two reduced residues fit in int64
# (the modular kernels rely on this).
MAX_PRIME = (1 << 31) - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    i = 5
    while i * i <= p:
        if p % i == 0 or p % (i + 2) == 0:
            return False
        i += 6
    return True


class FieldSpec:
    """A coefficient field, either Q (``p == 0``) or F_p for a prime ``p``.

    Rational elements are ``gmpy2.mpq`` values (always in lowest terms with a
    positive denominator); prime-field elements are Python ints in ``[0, p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p > MAX_PRIME:
                raise ValueError(f"prime fields are limited to p <= {MAX_PRIME}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        if int(p) == 0:
            raise ValueError("use FieldSpec.rationals() for characteristic zero")
        return cls(p)

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        """Parse ``"Q"``, ``"F2"``, ``{"p": 2}`` or an int."""
        if isinstance(obj, dict):
            return cls(int(obj["p"]))
        if isinstance(obj, int):
            return cls(obj)
        s = str(obj).strip().upper()
        if s in ("Q", "QQ"):
            return cls(0)
        if s.startswith("F") or s.startswith("GF"):
            return cls(int(s.lstrip("GF").strip("()")))
        return cls(int(s))

    def to_json(self):
        return "Q" if self.p == 0 else {"p": self.p}

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def characteristic(self) -> int:
        return self.p

    def divides_char(self, k: int) -> bool:
        """True when ``k`` is zero in this field (char divides k)."""
        return self.p != 0 and k % self.p == 0

    # -- elements -----------------------------------------------------------

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        p = self.p
        if isinstance(x, str):
            x = x.strip()
            if "/" in x:
                a, b = x.split("/", 1)
                return self.div(self.convert(int(a)), self.convert(int(b)))
            return self.convert(int(x))
        if isinstance(x, Fraction):
            if p:
                return self.div(x.numerator % p, self.convert(x.denominator))
            return mpq(x.numerator, x.denominator)
        if p:
            if type(x) is type(mpq(0)):
                return self.div(int(x.numerator) % p, self.convert(int(x.denominator)))
            return int(x) % p
        return mpq(x)

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, c) -> str:
        if self.p:
            return str(int(c))
        c = mpq(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def to_json_value(self, c):
        """Integers stay ints, other rationals become ``"a/b"`` strings."""
        if self.p or mpq(c).denominator == 1:
            return int(c)
        return self.format(c)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "FieldSpec(Q)" if self.p == 0 else f"FieldSpec(F_{self.p})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)
