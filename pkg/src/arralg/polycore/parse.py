"""Text syntax for polynomials.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (['*'|'/'] power | power)*      juxtaposition multiplies
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names are matched longest-first against the ring's variable names; the
canonical names ``x1..xn`` are always accepted as well.  ``/`` only divides
by nonzero constants, so ``3/4x1`` means ``(3/4)*x1``.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .polynomial import Polynomial, PolynomialRing


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset of the problem when known."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


_INT = re.compile(r"\d+")


def _tokenize(text: str, names: Dict[str, int]) -> List[Tuple[str, object, int]]:
    by_len = sorted(names, key=len, reverse=True)
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        m = _INT.match(text, i)
        if m:
            toks.append(("int", int(m.group()), i))
            i = m.end()
            continue
        for name in by_len:
            if text.startswith(name, i):
                toks.append(("var", names[name], i))
                i += len(name)
                break
        else:
            raise PolynomialSyntaxError(f"unexpected character {ch!r} at position {i} in {text!r}", i)
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolynomialRing):
        names = {f"x{i + 1}": i for i in range(ring.n)}
        names.update({s: i for i, s in enumerate(ring.names)})
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text, names)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        if self.pos >= len(self.toks):
            raise PolynomialSyntaxError(f"unexpected end of input in {self.text!r}", len(self.text))
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind!r} at position {tok[2]} in {self.text!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolynomialSyntaxError("empty polynomial text", 0)
        p = self.expr()
        if self.pos != len(self.toks):
            raise PolynomialSyntaxError(f"trailing input at position {self.toks[self.pos][2]} in {self.text!r}",
                                        self.toks[self.pos][2])
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while True:
            k = self.peek()
            if k == "*":
                self.take()
                acc = acc * self.power()
            elif k == "/":
                self.take()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise PolynomialSyntaxError(f"division by a non-constant or zero in {self.text!r}")
                acc = acc / d.constant_value()
            elif k in ("int", "var", "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take("int")[1]
            base = base ** e
        return base

    def atom(self) -> Polynomial:
        k = self.peek()
        if k == "int":
            return self.ring.constant(self.take()[1])
        if k == "var":
            return self.ring.gen(self.take()[1])
        if k == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if k is None:
            raise PolynomialSyntaxError(f"unexpected end of input in {self.text!r}", len(self.text))
        raise PolynomialSyntaxError(f"unexpected {k!r} at position {self.toks[self.pos][2]} in {self.text!r}",
                                    self.toks[self.pos][2])


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    return _Parser(text, ring).parse()
