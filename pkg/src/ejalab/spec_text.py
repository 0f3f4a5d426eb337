"""Text form of algebra descriptors.

Grammar::

    Spec   := Factor (("(+)" | "⊕") Factor)*
    Factor := "R" | "spin(" INT ")" | "H(" INT "," ("R"|"C"|"H"|"O") ")"

Whitespace between tokens is ignored.  ``H(1,K)`` parses to ``R`` and
``H(2,K)`` to the matching spin factor.
"""

from __future__ import annotations

import re

from .errors import SpecSyntaxError, UsageError
from .jordan import AlgebraDescriptor, Matrix, RealLine, Spin
from .scalars import ScalarKind

_TOKEN = re.compile(r"\s*(?:(?P<sum>\(\+\)|⊕)|(?P<spin>spin\()|(?P<herm>H\()|(?P<int>\d+)"
                    r"|(?P<punct>[,)])|(?P<letter>[RCHO]))")


class SpecDomainError(SpecSyntaxError):
    """Well-formed text naming an algebra that does not exist."""


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise SpecSyntaxError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None, what: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            expected = what or repr(value or kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise SpecSyntaxError(f"expected {expected}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def spec(self) -> AlgebraDescriptor:
        factors = [self.factor()]
        while self.peek()[0] == "sum":
            self.take("sum")
            factors.append(self.factor())
        self.take("end", what="'(+)' or end of input")
        return AlgebraDescriptor(tuple(factors))

    def factor(self):
        kind, value, pos = self.peek()
        if kind == "letter" and value == "R":
            self.take("letter")
            return RealLine()
        if kind == "spin":
            self.take("spin")
            _, n, npos = self.take("int", what="an integer")
            self.take("punct", ")")
            n = int(n)
            if n < 2:
                raise SpecDomainError(f"spin(n) needs n >= 2, got {n}", self.text, npos)
            return Spin(n)
        if kind == "herm":
            self.take("herm")
            _, k, kpos = self.take("int", what="an integer")
            self.take("punct", ",")
            _, letter, lpos = self.take("letter", what="one of R, C, H, O")
            self.take("punct", ")")
            k = int(k)
            if k < 1:
                raise SpecDomainError(f"H(k,.) needs k >= 1, got {k}", self.text, kpos)
            scalar = ScalarKind.from_letter(letter)
            if scalar is ScalarKind.OCTONION and k > 2 and k != 3:
                raise SpecDomainError(
                    f"octonion matrix algebras exist only for k = 3, got H({k},O)",
                    self.text, pos)
            return Matrix(k, scalar).canonical()
        found = "end of input" if kind == "end" else repr(value)
        raise SpecSyntaxError(f"expected a factor (R, spin(n), H(k,K)), found {found}",
                              self.text, pos)


def parse_spec(text: str) -> AlgebraDescriptor:
    """Parse algebra text into a canonical descriptor."""
    if not isinstance(text, str):
        raise UsageError("algebra spec must be a string")
    return _Parser(text).spec()


def format_spec(algebra: AlgebraDescriptor) -> str:
    return algebra.text()
