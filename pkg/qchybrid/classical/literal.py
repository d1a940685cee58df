"""
# Polynomial Literals

Text syntax for phase-space polynomials, as used in scenario files:

    literal := term (("+" | "-") term)*
    term    := ["+" | "-"] factor ("*"? factor)*
    factor  := number | var ["^" integer]
    var     := "x" index | "k" index        (1-based, index <= n_c)

Whitespace is ignored. Examples: `"x2*k3 - x3*k2"`, `"2.5 x1^2 k2 + 1e-3"`, `"-4"`.
"""

# Std-Lib Imports
import re
from numbers import Number
from typing import List, Tuple, Union

# Local Imports
from .polynomial import PhasePolynomial

_TOKEN = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<var>[xk]\d+)|(?P<op>[-+*^])"
)


def _tokenize(text: str) -> List[Tuple[str, str]]:
    compact = "".join(text.split())
    tokens, pos = [], 0
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if m is None:
            raise ValueError(f"Invalid polynomial literal {text!r}: unexpected {compact[pos:]!r}")
        tokens.append((m.lastgroup, m.group()))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser over the token list"""

    def __init__(self, text: str, n_c: int):
        self.text = text
        self.n_c = n_c
        self.tokens = _tokenize(text)
        self.pos = 0

    def fail(self, msg: str):
        raise ValueError(f"Invalid polynomial literal {self.text!r}: {msg}")

    def peek(self) -> Tuple[str, str]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "")

    def take(self) -> Tuple[str, str]:
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> PhasePolynomial:
        if not self.tokens:
            self.fail("empty")
        result = self.term()
        while self.peek()[0] != "end":
            kind, val = self.take()
            if (kind, val) == ("op", "+"):
                result = result + self.term()
            elif (kind, val) == ("op", "-"):
                result = result - self.term()
            else:
                self.fail(f"expected '+' or '-', got {val!r}")
        return result

    def term(self) -> PhasePolynomial:
        sign = 1.0
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                sign = -sign
        result = self.factor() * sign
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                result = result * self.factor()
            elif kind in ("num", "var"):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> PhasePolynomial:
        kind, val = self.take()
        if kind == "num":
            return PhasePolynomial.constant(self.n_c, float(val))
        if kind != "var":
            self.fail(f"expected a number or variable, got {val or 'end of input'!r}")

        index = int(val[1:])
        if index < 1 or index > self.n_c:
            self.fail(f"variable {val} out of range for n_c={self.n_c}")
        monomials = PhasePolynomial.xs(self.n_c) if val[0] == "x" else PhasePolynomial.ks(self.n_c)
        base = monomials[index - 1]

        if self.peek() == ("op", "^"):
            self.take()
            kind, power = self.take()
            if kind != "num" or not power.isdigit():
                self.fail(f"exponent must be a non-negative integer, got {power!r}")
            return base ** int(power)
        return base


def parse_literal(text: Union[str, Number], n_c: int) -> PhasePolynomial:
    """Parse a polynomial literal. Plain numbers are accepted as constants."""
    if isinstance(text, bool):
        raise ValueError(f"Invalid polynomial literal {text!r}")
    if isinstance(text, Number):
        return PhasePolynomial.constant(n_c, float(text))
    if not isinstance(text, str):
        raise ValueError(f"Invalid polynomial literal {text!r}")
    return _Parser(text, n_c).parse()
