"""Expression language for generating functions.

Grammar (whitespace ignored, explicit ``*`` required)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' '-'? INT)?
    atom    := INT | 't' | 't1' | 't2' | 's' | '(' expr ')'

So ``^`` binds tighter than unary minus, which binds tighter than ``*``
and ``/``; binary operators associate to the left.  ``-2^2`` is ``-(2^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ExpressionSyntaxError, InadmissibleDenominator, NonRationalStructure
from .exact import LaurentPoly
from .series import BIVARIATE, UNIVARIATE, RationalGF

VARIABLES = ("t", "t1", "t2", "s")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: int


Expression = Union[Num, Var, Neg, BinOp, Pow]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            word = text[i:j]
            if word not in VARIABLES:
                raise ExpressionSyntaxError(i, {"t", "t1", "t2", "s"}, text)
            tokens.append(("VAR", word, i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ExpressionSyntaxError(i, {"INT", "variable", "operator", "("}, text)
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def kind(self) -> str:
        return self.tokens[self.pos][0]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        raise ExpressionSyntaxError(self.tokens[self.pos][2], expected, self.text)

    def expect(self, kind: str):
        if self.kind != kind:
            self.fail({kind})
        return self.advance()

    def parse(self) -> Expression:
        node = self.expr()
        if self.kind != "EOF":
            self.fail({"+", "-", "*", "/", "end of input"})
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self.kind in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self.kind in ("*", "/"):
            op = self.advance()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expression:
        if self.kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.kind == "^":
            self.advance()
            sign = 1
            if self.kind == "-":
                self.advance()
                sign = -1
            if self.kind != "INT":
                self.fail({"INT"} if sign < 0 else {"INT", "-"})
            return Pow(base, sign * int(self.advance()[1]))
        return base

    def atom(self) -> Expression:
        kind = self.kind
        if kind == "INT":
            return Num(int(self.advance()[1]))
        if kind == "VAR":
            return Var(self.advance()[1])
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail({"INT", "t", "t1", "t2", "s", "(", "-"})


def parse(text: str) -> Expression:
    """Parse an expression; raises :class:`ExpressionSyntaxError` with a byte offset."""
    return _Parser(text).parse()


def render(e: Expression) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{render(e.operand)})"
    if isinstance(e, BinOp):
        return f"({render(e.left)} {e.op} {render(e.right)})"
    if isinstance(e, Pow):
        base = render(e.base)
        if isinstance(e.base, Pow):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    raise TypeError(f"not an expression node: {e!r}")


def variables_of(e: Expression) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Num):
        return set()
    if isinstance(e, Neg):
        return variables_of(e.operand)
    if isinstance(e, BinOp):
        return variables_of(e.left) | variables_of(e.right)
    return variables_of(e.base)


# ---------------------------------------------------------------------------
# Conversion to a rational generating function
# ---------------------------------------------------------------------------


def _markers_for(names: set[str]) -> tuple[str, ...]:
    if "t" in names and names & {"t1", "t2"}:
        raise NonRationalStructure("mixes t with t1/t2")
    return BIVARIATE if names & {"t1", "t2"} else UNIVARIATE


def _ratfun(e: Expression, variables: tuple[str, ...]) -> tuple[LaurentPoly, LaurentPoly]:
    """Evaluate to an unreduced (num, den) pair; monomial denominators are folded in."""
    one = LaurentPoly.constant(1, variables)
    if isinstance(e, Num):
        return one * e.value, one
    if isinstance(e, Var):
        return LaurentPoly.var(e.name, variables), one
    if isinstance(e, Neg):
        n, d = _ratfun(e.operand, variables)
        return -n, d
    if isinstance(e, Pow):
        n, d = _ratfun(e.base, variables)
        k = e.exponent
        if k < 0:
            if n.is_zero():
                raise ZeroDivisionError("negative power of an expression that is identically zero")
            n, d, k = d, n, -k
        return _fold(n ** k, d ** k)
    a, b = _ratfun(e.left, variables)
    c, d = _ratfun(e.right, variables)
    if e.op == "+":
        return _fold(a * d + c * b, b * d) if b != d else _fold(a + c, b)
    if e.op == "-":
        return _fold(a * d - c * b, b * d) if b != d else _fold(a - c, b)
    if e.op == "*":
        return _fold(a * c, b * d)
    if c.is_zero():
        raise ZeroDivisionError("division by an expression that is identically zero")
    return _fold(a * d, b * c)


def _fold(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_monomial():
        return num.exact_div(den), den * 0 + 1
    if num.is_zero():
        return num, den * 0 + 1
    return num, den


def to_rational_gf(e: Expression | str) -> RationalGF:
    """Convert to ``N(s)/D(s)`` with Laurent coefficients in the markers.

    Common powers of s are cancelled; when the denominator's s^0 coefficient
    is a single monomial it is divided out so that it becomes 1.
    """
    if isinstance(e, str):
        e = parse(e)
    markers = _markers_for(variables_of(e))
    variables = ("s",) + markers
    num, den = _ratfun(e, variables)
    # shift so the smallest power of s present in num or den is s^0
    lows = [p.degree_range(0)[0] for p in (num, den) if not p.is_zero()]
    shift = -min(lows)
    s_shift = LaurentPoly.monomial((shift,) + (0,) * len(markers), 1, variables)
    num, den = num * s_shift, den * s_shift
    num_parts, den_parts = num.split("s"), den.split("s")
    if min(den_parts) > 0 or 0 not in den_parts:
        raise InadmissibleDenominator("denominator vanishes at s = 0")
    if num_parts and min(num_parts) < 0:
        raise NonRationalStructure("negative power of s survives normalization")
    lead = den_parts[0]
    if lead.is_monomial():
        lead_full = lead.with_variables(variables)
        num, den = num.exact_div(lead_full), den.exact_div(lead_full)
    return RationalGF.from_laurent(num, den, markers)
