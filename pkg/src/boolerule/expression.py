"""Integrand expressions in one variable ``t``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' integer)?
    base   := number | 't' | '(' expr ')' | func '(' expr ')'
    func   := sin | cos | exp | log

Unary minus binds looser than ``^``, so ``-t^2`` is ``-(t^2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .quadrature import Polynomial

FUNCTIONS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "log": math.log}


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class EvaluationError(ArithmeticError):
    def __init__(self, node: "Node", t, message: str):
        self.node = node
        self.t = t
        super().__init__(f"{message} in '{render(node)}' at t = {t}")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, BinOp, Neg, Pow, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*|\.\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos:].strip() == "":
            break
        m = _TOKEN.match(source, pos)
        if m is None:
            start = len(source) - len(source[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {source[start]!r}", _byte_offset(source, start))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ExpressionSyntaxError(message, _byte_offset(self.source, tok[2]))

    def expect(self, text: str):
        tok = self.peek()
        if tok[1] != text or tok[0] != "op":
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.advance()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            node = Pow(node, self.integer())
        return node

    def integer(self) -> int:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.advance()[1] == "-" else 1
        tok = self.peek()
        if tok[0] != "num":
            raise self.error("expected an integer exponent")
        if not tok[1].isdigit():
            raise self.error("exponent must be an integer")
        self.advance()
        return sign * int(tok[1])

    def base(self) -> Node:
        tok = self.peek()
        kind, text, _ = tok
        if kind == "num":
            self.advance()
            return Num(Fraction(text))
        if kind == "name":
            self.advance()
            if text == "t":
                return Var()
            if text not in FUNCTIONS:
                raise self.error(f"unknown function {text!r}", tok)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(text, arg)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise self.error(f"unexpected {found}")


def parse_expression(source: str) -> Node:
    return _Parser(source).parse()


def _decimal(value: Fraction) -> str:
    """Exact decimal text for a terminating fraction (what number literals parse to)."""
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    for prime in (2, 5):
        while d % prime == 0:
            d //= prime
    if d != 1:
        raise ValueError(f"{value} has no finite decimal expansion")
    n = 1
    while (10**n) % value.denominator:
        n += 1
    whole, frac = divmod(abs(value.numerator) * 10**n // value.denominator, 10**n)
    sign = "-" if value < 0 else ""
    return f"{sign}{whole}.{str(frac).rjust(n, '0').rstrip('0')}"


_PREC = {"+": 0, "-": 0, "*": 1, "/": 1}


def render(node: Node, level: int = 0) -> str:
    """Canonical text for ``node``; parentheses only where the grammar needs them."""
    if isinstance(node, Num):
        text, own = _decimal(node.value), 3
    elif isinstance(node, Var):
        text, own = "t", 3
    elif isinstance(node, Call):
        text, own = f"{node.func}({render(node.arg)})", 3
    elif isinstance(node, Pow):
        text, own = f"{render(node.base, 3)}^{node.exponent}", 2
    elif isinstance(node, Neg):
        text, own = f"-{render(node.operand, 2)}", 2
    elif isinstance(node, BinOp):
        p = _PREC[node.op]
        sep = f" {node.op} " if p == 0 else node.op
        text, own = f"{render(node.left, p)}{sep}{render(node.right, p + 1)}", p
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return f"({text})" if own < level else text


def evaluate(node: Node, t):
    """Evaluate at ``t``. Exact when ``t`` is a Fraction and no function call is hit."""
    exact = isinstance(t, Fraction)
    if isinstance(node, Num):
        return node.value if exact else float(node.value)
    if isinstance(node, Var):
        return t
    if isinstance(node, Neg):
        return -evaluate(node.operand, t)
    if isinstance(node, BinOp):
        x, y = evaluate(node.left, t), evaluate(node.right, t)
        if node.op == "+":
            return x + y
        if node.op == "-":
            return x - y
        if node.op == "*":
            return x * y
        if y == 0:
            raise EvaluationError(node, t, "division by zero")
        return x / y
    if isinstance(node, Pow):
        x = evaluate(node.base, t)
        if x == 0 and node.exponent < 0:
            raise EvaluationError(node, t, "zero raised to a negative power")
        try:
            return x**node.exponent
        except OverflowError:
            raise EvaluationError(node, t, "overflow") from None
    if isinstance(node, Call):
        x = float(evaluate(node.arg, t))
        if node.func == "log" and x <= 0:
            raise EvaluationError(node, t, "log of a non-positive number")
        try:
            return FUNCTIONS[node.func](x)
        except (OverflowError, ValueError) as exc:
            raise EvaluationError(node, t, str(exc)) from None
    raise TypeError(f"not an expression node: {node!r}")


def has_variable(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, BinOp):
        return has_variable(node.left) or has_variable(node.right)
    if isinstance(node, (Neg,)):
        return has_variable(node.operand)
    if isinstance(node, Pow):
        return has_variable(node.base)
    return has_variable(node.arg)


def to_polynomial(node: Node) -> Polynomial | None:
    """Exact polynomial equal to ``node``, or None if it is not one."""
    if isinstance(node, Num):
        return Polynomial.constant(node.value)
    if isinstance(node, Var):
        return Polynomial.monomial(1)
    if isinstance(node, Neg):
        p = to_polynomial(node.operand)
        return None if p is None else -p
    if isinstance(node, BinOp):
        left, right = to_polynomial(node.left), to_polynomial(node.right)
        if left is None or right is None:
            return None
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.degree == 0:
            return left * (1 / right.coeffs[0])
        return None
    if isinstance(node, Pow):
        base = to_polynomial(node.base)
        if base is None or node.exponent < 0:
            return None
        out = Polynomial.constant(1)
        for _ in range(node.exponent):
            out = out * base
        return out
    return None


def constant_value(source: str):
    """Value of a t-free expression: exact when possible, float otherwise."""
    node = parse_expression(source)
    if has_variable(node):
        raise ValueError(f"{source!r} must not depend on t")
    value = evaluate(node, Fraction(0))
    return value
