"""Parser and evaluator for one-variable math expressions.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?          right-associative
    atom   := NUMBER | 'y' | 'pi' | 'e' | NAME '(' expr ')' | '(' expr ')'

There is no implicit multiplication ("2y" is a syntax error) and the only
variable accepted is ``y``; unknown identifiers fail at parse time so typos
surface before any numerics run.  Evaluation is plain IEEE-754: any domain
violation (sqrt of a negative, log of a non-positive, division by zero,
overflow) raises :class:`EvalError` instead of producing NaN or infinity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import EvalError, ExprSyntaxError

__all__ = ["Expr", "parse", "evaluate"]

_CONSTANTS = {"pi": math.pi, "e": math.e}

_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "atan": math.atan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "sqrt": math.sqrt,
    "exp": math.exp,
    "ln": math.log,
    "abs": abs,
}

_VARIABLE = "y"


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Unary:
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


Node = Union[Number, Variable, Constant, Unary, Binary, Call]

_NUMBER_RE = re.compile(r"(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    """Return (kind, text, offset) triples; kinds are num/ident/op."""
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            tokens.append(("num", m.group(0), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            tokens.append(("ident", m.group(0), i))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", len(self.source))

    def _advance(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Node:
        node = self._expr()
        kind, text, offset = self._peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {text!r}", offset)
        return node

    def _expr(self) -> Node:
        node = self._term()
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text in "+-":
                self._advance()
                node = Binary(text, node, self._term())
            else:
                return node

    def _term(self) -> Node:
        node = self._factor()
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text in "*/":
                self._advance()
                node = Binary(text, node, self._factor())
            else:
                return node

    def _factor(self) -> Node:
        kind, text, _ = self._peek()
        if kind == "op" and text == "-":
            self._advance()
            return Unary(self._factor())
        return self._power()

    def _power(self) -> Node:
        node = self._atom()
        kind, text, _ = self._peek()
        if kind == "op" and text == "^":
            self._advance()
            return Binary("^", node, self._factor())
        return node

    def _atom(self) -> Node:
        kind, text, offset = self._advance()
        if kind == "num":
            return Number(float(text))
        if kind == "ident":
            if text == _VARIABLE:
                return Variable()
            if text in _CONSTANTS:
                return Constant(text)
            if text in _FUNCTIONS:
                k, t, o = self._advance()
                if not (k == "op" and t == "("):
                    raise ExprSyntaxError(f"expected '(' after {text!r}", o)
                arg = self._expr()
                k, t, o = self._advance()
                if not (k == "op" and t == ")"):
                    raise ExprSyntaxError("unbalanced parenthesis", o)
                return Call(text, arg)
            raise ExprSyntaxError(f"unknown identifier {text!r}", offset)
        if kind == "op" and text == "(":
            node = self._expr()
            k, t, o = self._advance()
            if not (k == "op" and t == ")"):
                raise ExprSyntaxError("unbalanced parenthesis", o)
            return node
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", offset)
        raise ExprSyntaxError(f"unexpected token {text!r}", offset)


def _eval_node(node: Node, y: float) -> float:
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return y
    if isinstance(node, Constant):
        return _CONSTANTS[node.name]
    if isinstance(node, Unary):
        return -_eval_node(node.operand, y)
    if isinstance(node, Call):
        x = _eval_node(node.arg, y)
        if node.name == "sqrt" and x < 0.0:
            raise EvalError("sqrt of negative value", f"sqrt({x!r})", y)
        if node.name == "ln" and x <= 0.0:
            raise EvalError("log of non-positive value", f"ln({x!r})", y)
        try:
            result = _FUNCTIONS[node.name](x)
        except (ValueError, OverflowError) as exc:
            raise EvalError(str(exc), f"{node.name}({x!r})", y) from None
        return _check_finite(result, f"{node.name}(...)", y)
    if isinstance(node, Binary):
        a = _eval_node(node.left, y)
        b = _eval_node(node.right, y)
        op = node.op
        try:
            if op == "+":
                result = a + b
            elif op == "-":
                result = a - b
            elif op == "*":
                result = a * b
            elif op == "/":
                if b == 0.0:
                    raise EvalError("division by zero", f"{a!r}/{b!r}", y)
                result = a / b
            else:  # "^"
                if a < 0.0 and b != math.floor(b):
                    raise EvalError(
                        "negative base with non-integer exponent", f"{a!r}^{b!r}", y
                    )
                result = math.pow(a, b)
        except (ValueError, OverflowError, ZeroDivisionError) as exc:
            raise EvalError(str(exc), f"{a!r}{op}{b!r}", y) from None
        return _check_finite(result, f"...{op}...", y)
    raise TypeError(f"unknown node {node!r}")


def _check_finite(value: float, node: str, y: float) -> float:
    if not math.isfinite(value):
        raise EvalError("non-finite result", node, y)
    return value


_PREC = {"+": 10, "-": 10, "*": 20, "/": 20, "neg": 25, "^": 30}


def _prec(node: Node) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return _PREC["neg"]
    return 100


def _print_node(node: Node) -> str:
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Variable):
        return _VARIABLE
    if isinstance(node, Constant):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({_print_node(node.arg)})"
    if isinstance(node, Unary):
        inner = _print_node(node.operand)
        if _prec(node.operand) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Binary):
        myp = _PREC[node.op]
        left = _print_node(node.left)
        right = _print_node(node.right)
        if node.op == "^":
            # right-associative: parenthesize an exponent tower on the left
            if _prec(node.left) <= myp:
                left = f"({left})"
            if _prec(node.right) < myp:
                right = f"({right})"
        else:
            if _prec(node.left) < myp:
                left = f"({left})"
            if _prec(node.right) <= myp:
                right = f"({right})"
        return f"{left}{node.op}{right}"
    raise TypeError(f"unknown node {node!r}")


@dataclass(frozen=True)
class Expr:
    """Parsed expression; immutable, safe to evaluate concurrently."""

    root: Node
    source: str

    def __call__(self, y: float) -> float:
        return _eval_node(self.root, y)

    def __str__(self) -> str:
        return _print_node(self.root)


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree.

    Raises :class:`ExprSyntaxError` with the byte offset of the problem.
    """
    return Expr(_Parser(source).parse(), source)


def evaluate(expr: Expr, y: float) -> float:
    """Evaluate ``expr`` at ``y``; domain violations raise :class:`EvalError`."""
    return expr(y)
