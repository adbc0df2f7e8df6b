"""Recursive-descent parser and evaluator for scalar expressions in the time variable ``t``.

Grammar (highest binding last)::

    expression     := additive END
    additive       := multiplicative (("+" | "-") multiplicative)*
    multiplicative := unary (("*" | "/") unary)*
    unary          := ("-" | "+") unary | power
    power          := primary ("^" unary)?
    primary        := NUMBER | "t" | NAME | FUNC "(" additive ")" | "(" additive ")"

Power is right-associative (``2^3^2`` is ``2^(3^2)``) and binds tighter than unary minus
(``-2^2`` is ``-4``). Implicit multiplication such as ``2t`` is a syntax error.
"""

import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Union

import numpy as np

from ..errors import (
    ExpressionEvaluationError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)

Number = Union[float, np.ndarray]

FUNCTIONS: Dict[str, Callable[[Number], Number]] = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "abs": np.abs,
}

CONSTANTS: Dict[str, float] = {"pi": math.pi, "e": math.e}

VARIABLE = "t"

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


# AST nodes


@dataclass(frozen=True)
class Literal:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Negate:
    operand: "Node"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    function: str
    argument: "Node"


Node = Union[Literal, Variable, Negate, BinaryOp, Call]


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "op" or "end"
    text: str
    position: int


def tokenize(source: str) -> List[Token]:
    """Split an expression string into tokens, ending with an ``end`` token."""
    tokens: List[Token] = []
    position = 0
    length = len(source)
    while position < length:
        if source[position:].strip() == "":
            break
        match = _TOKEN_RE.match(source, position)
        if match is None or match.end() == position:
            offset = position + (len(source[position:]) - len(source[position:].lstrip()))
            raise ExpressionSyntaxError(
                f"unexpected character {source[offset]!r}", source, offset
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", length))
    return tokens


class _Parser:
    """Single-use parser over a token list."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, message: str, token: Token) -> ExpressionSyntaxError:
        return ExpressionSyntaxError(message, self.source, token.position)

    def _expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = token.text or "end of input"
            raise self._error(f"expected {text!r} but found {found!r}", token)
        return self._advance()

    def parse(self) -> Node:
        node = self._additive()
        if self.current.kind != "end":
            raise self._error(f"unexpected token {self.current.text!r}", self.current)
        return node

    def _additive(self) -> Node:
        node = self._multiplicative()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            node = BinaryOp(op, node, self._multiplicative())
        return node

    def _multiplicative(self) -> Node:
        node = self._unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self._advance().text
            node = BinaryOp(op, node, self._unary())
        return node

    def _unary(self) -> Node:
        if self.current.kind == "op" and self.current.text == "-":
            self._advance()
            return Negate(self._unary())
        if self.current.kind == "op" and self.current.text == "+":
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> Node:
        base = self._primary()
        if self.current.kind == "op" and self.current.text == "^":
            self._advance()
            return BinaryOp("^", base, self._unary())
        return base

    def _primary(self) -> Node:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Literal(float(token.text))
        if token.kind == "name":
            self._advance()
            if token.text == VARIABLE:
                return Variable()
            if token.text in FUNCTIONS:
                self._expect("(")
                argument = self._additive()
                self._expect(")")
                return Call(token.text, argument)
            if token.text in CONSTANTS:
                return Literal(CONSTANTS[token.text])
            raise UnknownIdentifierError(
                f"unknown identifier {token.text!r}", self.source, token.position
            )
        if token.kind == "op" and token.text == "(":
            self._advance()
            node = self._additive()
            self._expect(")")
            return node
        found = token.text or "end of input"
        raise self._error(f"unexpected token {found!r}", token)


def _checked(value: Number, what: str) -> Number:
    if not np.all(np.isfinite(value)):
        raise ExpressionEvaluationError(f"non-finite value produced by {what}")
    return value


def _evaluate_node(node: Node, t: Number) -> Number:
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Variable):
        return t
    if isinstance(node, Negate):
        return -_evaluate_node(node.operand, t)
    if isinstance(node, Call):
        argument = _evaluate_node(node.argument, t)
        return _checked(FUNCTIONS[node.function](argument), f"{node.function}()")
    left = _evaluate_node(node.left, t)
    right = _evaluate_node(node.right, t)
    if node.op == "+":
        return _checked(left + right, "'+'")
    if node.op == "-":
        return _checked(left - right, "'-'")
    if node.op == "*":
        return _checked(left * right, "'*'")
    if node.op == "/":
        if np.any(np.asarray(right) == 0.0):
            raise ExpressionEvaluationError("division by zero")
        return _checked(left / right, "'/'")
    return _checked(np.power(left, right), "'^'")


def _contains_variable(node: Node) -> bool:
    if isinstance(node, Variable):
        return True
    if isinstance(node, Literal):
        return False
    if isinstance(node, Negate):
        return _contains_variable(node.operand)
    if isinstance(node, Call):
        return _contains_variable(node.argument)
    return _contains_variable(node.left) or _contains_variable(node.right)


def _print_node(node: Node) -> str:
    if isinstance(node, Literal):
        return repr(float(node.value))
    if isinstance(node, Variable):
        return VARIABLE
    if isinstance(node, Negate):
        return f"(-{_print_node(node.operand)})"
    if isinstance(node, Call):
        return f"{node.function}({_print_node(node.argument)})"
    return f"({_print_node(node.left)} {node.op} {_print_node(node.right)})"


@dataclass(frozen=True)
class Expression:
    """A parsed expression; immutable, so it can be shared across threads."""

    source: str
    ast: Node

    @property
    def is_constant(self) -> bool:
        """True when the expression does not depend on ``t``."""
        return not _contains_variable(self.ast)

    def evaluate(self, t: Number) -> Number:
        """Evaluate at a scalar ``t`` (returns float) or an array of times (returns array)."""
        with np.errstate(all="ignore"):
            if np.ndim(t) == 0:
                t_value = float(t)
                if not math.isfinite(t_value):
                    raise ExpressionEvaluationError(f"time must be finite, got {t!r}")
                return float(_evaluate_node(self.ast, np.float64(t_value)))
            times = np.asarray(t, dtype=float)
            if not np.all(np.isfinite(times)):
                raise ExpressionEvaluationError("time grid contains non-finite values")
            value = _evaluate_node(self.ast, times)
            return np.broadcast_to(np.asarray(value, dtype=float), times.shape).copy()

    __call__ = evaluate

    def to_source(self) -> str:
        """Canonical, fully parenthesised text that parses back to the same tree."""
        return _print_node(self.ast)

    def __str__(self) -> str:
        return self.source


def parse(source: str) -> Expression:
    """Parse an expression string.

    Args:
        source: Expression text, e.g. ``"(1/3)*exp(-t)*cos(t)"``

    Returns:
        The parsed Expression

    Raises:
        ExpressionSyntaxError: Malformed input (carries the offending position)
        UnknownIdentifierError: An identifier other than t, a function or a constant
    """
    if not isinstance(source, str) or not source.strip():
        raise ExpressionSyntaxError("expression must be a nonempty string", str(source), 0)
    return Expression(source, _Parser(source).parse())


def evaluate(expression: Expression, t: Number) -> Number:
    """Evaluate an expression at ``t``; see ``Expression.evaluate``."""
    return expression.evaluate(t)


def to_source(expression: Expression) -> str:
    """Print an expression in canonical form."""
    return expression.to_source()
