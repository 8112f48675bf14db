"""Expressions built from integers, + - * / and square roots.

Every well-formed expression names a length constructible with compass and
straightedge, so constructibility here is a syntactic property: parsing
succeeds exactly for members of the closure.  Text form is a prefix
s-expression such as ``(div (sub (mul 13 (sqrt 13)) 8) 27)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByIntervalContainingZero, DivisionByZeroRegion, NegativeRadicand, ParseError
from .exactnum import DEFAULT_BITS, Interval


@dataclass(frozen=True)
class Integer:
    value: int


@dataclass(frozen=True)
class Add:
    left: AlgExpr
    right: AlgExpr


@dataclass(frozen=True)
class Sub:
    left: AlgExpr
    right: AlgExpr


@dataclass(frozen=True)
class Mul:
    left: AlgExpr
    right: AlgExpr


@dataclass(frozen=True)
class Div:
    left: AlgExpr
    right: AlgExpr


@dataclass(frozen=True)
class Sqrt:
    arg: AlgExpr


AlgExpr = Union[Integer, Add, Sub, Mul, Div, Sqrt]

_BINARY = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}
_NAMES = {Add: "add", Sub: "sub", Mul: "mul", Div: "div"}
_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")
_INT = re.compile(r"[+-]?\d+\Z")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse(text: str) -> AlgExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    expr, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after position {pos}: {tokens[pos:]}")
    return expr


def _parse(tokens: list[str], pos: int) -> tuple[AlgExpr, int]:
    if pos >= len(tokens):
        raise ParseError("unexpected end of expression")
    tok = tokens[pos]
    if tok == ")":
        raise ParseError("unexpected ')'")
    if tok != "(":
        if _INT.match(tok):
            return Integer(int(tok)), pos + 1
        raise ParseError(f"{tok!r} is not an integer or operator of the grammar")
    if pos + 1 >= len(tokens):
        raise ParseError("unexpected end after '('")
    op = tokens[pos + 1]
    pos += 2
    if op == "sqrt":
        arg, pos = _parse(tokens, pos)
        node: AlgExpr = Sqrt(arg)
    elif op in _BINARY:
        left, pos = _parse(tokens, pos)
        right, pos = _parse(tokens, pos)
        node = _BINARY[op](left, right)
    else:
        raise ParseError(f"unknown operator {op!r}")
    if pos >= len(tokens) or tokens[pos] != ")":
        raise ParseError(f"expected ')' after {op} form")
    return node, pos + 1


def serialize(expr: AlgExpr) -> str:
    if isinstance(expr, Integer):
        return str(expr.value)
    if isinstance(expr, Sqrt):
        return f"(sqrt {serialize(expr.arg)})"
    if type(expr) in _NAMES:
        return f"({_NAMES[type(expr)]} {serialize(expr.left)} {serialize(expr.right)})"
    raise ParseError(f"not an expression node: {expr!r}")


def eval_expr(expr: AlgExpr, bits: int = DEFAULT_BITS) -> Interval:
    """Certified enclosure of the expression's value.

    Errors carry ``path``, the sequence of child indices leading to the
    offending node.
    """
    return _eval(expr, bits, ())


def _exact_sqrt(q: Fraction) -> Fraction | None:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def _eval(expr: AlgExpr, bits: int, path: tuple) -> Interval:
    # point operands are combined exactly so rational subtrees carry no rounding
    if isinstance(expr, Integer):
        return Interval.point(expr.value, bits)
    if isinstance(expr, Sqrt):
        arg = _eval(expr.arg, bits, path + (0,))
        if arg.lo < 0:
            raise NegativeRadicand(f"radicand not certified nonnegative at {list(path)}", path)
        root = _exact_sqrt(arg.lo) if arg.lo == arg.hi else None
        return Interval.point(root, bits) if root is not None else arg.sqrt()
    if type(expr) not in _NAMES:
        raise ParseError(f"not an expression node: {expr!r}")
    left = _eval(expr.left, bits, path + (0,))
    right = _eval(expr.right, bits, path + (1,))
    if left.lo == left.hi and right.lo == right.hi:
        a, b = left.lo, right.lo
        if isinstance(expr, Div) and b == 0:
            raise DivisionByZeroRegion(f"divisor vanishes at {list(path)}", path)
        value = {Add: a + b, Sub: a - b, Mul: a * b, Div: a / b if b else None}[type(expr)]
        return Interval.point(value, bits)
    if isinstance(expr, Add):
        return left + right
    if isinstance(expr, Sub):
        return left - right
    if isinstance(expr, Mul):
        return left * right
    try:
        return left / right
    except DivisionByIntervalContainingZero:
        raise DivisionByZeroRegion(f"divisor may vanish at {list(path)}", path) from None


def sqrt_depth(expr: AlgExpr) -> int:
    if isinstance(expr, Integer):
        return 0
    if isinstance(expr, Sqrt):
        return 1 + sqrt_depth(expr.arg)
    return max(sqrt_depth(expr.left), sqrt_depth(expr.right))


@dataclass(frozen=True)
class Certificate:
    constructible: bool
    depth: int
    enclosure: Interval


def is_constructible(expr: AlgExpr | str, bits: int = 64) -> Certificate:
    """Every expression of the grammar is constructible; foreign input fails to parse."""
    if isinstance(expr, str):
        expr = parse(expr)
    else:
        serialize(expr)
    return Certificate(True, sqrt_depth(expr), eval_expr(expr, bits))
