from __future__ import annotations

import dataclasses
import math
import typing

import numpy as np

from rimaps.expr.Jet2 import Jet2


class Expression:
    """Immutable closed-form scalar expression in chart coordinates.

    Concrete nodes are :class:`Constant`, :class:`Coordinate`,
    :class:`Unary` and :class:`Binary`.
    """
    division_floor: float = 1e-300

    def evaluate(self, x: typing.Sequence[float]) -> float:
        raise NotImplementedError

    def jet(self, x: typing.Sequence[float]) -> Jet2:
        """Value, gradient and hessian at ``x``."""
        return self._jet(np.asarray(x, dtype=float))

    def _jet(self, x: np.ndarray) -> Jet2:
        raise NotImplementedError

    def coordinates(self) -> typing.Set[int]:
        """Indices of every coordinate referenced by the tree."""
        raise NotImplementedError

    def is_constant(self) -> bool:
        return not self.coordinates()

    class DomainException(ArithmeticError):
        subexpression: Expression

        def __init__(self, message: str, subexpression: Expression):
            super().__init__("{} in '{}'".format(message, subexpression))
            self.subexpression = subexpression


@dataclasses.dataclass(frozen=True)
class Constant(Expression):
    value: float
    name: typing.Optional[str] = None

    def __str__(self) -> str:
        if self.name is not None:
            return self.name
        if self.value < 0 or math.copysign(1.0, self.value) < 0:
            return "({})".format(repr(float(self.value)))
        return repr(float(self.value))

    def evaluate(self, x: typing.Sequence[float]) -> float:
        return self.value

    def _jet(self, x: np.ndarray) -> Jet2:
        return Jet2.constant(self.value, x.shape[0])

    def coordinates(self) -> typing.Set[int]:
        return set()


@dataclasses.dataclass(frozen=True)
class Coordinate(Expression):
    index: int
    name: str

    def __str__(self) -> str:
        return self.name

    def evaluate(self, x: typing.Sequence[float]) -> float:
        return float(x[self.index])

    def _jet(self, x: np.ndarray) -> Jet2:
        return Jet2.variable(x[self.index], self.index, x.shape[0])

    def coordinates(self) -> typing.Set[int]:
        return {self.index}


@dataclasses.dataclass(frozen=True)
class Unary(Expression):
    op: str
    arg: Expression

    functions: typing.ClassVar[typing.Tuple[str, ...]] = (
        "sin", "cos", "exp", "log", "sqrt", "tanh")

    def __post_init__(self):
        if self.op != "neg" and self.op not in Unary.functions:
            raise TypeError("Unknown unary operation: {}".format(self.op))

    def __str__(self) -> str:
        if self.op == "neg":
            return "(-{})".format(self.arg)
        return "{}({})".format(self.op, self.arg)

    def _check(self, a: float, strict: bool) -> None:
        if self.op == "log" and not a > 0:
            raise Expression.DomainException(
                "log of nonpositive value {}".format(a), self)
        if self.op == "sqrt" and (a < 0 or (strict and a == 0)):
            raise Expression.DomainException(
                "sqrt of {} value {}".format(
                    "negative" if a < 0 else "zero (derivative undefined)", a),
                self)

    def evaluate(self, x: typing.Sequence[float]) -> float:
        a = self.arg.evaluate(x)
        self._check(a, False)
        if self.op == "neg":
            return -a
        try:
            return getattr(math, self.op)(a)
        except OverflowError:
            raise Expression.DomainException(
                "overflow evaluating {}({})".format(self.op, a), self)

    def _jet(self, x: np.ndarray) -> Jet2:
        a = self.arg._jet(x)
        self._check(a.value, True)
        if self.op == "neg":
            return -a
        try:
            return getattr(a, self.op)()
        except OverflowError:
            raise Expression.DomainException(
                "overflow evaluating {}({})".format(self.op, a.value), self)

    def coordinates(self) -> typing.Set[int]:
        return self.arg.coordinates()


@dataclasses.dataclass(frozen=True)
class Binary(Expression):
    op: str
    left: Expression
    right: Expression

    symbols: typing.ClassVar[typing.Dict[str, str]] = {
        "add": "+",
        "sub": "-",
        "mul": "*",
        "div": "/",
        "pow": "^",
    }

    def __post_init__(self):
        if self.op not in Binary.symbols:
            raise TypeError("Unknown binary operation: {}".format(self.op))
        if self.op == "pow" and not isinstance(self.right, Constant):
            raise TypeError("Exponent must be a constant node")

    def __str__(self) -> str:
        return "({} {} {})".format(self.left, Binary.symbols[self.op],
                                   self.right)

    def _check_power(self, b: float, strict: bool) -> None:
        c = self.right.value
        if float(c).is_integer():
            if c < 0 and abs(b) < Expression.division_floor:
                raise Expression.DomainException(
                    "negative power of zero", self)
            return
        if b < 0:
            raise Expression.DomainException(
                "non-integer power {} of negative value {}".format(c, b), self)
        if b == 0 and (c < 0 or (strict and c < 2)):
            raise Expression.DomainException(
                "non-integer power {} of zero".format(c), self)

    def _check_divisor(self, b: float) -> None:
        if abs(b) < Expression.division_floor:
            raise Expression.DomainException(
                "division by {}".format(b), self)

    def evaluate(self, x: typing.Sequence[float]) -> float:
        a = self.left.evaluate(x)
        if self.op == "pow":
            self._check_power(a, False)
            try:
                return a**self.right.value
            except OverflowError:
                raise Expression.DomainException("overflow in power", self)
        b = self.right.evaluate(x)
        if self.op == "add":
            return a + b
        if self.op == "sub":
            return a - b
        if self.op == "mul":
            return a * b
        self._check_divisor(b)
        return a / b

    def _jet(self, x: np.ndarray) -> Jet2:
        a = self.left._jet(x)
        if self.op == "pow":
            self._check_power(a.value, True)
            try:
                return a.power(self.right.value)
            except OverflowError:
                raise Expression.DomainException("overflow in power", self)
        b = self.right._jet(x)
        if self.op == "add":
            return a + b
        if self.op == "sub":
            return a - b
        if self.op == "mul":
            return a * b
        self._check_divisor(b.value)
        return a / b

    def coordinates(self) -> typing.Set[int]:
        return self.left.coordinates() | self.right.coordinates()
