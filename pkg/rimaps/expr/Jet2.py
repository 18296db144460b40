from __future__ import annotations

import math

import numpy as np


class Jet2:
    """Value, gradient and hessian of a scalar function at one point.

    Arithmetic on jets applies the first and second order chain rules, so
    evaluating an expression tree on coordinate jets yields exact partial
    derivatives up to rounding.
    """
    value: float
    gradient: np.ndarray
    hessian: np.ndarray

    __slots__ = ("value", "gradient", "hessian")

    def __init__(self, value: float, gradient: np.ndarray,
                 hessian: np.ndarray):
        self.value = float(value)
        self.gradient = gradient
        self.hessian = hessian

    def __repr__(self) -> str:
        return "Jet2(value={}, gradient={}, hessian={})".format(
            self.value, self.gradient.tolist(), self.hessian.tolist())

    @property
    def dim(self) -> int:
        return self.gradient.shape[0]

    @staticmethod
    def constant(value: float, dim: int) -> Jet2:
        return Jet2(value, np.zeros(dim), np.zeros((dim, dim)))

    @staticmethod
    def variable(value: float, index: int, dim: int) -> Jet2:
        gradient = np.zeros(dim)
        gradient[index] = 1.0
        return Jet2(value, gradient, np.zeros((dim, dim)))

    def chain(self, f0: float, f1: float, f2: float) -> Jet2:
        """Compose with a scalar function given f, f' and f'' at the value."""
        return Jet2(
            f0,
            f1 * self.gradient,
            f1 * self.hessian + f2 * np.outer(self.gradient, self.gradient),
        )

    def __neg__(self) -> Jet2:
        return Jet2(-self.value, -self.gradient, -self.hessian)

    def __add__(self, other: Jet2) -> Jet2:
        return Jet2(self.value + other.value, self.gradient + other.gradient,
                    self.hessian + other.hessian)

    def __sub__(self, other: Jet2) -> Jet2:
        return Jet2(self.value - other.value, self.gradient - other.gradient,
                    self.hessian - other.hessian)

    def __mul__(self, other: Jet2) -> Jet2:
        cross = np.outer(self.gradient, other.gradient)
        return Jet2(
            self.value * other.value,
            self.value * other.gradient + other.value * self.gradient,
            self.value * other.hessian + other.value * self.hessian + cross +
            cross.T,
        )

    def __truediv__(self, other: Jet2) -> Jet2:
        return self * other.reciprocal()

    def reciprocal(self) -> Jet2:
        b = self.value
        return self.chain(1.0 / b, -1.0 / (b * b), 2.0 / (b * b * b))

    def power(self, exponent: float) -> Jet2:
        b = self.value
        c = exponent
        f0 = b**c
        f1 = 0.0 if c == 0 else c * b**(c - 1)
        f2 = 0.0 if c in (0, 1) else c * (c - 1) * b**(c - 2)
        return self.chain(f0, f1, f2)

    def sin(self) -> Jet2:
        s = math.sin(self.value)
        return self.chain(s, math.cos(self.value), -s)

    def cos(self) -> Jet2:
        c = math.cos(self.value)
        return self.chain(c, -math.sin(self.value), -c)

    def exp(self) -> Jet2:
        e = math.exp(self.value)
        return self.chain(e, e, e)

    def log(self) -> Jet2:
        a = self.value
        return self.chain(math.log(a), 1.0 / a, -1.0 / (a * a))

    def sqrt(self) -> Jet2:
        r = math.sqrt(self.value)
        return self.chain(r, 0.5 / r, -0.25 / (r * self.value))

    def tanh(self) -> Jet2:
        t = math.tanh(self.value)
        d = 1.0 - t * t
        return self.chain(t, d, -2.0 * t * d)
