"""Complex dual numbers for forward-mode differentiation of rational maps."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number


@dataclass(frozen=True)
class Dual:
    """a + b·ε with ε² = 0.  Both parts may be complex."""

    a: complex
    b: complex = 0.0

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a + other.a, self.b + other.b)
        if isinstance(other, Number):
            return Dual(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a - other.a, self.b - other.b)
        if isinstance(other, Number):
            return Dual(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return Dual(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        if isinstance(other, Number):
            return Dual(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            if other.a == 0:
                raise ZeroDivisionError("dual division by a pure infinitesimal")
            return Dual(self.a / other.a, (self.b * other.a - self.a * other.b) / (other.a * other.a))
        if isinstance(other, Number):
            return Dual(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Number):
            if self.a == 0:
                raise ZeroDivisionError("dual division by a pure infinitesimal")
            return Dual(other / self.a, -other * self.b / (self.a * self.a))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / self ** (-n)
        if n == 0:
            return Dual(1.0, 0.0)
        return Dual(self.a ** n, n * self.a ** (n - 1) * self.b)


def primal(v):
    return v.a if isinstance(v, Dual) else v


def tangent(v):
    return v.b if isinstance(v, Dual) else 0.0


def jacobian(fn, args, wrt):
    """Values and partial derivatives of a vector-valued ``fn``.

    ``args`` are the evaluation point; ``wrt`` lists argument indices to
    differentiate against.  Returns ``(values, columns)`` where
    ``columns[k][i] = d fn_i / d args[wrt[k]]``.
    """
    values = None
    cols = []
    for k in wrt:
        seeded = [Dual(v, 1.0) if i == k else v for i, v in enumerate(args)]
        out = fn(*seeded)
        if values is None:
            values = tuple(primal(o) for o in out)
        cols.append(tuple(tangent(o) for o in out))
    if values is None:
        values = tuple(fn(*args))
    return values, cols
