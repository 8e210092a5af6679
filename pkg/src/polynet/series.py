"""Truncated power series in eps = 4 - d with rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import format_exact

__all__ = ["EpsilonSeries", "EPS"]


@dataclass(frozen=True)
class EpsilonSeries:
    """``c0 + c1*eps + ... + c_order*eps^order``.

    Coefficients past ``order`` are unknown, not zero, so every binary
    operation truncates to the smaller order of its operands.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not 1 <= len(coeffs) <= 3:
            raise ValueError("EpsilonSeries supports orders 0..2")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def constant(cls, c, order: int) -> "EpsilonSeries":
        return cls((Fraction(c),) + (Fraction(0),) * order)

    @classmethod
    def dimension(cls, order: int) -> "EpsilonSeries":
        """The space dimension d = 4 - eps."""
        return cls((Fraction(4), Fraction(-1)) + (Fraction(0),) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def truncate(self, order: int) -> "EpsilonSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return EpsilonSeries(self.coefficients[: order + 1])

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient eps^{k} is not known at order {self.order}")
        return self.coefficients[k]

    def _lift(self, other):
        if isinstance(other, EpsilonSeries):
            order = min(self.order, other.order)
            return self.truncate(order), other.truncate(order)
        if isinstance(other, (int, Fraction)):
            return self, EpsilonSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return EpsilonSeries(tuple(x + y for x, y in zip(a.coefficients, b.coefficients)))

    __radd__ = __add__

    def __neg__(self):
        return EpsilonSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        n = a.order
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a.coefficients):
            for j, y in enumerate(b.coefficients[: n + 1 - i]):
                out[i + j] += x * y
        return EpsilonSeries(tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "EpsilonSeries":
        c = self.coefficients
        if c[0] == 0:
            raise ZeroDivisionError("series with vanishing constant term")
        inv = [1 / c[0]]
        for k in range(1, self.order + 1):
            s = sum(c[i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-s / c[0])
        return EpsilonSeries(tuple(inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return EpsilonSeries(tuple(c / other for c in self.coefficients))
        if isinstance(other, EpsilonSeries):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def at(self, eps) -> Fraction:
        """Evaluate the truncated polynomial at a given eps."""
        eps = Fraction(eps)
        return sum((c * eps ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def __str__(self):
        parts = [format_exact(self.coefficients[0])]
        for k, c in enumerate(self.coefficients[1:], start=1):
            parts.append(f"{format_exact(c)}*eps" + ("" if k == 1 else f"^{k}"))
        return " + ".join(parts)


EPS = EpsilonSeries((Fraction(0), Fraction(1), Fraction(0)))
