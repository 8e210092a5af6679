"""Exact scalars: rationals plus a single quadratic extension ``a + b*sqrt(r)``.

Every exponent in the package is a :class:`fractions.Fraction`.  The only
irrational values that show up are square roots coming out of the inverse
KPZ map and the welding algebra, so one radical per value is enough.
:class:`Radical` covers those and collapses back to a ``Fraction`` whenever
the irrational part vanishes.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Radical",
    "ExactScalar",
    "NestedRadicalError",
    "as_exact",
    "canonical",
    "sqrt_exact",
    "squarefree_split",
    "parse_exact",
    "format_exact",
    "is_exact_zero",
]


class NestedRadicalError(ArithmeticError):
    """Raised when two different square roots would have to be combined."""


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree."""
    if n < 0:
        raise ValueError("squarefree_split needs n >= 0")
    if n == 0:
        return 0, 1
    s, r = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1 if p == 2 else 2
    r *= rest
    return s, r


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Radical:
    """The number ``a + b*sqrt(r)`` with rational ``a, b`` and squarefree ``r > 1``.

    Construct through :func:`canonical`; the class itself assumes the
    invariants hold.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a: Fraction, b: Fraction, r: int):
        self.a = a
        self.b = b
        self.r = r

    # -- helpers -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Radical):
            if other.r != self.r:
                raise NestedRadicalError(
                    f"cannot combine sqrt({self.r}) and sqrt({other.r})")
            return other.a, other.b
        if isinstance(other, (int, Fraction, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def conjugate(self) -> "Radical":
        return Radical(self.a, -self.b, self.r)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.r

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 r
        big = self.a * self.a - self.b * self.b * self.r
        return sa if big > 0 else sb

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return canonical(self.a + c[0], self.b + c[1], self.r)

    __radd__ = __add__

    def __neg__(self):
        return Radical(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) - other
            return NotImplemented
        return canonical(self.a - c[0], self.b - c[1], self.r)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return other - float(self)
            return NotImplemented
        return canonical(c[0] - self.a, c[1] - self.b, self.r)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        a, b = c
        return canonical(self.a * a + self.b * b * self.r,
                         self.a * b + self.b * a, self.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        a, b = c
        den = a * a - b * b * self.r
        if den == 0:
            raise ZeroDivisionError("division by zero radical")
        num = self * canonical(a, -b, self.r)
        return num / den if not isinstance(num, Radical) else canonical(num.a / den, num.b / den, self.r)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return other / float(self)
            return NotImplemented
        n = self.norm()
        num = canonical(c[0], c[1], self.r) * self.conjugate()
        if isinstance(num, Radical):
            return canonical(num.a / n, num.b / n, self.r)
        return num / n

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = base * out
            base = base * base
            n >>= 1
        return out

    # -- comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Radical):
            return (self.a, self.b, self.r) == (other.a, other.b, other.r)
        if isinstance(other, (int, Fraction)):
            return False  # canonical radicals are never rational
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, float):
            return (diff > 0) - (diff < 0)
        if isinstance(diff, Radical):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Radical({self.a}, {self.b}, {self.r})"

    def __str__(self):
        return format_exact(self)


ExactScalar = Union[Fraction, Radical]


def canonical(a, b=0, r: int = 1) -> ExactScalar:
    """Build ``a + b*sqrt(r)`` in canonical form (rational when possible)."""
    a = _frac(a)
    b = _frac(b)
    if r < 0:
        raise ValueError("negative radicand")
    if b == 0 or r == 0:
        return a
    s, rf = squarefree_split(r)
    b = b * s
    if rf == 1:
        return a + b
    return Radical(a, b, rf)


def as_exact(x) -> ExactScalar:
    """Coerce ints, Fractions, rational strings and Radicals to an exact scalar."""
    if isinstance(x, Radical):
        return x
    if isinstance(x, str):
        return parse_exact(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return _frac(x)


def sqrt_exact(x) -> ExactScalar:
    """Exact square root of a nonnegative rational."""
    x = _frac(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q
    return canonical(0, Fraction(1, q), p * q)


def is_exact_zero(x) -> bool:
    return not isinstance(x, Radical) and x == 0


_RAD_RE = re.compile(
    r"^\s*(?P<a>[-+]?\s*(?:\d+/\d+|\d+(?:\.\d+)?))?\s*"
    r"(?:(?P<sgn>[-+])\s*(?:(?P<b>\d+/\d+|\d+(?:\.\d+)?)\s*\*\s*)?sqrt\(\s*(?P<r>\d+)\s*\))?\s*$")


_PURE_RAD_RE = re.compile(r"^[-+]?\s*(?:(?:\d+/\d+|\d+(?:\.\d+)?)\s*\*\s*)?sqrt\(")


def parse_exact(text: str) -> ExactScalar:
    """Parse ``'p/q'``, ``'n'``, a terminating decimal, or ``'a + b*sqrt(r)'``."""
    s = text.strip()
    if _PURE_RAD_RE.match(s):
        s = ("0" if s[0] in "+-" else "0+") + s
    m = _RAD_RE.match(s)
    if not m or (m.group("a") is None and m.group("r") is None):
        raise ValueError(f"cannot parse exact scalar: {text!r}")
    a = Fraction(m.group("a").replace(" ", "")) if m.group("a") else Fraction(0)
    if m.group("r") is None:
        return a
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sgn") == "-":
        b = -b
    return canonical(a, b, int(m.group("r")))


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_exact(x) -> str:
    """Render exactly: ``p/q`` for rationals, ``a + b*sqrt(r)`` for radicals."""
    if isinstance(x, Radical):
        b = x.b
        sgn = "-" if b < 0 else "+"
        babs = abs(b)
        bpart = "" if babs == 1 else f"{_fmt_frac(babs)}*"
        if x.a == 0:
            lead = "-" if b < 0 else ""
            return f"{lead}{bpart}sqrt({x.r})"
        return f"{_fmt_frac(x.a)} {sgn} {bpart}sqrt({x.r})"
    if isinstance(x, int):
        return str(x)
    return _fmt_frac(Fraction(x))
