"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt d)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

_TRIAL_LIMIT = 10**6


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, QuadScalar):
        if x.b:
            raise ValueError(f"{x} is not rational")
        return x.a
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point input is not exact")
    return Fraction(x)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree (sign kept in d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d = 1, 1
    p = 2
    while p * p <= n and p <= _TRIAL_LIMIT:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            s *= r
        elif p * p <= n:
            from sympy import factorint

            for q, e in factorint(n).items():
                s *= q ** (e // 2)
                if e % 2:
                    d *= q
        else:
            d *= n
    return s, sign * d


class QuadScalar:
    """An element ``a + b*sqrt(d)`` with ``a, b`` rational and ``d`` a squarefree integer.

    ``b == 0`` is stored with ``d == 0`` and combines with any context. Mixing two
    different nonzero ``d`` raises ``ValueError``: one square root per computation.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = as_fraction(a)
        b = as_fraction(b)
        d = int(d)
        if b and d in (0, 1):
            raise ValueError("sqrt(d) must be irrational")
        if b:
            s, core = squarefree_decompose(d)
            if core == 1:
                a, b, d = a + b * s, Fraction(0), 0
            else:
                b, d = b * s, core
        if not b:
            d = 0
        self.a = a
        self.b = b
        self.d = d

    # context handling -------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QuadScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other)
        return NotImplemented

    def _ctx(self, other: QuadScalar) -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"mixed square-root contexts sqrt({self.d}) and sqrt({other.d})")
        return self.d or other.d

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._ctx(o)
        return QuadScalar(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._ctx(o)
        return QuadScalar(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self.a, -self.b, self.d)

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("QuadScalar division by zero")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadScalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # predicates -------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.b

    def to_fraction(self) -> Fraction:
        return as_fraction(self)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.b and not o.b:
            return self.a == o.a
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_real(self) -> bool:
        return self.d >= 0

    def sign(self) -> int:
        if self.d < 0:
            raise ValueError("sign of a non-real number")
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if not sb:
            return sa
        if not sa or sa == sb:
            return sb
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def abs_squared(self) -> Fraction:
        """|x|^2 as a rational when x is non-real, or x*x when it is rational."""
        if self.d < 0:
            return self.a * self.a - self.b * self.b * self.d
        if not self.b:
            return self.a * self.a
        raise ValueError("abs_squared of a real irrational is irrational; use sign()")

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.d})"
        b = self.b
        if b == 1:
            tail = root
        elif b == -1:
            tail = f"-{root}"
        else:
            tail = f"{b}*{root}"
        if not self.a:
            return tail
        if tail.startswith("-"):
            return f"{self.a} - {tail[1:]}"
        return f"{self.a} + {tail}"


def sqrt_rational(r) -> Fraction | QuadScalar:
    """Exact square root of a rational: a Fraction when it is a perfect square."""
    r = as_fraction(r)
    if r == 0:
        return Fraction(0)
    num, den = r.numerator, r.denominator
    s, d = squarefree_decompose(num * den)
    if d == 1:
        return Fraction(s, den)
    return QuadScalar(0, Fraction(s, den), d)


def is_scalar_zero(x) -> bool:
    return not x


def scalar_str(x) -> str:
    return str(x)
