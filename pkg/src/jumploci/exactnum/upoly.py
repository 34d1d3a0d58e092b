"""Univariate polynomials over an exact field, and factorization over Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .scalars import QuadScalar, as_fraction, sqrt_rational


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class UPoly:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of ``x**k``.

    Coefficients are Fractions or QuadScalars. Immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            cs.append(c if isinstance(c, QuadScalar) else as_fraction(c))
        self.coeffs = tuple(_trim(cs))

    @classmethod
    def x(cls) -> UPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> UPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> UPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # basic shape ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1]

    def monic(self) -> UPoly:
        if not self.coeffs:
            return self
        c = self.coeffs[-1]
        return UPoly(x / c for x in self.coeffs)

    def is_rational(self) -> bool:
        return all(not isinstance(c, QuadScalar) or c.is_rational() for c in self.coeffs)

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction, QuadScalar)):
            return UPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return UPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        lead = o.coeffs[-1]
        quo = [0] * max(len(rem) - dq, 0)
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            c = rem[-1] / lead
            quo[shift] = c
            for i, y in enumerate(o.coeffs):
                rem[shift + i] = rem[shift + i] - c * y
            rem.pop()
            rem = _trim(rem)
        return UPoly(quo), UPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> UPoly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UPoly:
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def compose_scale(self, s) -> UPoly:
        """p(s*x)."""
        return UPoly(c * s**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if isinstance(c, QuadScalar) and c.b:
                term = f"({c})" + (f"*{mono}" if mono else "")
                sign = "+"
            else:
                c = as_fraction(c)
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if mono and mag == 1:
                    term = mono
                elif mono:
                    term = f"{mag}*{mono}"
                else:
                    term = str(mag)
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    __str__ = to_str


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UPoly) -> UPoly:
    if p.degree <= 0:
        return p.monic() if p else p
    return p.exact_div(upoly_gcd(p, p.derivative())).monic()


def primitive_integer(p: UPoly) -> list[int]:
    """Integer coefficient list proportional to a rational polynomial, content 1."""
    fr = [as_fraction(c) for c in p.coeffs]
    den = 1
    for c in fr:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: UPoly) -> list[Fraction]:
    """Distinct rational roots of a rational polynomial (rational root test)."""
    if not p:
        raise ValueError("zero polynomial has every root")
    ints = primitive_integer(p)
    roots = []
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) <= 1:
        return roots
    a0, an = ints[0], ints[-1]
    q = UPoly(ints)
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r.denominator != den:
                    continue
                if not q(r):
                    roots.append(r)
    return sorted(set(roots))


def quadratic_roots(p: UPoly) -> tuple:
    """The two roots of a degree-2 rational polynomial as exact scalars."""
    if p.degree != 2:
        raise ValueError("not quadratic")
    m = p.monic()
    c0, c1 = as_fraction(m.coeffs[0]), as_fraction(m.coeffs[1])
    disc = c1 * c1 - 4 * c0
    r = sqrt_rational(disc)
    half = -c1 / 2
    return (half + r / 2, half - r / 2)


@dataclass
class Factorization:
    """Factorization over Q: rational roots with multiplicity, irreducible quadratics,
    and irreducible factors of degree >= 3 kept as polynomials."""

    leading: Fraction = Fraction(1)
    linear: list = field(default_factory=list)      # [(root, multiplicity)]
    quadratic: list = field(default_factory=list)   # [(monic UPoly, multiplicity)]
    higher: list = field(default_factory=list)      # [(monic UPoly, multiplicity)]

    def expand(self) -> UPoly:
        p = UPoly([self.leading])
        for r, m in self.linear:
            p = p * UPoly([-r, 1]) ** m
        for f, m in self.quadratic + self.higher:
            p = p * f**m
        return p

    def explicit_roots(self) -> list:
        """Roots representable as Fraction or QuadScalar (each listed once)."""
        out = [r for r, _ in self.linear]
        for f, _ in self.quadratic:
            out.extend(quadratic_roots(f))
        return out

    def factors(self) -> list:
        """[(monic UPoly, multiplicity)] over all irreducible factors."""
        out = [(UPoly([-r, 1]), m) for r, m in self.linear]
        return out + list(self.quadratic) + list(self.higher)

    def __str__(self):
        parts = []
        for f, m in self.factors():
            s = f"({f.to_str('x')})"
            parts.append(s if m == 1 else f"{s}^{m}")
        if self.leading != 1 or not parts:
            parts.insert(0, str(self.leading))
        return "*".join(parts)


def _split_higher(p: UPoly):
    """Irreducible factorization over Q of a polynomial with no rational roots."""
    if p.degree <= 3:
        return [p.monic()]
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k
               for k, c in enumerate(as_fraction(c) for c in p.coeffs))
    _, facs = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for f, mult in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.extend([UPoly(cs).monic()] * mult)
    return out


def factor_rational(p: UPoly) -> Factorization:
    """Complete factorization of a nonzero rational polynomial over Q."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if not p.is_rational():
        raise ValueError("factor_rational needs rational coefficients")
    fac = Factorization(leading=as_fraction(p.lc()))
    rest = p.monic()
    for r in rational_roots(rest):
        lin = UPoly([-r, 1])
        m = 0
        while True:
            q, rem = divmod(rest, lin)
            if rem:
                break
            rest = q
            m += 1
        fac.linear.append((r, m))
    if rest.degree >= 1:
        counts: dict = {}
        # square-free decomposition first, so multiplicities are exact
        work = rest
        while work.degree >= 1:
            sf = squarefree_part(work)
            for f in _split_higher(sf):
                counts[f] = counts.get(f, 0) + 1
            work = work.exact_div(sf)
        for f in sorted(counts, key=lambda f: (f.degree, [str(c) for c in f.coeffs])):
            target = fac.quadratic if f.degree == 2 else fac.higher
            target.append((f, counts[f]))
    return fac
