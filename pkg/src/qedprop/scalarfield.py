"""Exact rational functions of the single variable s = k**2.

Coefficients are :class:`fractions.Fraction` (arbitrary-precision integers,
reduced, positive denominator).  A :class:`RationalFn` is always stored in
canonical form: ``gcd(num, den) = 1`` and ``den`` monic, so structural
equality coincides with equality of functions.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DivisionByZeroFn, PoleAtPoint

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(x) -> Fraction:
    """Convert ints, Fractions, floats (exact binary value) and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Polynomial:
    """Dense univariate polynomial, ``coeffs[i]`` multiplies ``s**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        return Polynomial(c * x for x in self.coeffs)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise DivisionByZeroFn("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = 1 / other.lead
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            q = rem[i] * inv_lead
            if q:
                quo[i - db] = q
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] -= q * y
        return Polynomial(quo), Polynomial(rem[:db] if db > 0 else [])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm over Q."""
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, a.divmod(b)[1].monic()
    return a


class RationalFn:
    """Canonical ratio ``num/den`` of polynomials in s."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial(den)
        if den.is_zero():
            raise DivisionByZeroFn("rational function with zero denominator")
        if not _canonical:
            num, den = _normalize(num, den)
        self.num: Polynomial = num
        self.den: Polynomial = den

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "RationalFn":
        return cls(Polynomial([c]), _canonical=True) if as_rational(c) else cls.zero()

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls(Polynomial(), Polynomial([1]), _canonical=True)

    @classmethod
    def one(cls) -> "RationalFn":
        return cls(Polynomial([1]), Polynomial([1]), _canonical=True)

    @classmethod
    def s(cls) -> "RationalFn":
        """The formal variable s = k**2."""
        return cls(Polynomial([0, 1]), Polynomial([1]), _canonical=True)

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> "RationalFn":
        return cls(Polynomial(num), Polynomial(den))

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num(Fraction(0)) / self.den.lead

    @property
    def degree_at_infinity(self) -> int:
        """``deg num - deg den``: the power of s governing large-s behavior."""
        if self.is_zero():
            raise ValueError("zero function has no asymptotic degree")
        return self.num.degree - self.den.degree

    # arithmetic -------------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, Polynomial):
            return RationalFn(x)
        return RationalFn.const(x)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o.is_constant():
            c = o.constant_value()
            return RationalFn(self.num.scale(c), self.den, _canonical=True) if c else RationalFn.zero()
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise DivisionByZeroFn(f"division of {self} by the zero function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFn.one() / (self ** -n)
        out = RationalFn.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, s):
        return ratfn_eval(self, s)

    def evalf(self, s: float) -> float:
        """Floating-point evaluation (no exactness, no pole check beyond IEEE)."""
        return float(self.num(s)) / float(self.den(s))

    def __repr__(self):
        return f"RationalFn({serialize(self)!r})"

    def __str__(self):
        return serialize(self)


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return Polynomial(), Polynomial([1])
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    lead = den.lead
    if lead != 1:
        num, den = num.scale(1 / lead), den.scale(1 / lead)
    return num, den


def normalize(a: RationalFn) -> RationalFn:
    return RationalFn(a.num, a.den)


def ratfn_binary(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two rational functions."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfn_eval(a: RationalFn, s) -> Fraction:
    s = as_rational(s)
    d = a.den(s)
    if d == 0:
        raise PoleAtPoint(f"{a} has a pole at s = {s}")
    return a.num(s) / d


def ratfn_equal(a: RationalFn, b: RationalFn) -> bool:
    return (a - b).is_zero()


# textual form ---------------------------------------------------------------

def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(a: RationalFn) -> str:
    num = ",".join(_fmt(c) for c in a.num.coeffs) or "0"
    den = ",".join(_fmt(c) for c in a.den.coeffs)
    return f"num_coeffs=[{num}] / den_coeffs=[{den}]"


_SERIAL_RE = re.compile(r"^\s*num_coeffs\s*=\s*\[([^\]]*)\]\s*/\s*den_coeffs\s*=\s*\[([^\]]*)\]\s*$")


def parse_coeffs(text: str) -> list[Fraction]:
    """Parse ``"1, -2/3, 0"`` into Fractions."""
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        return []
    return [Fraction(p) for p in parts]


def parse(text: str) -> RationalFn:
    """Inverse of :func:`serialize`."""
    m = _SERIAL_RE.match(text)
    if not m:
        raise ValueError(f"not a serialized rational function: {text!r}")
    return RationalFn(Polynomial(parse_coeffs(m.group(1))), Polynomial(parse_coeffs(m.group(2))))
