"""Diagonal metrics, four-vectors and exact Gaussian-rational scalars."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalarfield import as_rational


@dataclass(frozen=True)
class Metric:
    """Diagonal metric ``diag(signature)``, entries exactly +1 or -1."""

    signature: tuple[int, int, int, int]
    name: str = ""

    def __post_init__(self):
        if len(self.signature) != 4 or any(x not in (1, -1) for x in self.signature):
            raise ValueError(f"metric signature must be four entries of +-1, got {self.signature}")

    def __getitem__(self, idx: tuple[int, int]) -> int:
        mu, nu = idx
        return self.signature[mu] if mu == nu else 0


MINKOWSKI = Metric((1, -1, -1, -1), "minkowski")
EUCLIDEAN = Metric((1, 1, 1, 1), "euclidean")


class FourVector(tuple):
    """Contravariant components ``(v^0, v^1, v^2, v^3)``."""

    def __new__(cls, *components):
        if len(components) == 1 and not isinstance(components[0], (int, float, Fraction)):
            components = tuple(components[0])
        if len(components) != 4:
            raise ValueError(f"a four-vector needs 4 components, got {len(components)}")
        return super().__new__(cls, components)

    def lower(self, metric: Metric) -> tuple:
        return tuple(metric.signature[i] * self[i] for i in range(4))

    def dot(self, other, metric: Metric):
        return sum(metric.signature[i] * self[i] * other[i] for i in range(4))

    def exact(self) -> "FourVector":
        return FourVector(*(as_rational(x) for x in self))


@dataclass(frozen=True)
class Gaussian:
    """Exact complex number ``re + i*im`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def of(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        return cls(x, 0)

    def __add__(self, other):
        o = Gaussian.of(other)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Gaussian.of(other))

    def __rsub__(self, other):
        return Gaussian.of(other) - self

    def __mul__(self, other):
        o = Gaussian.of(other)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = Gaussian.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = Gaussian(0, 1)
