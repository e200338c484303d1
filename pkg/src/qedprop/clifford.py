"""Gamma matrices, the matrix-valued gauge potential and the scalar gauge functional.

The gauge matrix ``Phi = divA * 1 + beta * gamma^mu A_mu`` is only a device for
writing the gauge-averaging term; the functional itself is the scalar
``sqrt((1/4) Tr(Phi Phi)) = sqrt(divA**2 + beta**2 A.A)``.

All matrix entries are exact :class:`~qedprop.spacetime.Gaussian` numbers held
in numpy object arrays, so every identity here is checked without rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GaugeFunctionalZero, NegativeQuadraticForm
from .scalarfield import as_rational
from .spacetime import EUCLIDEAN, MINKOWSKI, FourVector, Gaussian, I, Metric

_ZERO = Gaussian(0, 0)


def _matrix(rows) -> np.ndarray:
    m = np.empty((4, 4), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            m[i, j] = Gaussian.of(x)
    m.flags.writeable = False
    return m


def identity4() -> np.ndarray:
    return _matrix([[1 if i == j else 0 for j in range(4)] for i in range(4)])


def trace(m: np.ndarray) -> Gaussian:
    return sum((m[i, i] for i in range(4)), _ZERO)


def _dirac_gammas() -> tuple[np.ndarray, ...]:
    i = I
    g0 = _matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    # gamma^j = [[0, sigma_j], [-sigma_j, 0]]
    g1 = _matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    g2 = _matrix([[0, 0, 0, -i], [0, 0, i, 0], [0, i, 0, 0], [-i, 0, 0, 0]])
    g3 = _matrix([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]])
    return g0, g1, g2, g3


@dataclass(frozen=True)
class GammaSet:
    gammas: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] = field(repr=False)
    metric: Metric

    def __getitem__(self, mu: int) -> np.ndarray:
        return self.gammas[mu]


def dirac_gammas(metric: Metric = MINKOWSKI) -> GammaSet:
    """Dirac representation; for the Euclidean metric the spatial gammas pick up a factor -i."""
    g = _dirac_gammas()
    if metric == MINKOWSKI:
        return GammaSet(g, MINKOWSKI)
    if metric == EUCLIDEAN:
        minus_i = Gaussian(0, -1)
        spatial = tuple(_matrix(gj * minus_i) for gj in g[1:])
        return GammaSet((g[0],) + spatial, EUCLIDEAN)
    raise ValueError(f"no stock gamma representation for {metric}")


@dataclass(frozen=True)
class GaugeMatrixInput:
    """Pointwise data entering the gauge matrix: ``divA`` = d^mu A_mu, ``A`` contravariant, ``beta``.

    ``beta`` may be purely imaginary (Euclidean continuation beta -> i beta) when
    used with a Euclidean :class:`GammaSet`.
    """

    divA: Fraction
    A: FourVector
    beta: Gaussian

    def __post_init__(self):
        object.__setattr__(self, "divA", as_rational(self.divA))
        object.__setattr__(self, "A", FourVector(*self.A).exact())
        b = Gaussian.of(self.beta)
        if b.re != 0 and b.im != 0:
            raise ValueError("beta must be real or purely imaginary")
        object.__setattr__(self, "beta", b)


def trace_product(g: GammaSet, mu: int, nu: int) -> Fraction:
    """``(1/4) Tr(gamma^mu gamma^nu)``, which reproduces ``g^{mu nu}``."""
    t = trace(g[mu].dot(g[nu]))
    if not t.is_real():
        raise ArithmeticError(f"Tr(gamma^{mu} gamma^{nu}) is not real: {t}")
    return t.re / 4


def anticommutator(g: GammaSet, mu: int, nu: int) -> np.ndarray:
    return g[mu].dot(g[nu]) + g[nu].dot(g[mu])


def slash(g: GammaSet, A: FourVector) -> np.ndarray:
    """``gamma^mu A_mu`` with the index of ``A`` lowered by the gamma set's metric."""
    lowered = FourVector(*A).lower(g.metric)
    out = np.full((4, 4), _ZERO, dtype=object)
    for mu in range(4):
        if lowered[mu]:
            out = out + g[mu] * lowered[mu]
    return out


def build_phi_matrix(inp: GaugeMatrixInput, g: GammaSet) -> np.ndarray:
    """``divA * 1 + beta * gamma^mu A_mu`` as a 4x4 exact matrix."""
    _check_beta(inp, g)
    return identity4() * inp.divA + slash(g, inp.A) * inp.beta


def _check_beta(inp: GaugeMatrixInput, g: GammaSet) -> None:
    if inp.beta.im != 0 and g.metric != EUCLIDEAN:
        raise ValueError("imaginary beta is only meaningful with the Euclidean metric")


def gauge_quadratic_form(inp: GaugeMatrixInput, g: GammaSet) -> Fraction:
    """``Phi_i^j Omega_j^k Phi_k^i`` with ``Omega = 1/4``, computed from the matrix trace."""
    phi = build_phi_matrix(inp, g)
    t = trace(phi.dot(phi))
    if not t.is_real():
        raise ArithmeticError(f"quadratic form is not real: {t}")
    return t.re / 4


def gauge_quadratic_form_direct(inp: GaugeMatrixInput, metric: Metric) -> Fraction:
    """Closed form ``divA**2 + beta**2 * A.A``."""
    beta2 = inp.beta * inp.beta
    return inp.divA ** 2 + beta2.re * inp.A.dot(inp.A, metric)


def _sqrt(q: Fraction):
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return math.sqrt(q)


def gauge_functional_value(inp: GaugeMatrixInput, g: GammaSet):
    """The scalar gauge functional: non-negative root of the quadratic form.

    Exact (a Fraction) when the quadratic form is a rational square, otherwise a float.
    """
    q = gauge_quadratic_form(inp, g)
    if q < 0:
        raise NegativeQuadraticForm(f"divA^2 + beta^2 A.A = {q} < 0; gauge functional undefined here")
    return _sqrt(q)


def ghost_action_multiplier(inp: GaugeMatrixInput, g: GammaSet, p: FourVector) -> complex:
    """Eigenvalue of the ghost operator on the plane wave ``exp(i p.x)``, coefficients frozen at a point.

    lambda = -[(divA/Phi) * (-p.p) + (beta**2/Phi) * (i A.p)]
    """
    phi = gauge_functional_value(inp, g)
    if phi == 0:
        raise GaugeFunctionalZero("gauge functional vanishes; ghost operator undefined")
    p = FourVector(*p)
    pp = p.dot(p, g.metric)
    Ap = inp.A.dot(p, g.metric)
    beta2 = complex(inp.beta * inp.beta)
    return -((float(inp.divA) / phi) * (-float(pp)) + (beta2 / phi) * 1j * float(Ap))
