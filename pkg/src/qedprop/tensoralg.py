"""Rank-2 momentum-space symbols ``u1(s) g_{mu nu} + u2(s) k_mu k_nu``.

Every operator and propagator in the package lives in the two-dimensional span
of ``g`` and ``k k``; products stay in that span because ``k_mu k^mu = s``.
The transverse/longitudinal projectors diagonalize the algebra, so a symbol is
invertible exactly when both eigen-coefficients are non-zero rational functions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MetricMismatch, PoleAtPoint, SingularSymbol
from .scalarfield import RationalFn
from .spacetime import EUCLIDEAN, FourVector, Metric

S = RationalFn.s()


def _rf(x) -> RationalFn:
    return x if isinstance(x, RationalFn) else RationalFn.const(x)


@dataclass(frozen=True)
class RankTwoSymbol:
    u1: RationalFn
    u2: RationalFn
    metric: Metric = EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "u1", _rf(self.u1))
        object.__setattr__(self, "u2", _rf(self.u2))

    @classmethod
    def identity(cls, metric: Metric = EUCLIDEAN) -> "RankTwoSymbol":
        return cls(RationalFn.one(), RationalFn.zero(), metric)

    @classmethod
    def zero(cls, metric: Metric = EUCLIDEAN) -> "RankTwoSymbol":
        return cls(RationalFn.zero(), RationalFn.zero(), metric)

    def is_zero(self) -> bool:
        return self.u1.is_zero() and self.u2.is_zero()

    def _check(self, other: "RankTwoSymbol") -> None:
        if self.metric != other.metric:
            raise MetricMismatch(f"{self.metric.name} vs {other.metric.name}")

    def __add__(self, other: "RankTwoSymbol") -> "RankTwoSymbol":
        self._check(other)
        return RankTwoSymbol(self.u1 + other.u1, self.u2 + other.u2, self.metric)

    def __sub__(self, other: "RankTwoSymbol") -> "RankTwoSymbol":
        self._check(other)
        return RankTwoSymbol(self.u1 - other.u1, self.u2 - other.u2, self.metric)

    def __neg__(self):
        return RankTwoSymbol(-self.u1, -self.u2, self.metric)

    def scale(self, c) -> "RankTwoSymbol":
        return RankTwoSymbol(self.u1 * c, self.u2 * c, self.metric)

    def __matmul__(self, other: "RankTwoSymbol") -> "RankTwoSymbol":
        return contract(self, other)


@dataclass(frozen=True)
class ProjectorDecomp:
    """Coefficients on ``P_T = g - kk/s`` and ``P_L = kk/s``."""

    transverse: RationalFn
    longitudinal: RationalFn


def contract(a: RankTwoSymbol, b: RankTwoSymbol) -> RankTwoSymbol:
    """Symbol of ``a_{mu nu} b^{nu lambda}``."""
    a._check(b)
    u1 = a.u1 * b.u1
    u2 = a.u1 * b.u2 + a.u2 * b.u1 + S * a.u2 * b.u2
    return RankTwoSymbol(u1, u2, a.metric)


def decompose(a: RankTwoSymbol) -> ProjectorDecomp:
    return ProjectorDecomp(a.u1, a.u1 + S * a.u2)


def recompose(p: ProjectorDecomp, metric: Metric = EUCLIDEAN) -> RankTwoSymbol:
    return RankTwoSymbol(p.transverse, (p.longitudinal - p.transverse) / S, metric)


def invert_symbol(a: RankTwoSymbol) -> RankTwoSymbol:
    """Exact inverse: ``d1 = 1/u1``, ``d2 = -u2 / (u1 (u1 + s u2))``."""
    if a.u1.is_zero():
        raise SingularSymbol("transverse coefficient u1 vanishes identically")
    longitudinal = a.u1 + S * a.u2
    if longitudinal.is_zero():
        raise SingularSymbol("longitudinal coefficient u1 + s*u2 vanishes identically")
    return RankTwoSymbol(1 / a.u1, -a.u2 / (a.u1 * longitudinal), a.metric)


def evaluate_matrix(a: RankTwoSymbol, k, indices: str = "lower") -> np.ndarray:
    """Numeric 4x4 matrix ``u1(k^2) g + u2(k^2) k k`` at the four-vector ``k``.

    ``indices="lower"`` gives ``a_{mu nu}``; ``"upper"`` gives ``a^{mu nu}``.
    Evaluation is exact up to the final conversion to float.
    """
    k = FourVector(*k).exact()
    s = k.dot(k, a.metric)
    try:
        u1 = a.u1(s)
        u2 = a.u2(s)
    except PoleAtPoint as exc:
        raise PoleAtPoint(f"symbol has a pole at k^2 = {s}") from exc
    if indices == "lower":
        kv = k.lower(a.metric)
    elif indices == "upper":
        kv = tuple(k)
    else:
        raise ValueError("indices must be 'lower' or 'upper'")
    sig = a.metric.signature
    return np.array(
        [[float((u1 * sig[m] if m == n else 0) + u2 * kv[m] * kv[n]) for n in range(4)] for m in range(4)]
    )


def apply_to_vector(a: RankTwoSymbol, k, v) -> np.ndarray:
    """``a_{mu nu} v^nu`` without building the matrix: ``u1 v_mu + u2 k_mu (k.v)``."""
    k = FourVector(*k).exact()
    v = FourVector(*v).exact()
    s = k.dot(k, a.metric)
    u1, u2 = a.u1(s), a.u2(s)
    kv = k.dot(v, a.metric)
    vl, kl = v.lower(a.metric), k.lower(a.metric)
    return np.array([float(u1 * vl[m] + u2 * kl[m] * kv) for m in range(4)])
