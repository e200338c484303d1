"""Radiative corrections to the static potential and its position-space form.

For a static source only ``k = (0, kvec)`` enters, so ``s = |kvec|^2`` and the
``k^0 k^rho`` pieces of the dressed propagator drop out of
``A^0 + Sigma~^{0 rho} Pi_{rho lambda} A^lambda``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
import numpy as np

from .errors import NonIntegrableSpectrum, PoleAtPoint, QuadratureNotConverged
from .propagators import PropagatorModel, polarization, renormalized_propagator
from .scalarfield import RationalFn, as_rational
from .tensoralg import contract

S = RationalFn.s()

Spectrum = Union[RationalFn, Callable]


@dataclass(frozen=True)
class StaticSource:
    q: Fraction = Fraction(1)
    const: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))
        object.__setattr__(self, "const", as_rational(self.const))


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n: int
    spacing: str = "log"

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.n < 2:
            raise ValueError("radial grid needs at least 2 points")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be 'linear' or 'log'")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.r_min, self.r_max, self.n)
        return np.linspace(self.r_min, self.r_max, self.n)


@dataclass(frozen=True)
class PotentialCurve:
    samples: tuple[tuple[float, float], ...]
    model_id: str = ""
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def r(self) -> np.ndarray:
        return np.array([p[0] for p in self.samples])

    @property
    def V(self) -> np.ndarray:
        return np.array([p[1] for p in self.samples])


def coulomb_spectrum(src: StaticSource) -> RationalFn:
    return src.const * src.q / S


def yukawa_spectrum(q, m2) -> RationalFn:
    """``q / (s + m^2)``."""
    return as_rational(q) / (S + as_rational(m2))


def corrected_spectrum(pm: PropagatorModel, src: StaticSource = StaticSource()) -> RationalFn:
    """Dressed static potential ``A^0(s) (1 + [Sigma~ Pi]^0_0)`` in momentum space.

    Built from the symbol algebra rather than the closed form
    ``(q/s)(s + m~^2)/(f + m~^2)`` so that any gauge dependence would show up.
    """
    a0 = coulomb_spectrum(src)
    dressing = contract(renormalized_propagator(pm), polarization(pm))
    # k^0 = 0 kills the u2 k^0 k_lambda part; only the delta^0_lambda term survives
    return a0 * (1 + dressing.u1)


def corrected_spectrum_closed_form(pm: PropagatorModel, src: StaticSource = StaticSource()) -> RationalFn:
    return coulomb_spectrum(src) * (S + pm.mtilde2) / (pm.f + pm.mtilde2)


def long_range_charge(spectrum: RationalFn) -> Fraction:
    """``lim_{s->0} s S(s)``: the coefficient of the Coulomb ``1/s`` part."""
    try:
        return (spectrum * S)(0)
    except PoleAtPoint as exc:
        raise NonIntegrableSpectrum("spectrum is more singular than 1/s at s = 0") from exc


def yukawa_closed_form(q: float, m: float, r: float) -> float:
    """``q exp(-m r) / (4 pi r)``; ``m = 0`` is the Coulomb limit."""
    if m < 0 or r <= 0:
        raise ValueError("need m >= 0 and r > 0")
    return q * math.exp(-m * r) / (4 * math.pi * r)


def _has_nonnegative_pole(a: RationalFn) -> bool:
    if a.den.degree <= 0:
        return False
    roots = np.roots([float(c) for c in reversed(a.den.coeffs)])
    real = roots[np.abs(roots.imag) <= 1e-12 * np.maximum(1, np.abs(roots))].real
    return bool(np.any(real >= -1e-14))


def _split_rational(spectrum: RationalFn) -> tuple[Fraction, RationalFn]:
    c = long_range_charge(spectrum)
    rest = spectrum - c / S
    if rest.is_zero():
        return c, rest
    if rest.degree_at_infinity > -1:
        raise NonIntegrableSpectrum(
            f"spectrum minus its Coulomb part decays like s^{rest.degree_at_infinity}; needs at least 1/s"
        )
    if _has_nonnegative_pole(rest):
        raise NonIntegrableSpectrum("spectrum has a pole on the integration path s >= 0")
    return c, rest


def _mp_rational(a: RationalFn, ctx) -> Callable:
    num = [ctx.mpf(c.numerator) / c.denominator for c in reversed(a.num.coeffs)]
    den = [ctx.mpf(c.numerator) / c.denominator for c in reversed(a.den.coeffs)]
    return lambda s: ctx.polyval(num, s) / ctx.polyval(den, s)


def sine_transform(
    g: Callable,
    r: float,
    *,
    dps: int = 15,
    rtol: float = 1e-9,
    ctx_factory=mpmath.MPContext,
) -> float:
    """``int_0^inf kappa sin(kappa r) g(kappa^2) dkappa``.

    Integrates panel by panel between consecutive zeros ``n pi / r`` of the
    sine and sums the resulting alternating series with mpmath's convergence
    acceleration, which raises the working precision while summing.  ``g`` receives an mpmath number in a private context.
    """
    ctx = ctx_factory()
    ctx.dps = dps
    rr = ctx.mpf(r)
    h = ctx.pi / rr
    quad_err = [ctx.zero]

    def integrand(k):
        return k * ctx.sin(k * rr) * g(k * k)

    def term(n):
        val, err = ctx.quad(integrand, [n * h, (n + 1) * h], error=True)
        quad_err[0] = max(quad_err[0], err)
        return val

    try:
        total = ctx.nsum(term, [0, ctx.inf], strict=True, workprec=ctx.prec + 40)
    except ctx.NoConvergence as exc:
        raise QuadratureNotConverged(f"sine transform at r={r}: series acceleration failed") from exc
    if not ctx.isfinite(total) or quad_err[0] > rtol * abs(total) + ctx.mpf(10) ** (-dps + 2):
        raise QuadratureNotConverged(f"sine transform at r={r}: value {total}, panel error {quad_err[0]}")
    return float(total)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("QEDPROP_THREADS", "1")))
    except ValueError:
        return 1


def radial_fourier(
    spectrum: Spectrum,
    grid: RadialGrid,
    *,
    coulomb_part: float | None = None,
    model_id: str = "",
    dps: int = 15,
    rtol: float = 1e-9,
) -> PotentialCurve:
    """Static potential ``V(r) = (1/(2 pi^2 r)) int_0^inf kappa sin(kappa r) S(kappa^2) dkappa``.

    The Coulomb part ``c/s`` is removed before integrating and restored as
    ``c/(4 pi r)``.  For a :class:`RationalFn` spectrum ``c`` and the decay
    check are exact; a callable spectrum must state ``coulomb_part`` itself and
    accept mpmath numbers.
    """
    if isinstance(spectrum, RationalFn):
        c, rest = _split_rational(spectrum)
        c = float(c)
        make_g = None if rest.is_zero() else (lambda ctx: _mp_rational(rest, ctx))
    else:
        c = float(coulomb_part or 0.0)
        _check_callable_decay(spectrum, c)

        def make_g(ctx, _f=spectrum, _c=c):
            return lambda s: _f(s) - _c / s

    rs = [float(r) for r in grid.points()]

    def one(r: float) -> float:
        v = c / (4 * math.pi * r)
        if make_g is not None:
            ctx = mpmath.MPContext()
            ctx.dps = dps
            g = make_g(ctx)
            v += sine_transform(g, r, dps=dps, rtol=rtol, ctx_factory=lambda: ctx) / (2 * math.pi ** 2 * r)
        return v

    workers = _workers()
    if workers > 1 and len(rs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, rs))
    else:
        values = [one(r) for r in rs]
    return PotentialCurve(tuple(zip(rs, values)), model_id, {"coulomb_part": c})


def _check_callable_decay(spectrum: Callable, c: float) -> None:
    probes = [1e6, 1e8, 1e10]
    vals = [abs(float(spectrum(mpmath.mpf(s))) - c / s) * s for s in probes]
    if not all(math.isfinite(v) for v in vals) or vals[-1] > 10 * max(vals[0], 1e-300):
        raise NonIntegrableSpectrum("spectrum does not decay at least like 1/s")


@dataclass(frozen=True)
class SweepReport:
    alphas: tuple[Fraction, ...]
    spectra_identical: bool
    polarization_identical: bool
    max_deviation: Fraction
    d2: tuple[RationalFn, ...]
    d2_distinct: bool

    @property
    def verdict(self) -> str:
        if self.spectra_identical and self.polarization_identical:
            return "IDENTICAL SPECTRA"
        return "GAUGE-DEPENDENT SPECTRA"


_PROBES = tuple(Fraction(n, 2) for n in range(1, 11))


def _max_abs_diff(a: RationalFn, b: RationalFn) -> Fraction:
    diff = a - b
    out = Fraction(0)
    for s in _PROBES:
        try:
            out = max(out, abs(diff(s)))
        except PoleAtPoint:
            continue
    return out


def gauge_independence_sweep(
    mtilde2,
    f: RationalFn,
    alphas: Sequence,
    src: StaticSource = StaticSource(),
) -> SweepReport:
    """Rebuild the model for every bare gauge parameter and compare what should not move."""
    alphas = tuple(as_rational(a) for a in alphas)
    if not alphas:
        raise ValueError("alphas must be non-empty")
    models = [PropagatorModel(a, mtilde2, f) for a in alphas]
    spectra = [corrected_spectrum(pm, src) for pm in models]
    pis = [polarization(pm) for pm in models]
    d2 = tuple(renormalized_propagator(pm).u2 for pm in models)
    return SweepReport(
        alphas=alphas,
        spectra_identical=all(x == spectra[0] for x in spectra),
        polarization_identical=all(x == pis[0] for x in pis),
        max_deviation=max(_max_abs_diff(x, spectra[0]) for x in spectra),
        d2=d2,
        d2_distinct=len(set(d2)) == len(d2),
    )
