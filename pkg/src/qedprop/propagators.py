"""Photon operator symbols, bare and dressed propagators, polarization tensor.

All symbols are Euclidean: derivatives become ``i k`` and ``-box`` becomes
``s = k^2``.  The self-energy model ``f(s)`` is any exact rational function;
with ``f = s`` the dressed quantities reduce to the bare ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EmptyField, ZeroCoefficient
from .scalarfield import RationalFn, as_rational
from .spacetime import EUCLIDEAN
from .tensoralg import RankTwoSymbol, contract, decompose, invert_symbol

S = RationalFn.s()

FALLOFF_COMPONENTS = ("transverse", "longitudinal", "u1", "u2_times_s")


@dataclass(frozen=True)
class GaugeParams:
    alpha: Fraction
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.alpha <= 0:
            raise ValueError("gauge parameter alpha must be positive")


@dataclass(frozen=True)
class PropagatorModel:
    """Bare gauge parameter ``alphaB``, effective mass ``mtilde2`` and self-energy model ``f``."""

    alphaB: Fraction
    mtilde2: Fraction
    f: RationalFn = field(default_factory=RationalFn.s)

    def __post_init__(self):
        object.__setattr__(self, "alphaB", as_rational(self.alphaB))
        object.__setattr__(self, "mtilde2", as_rational(self.mtilde2))
        if not isinstance(self.f, RationalFn):
            object.__setattr__(self, "f", RationalFn.const(self.f))
        if self.alphaB <= 0:
            raise ValueError("alphaB must be positive")
        if self.mtilde2 < 0:
            raise ValueError("mtilde2 must be non-negative")


@dataclass(frozen=True)
class MassiveQEDParams:
    m2: Fraction
    M: float = 0.0  # fermion mass; not used by any photon-sector quantity

    def __post_init__(self):
        object.__setattr__(self, "m2", as_rational(self.m2))
        if self.m2 <= 0:
            raise ValueError("Proca mass squared must be positive")


def operator_symbol(gp: GaugeParams) -> RankTwoSymbol:
    """Symbol of ``g(-box + beta^2/alpha) + (1 - 1/alpha) d d``."""
    inv_alpha = 1 / gp.alpha
    return RankTwoSymbol(S + gp.beta ** 2 * inv_alpha, RationalFn.const(inv_alpha - 1), EUCLIDEAN)


def bare_symbol(pm: PropagatorModel) -> RankTwoSymbol:
    return RankTwoSymbol(S + pm.mtilde2, RationalFn.const(1 / pm.alphaB - 1), EUCLIDEAN)


def bare_propagator(pm: PropagatorModel) -> RankTwoSymbol:
    return invert_symbol(bare_symbol(pm))


def bare_propagator_closed_form(pm: PropagatorModel) -> RankTwoSymbol:
    """``g/(s+m~^2) + (alphaB-1) kk / ((s+alphaB m~^2)(s+m~^2))``."""
    m2, aB = pm.mtilde2, pm.alphaB
    return RankTwoSymbol(1 / (S + m2), (aB - 1) / ((S + aB * m2) * (S + m2)), EUCLIDEAN)


def self_energy(pm: PropagatorModel) -> RankTwoSymbol:
    """Dressed symbol with ``u1 = m~^2 + f`` and ``u2 = 1/alphaB - f/s``."""
    return RankTwoSymbol(pm.f + pm.mtilde2, 1 / pm.alphaB - pm.f / S, EUCLIDEAN)


def renormalized_propagator(pm: PropagatorModel) -> RankTwoSymbol:
    return invert_symbol(self_energy(pm))


def renormalized_propagator_closed_form(pm: PropagatorModel) -> RankTwoSymbol:
    m2, aB, f = pm.mtilde2, pm.alphaB, pm.f
    d1 = 1 / (f + m2)
    d2 = (aB * f / S - 1) / ((S + aB * m2) * (f + m2))
    return RankTwoSymbol(d1, d2, EUCLIDEAN)


def renormalized_d2_from_u1(pm: PropagatorModel) -> RationalFn:
    """``d2 = [alphaB/(s + alphaB m~^2) - 1/u1] / s`` with ``u1 = m~^2 + f``."""
    u1 = pm.f + pm.mtilde2
    return (pm.alphaB / (S + pm.alphaB * pm.mtilde2) - 1 / u1) / S


def polarization(pm: PropagatorModel) -> RankTwoSymbol:
    """``Pi = sigma - Sigma``; transverse with coefficient ``s - f``."""
    return bare_symbol(pm) - self_energy(pm)


def polarization_closed_form(f: RationalFn) -> RankTwoSymbol:
    c = S - f
    return RankTwoSymbol(c, -c / S, EUCLIDEAN)


def dyson_residual(pm: PropagatorModel) -> RankTwoSymbol:
    """``Sigma~ - sigma~ - sigma~ Pi Sigma~``; the exact zero symbol when the Dyson relation holds."""
    bare = bare_propagator(pm)
    full = renormalized_propagator(pm)
    pi = polarization(pm)
    return full - bare - contract(contract(bare, pi), full)


def massive_qed_integrand(mp: MassiveQEDParams) -> RankTwoSymbol:
    """Euclidean magnitude model of the Proca propagator, ``(g + kk/m^2)``-type numerator over ``s + m^2``."""
    m2 = mp.m2
    return RankTwoSymbol(1 / (S + m2), -1 / (m2 * (S + m2)), EUCLIDEAN)


def proca_operator_symbol(mp: MassiveQEDParams) -> RankTwoSymbol:
    return RankTwoSymbol(S + mp.m2, RationalFn.const(-1), EUCLIDEAN)


def _component(a: RankTwoSymbol, component: str) -> RationalFn:
    if component == "u1":
        return a.u1
    if component == "u2_times_s":
        return a.u2 * S
    p = decompose(a)
    if component == "transverse":
        return p.transverse
    if component == "longitudinal":
        return p.longitudinal
    raise ValueError(f"component must be one of {FALLOFF_COMPONENTS}")


def falloff_exponent(
    a: RankTwoSymbol,
    component: str = "u1",
    method: str = "exact",
    s_range: tuple[float, float] = (1e4, 1e12),
    n_points: int = 25,
) -> float:
    """Large-k power of the selected coefficient, as a power of ``k`` (twice the power of ``s``).

    ``method="exact"`` reads it off the degrees; ``"regression"`` fits the
    slope of ``log|c(s)|`` against ``log s`` on log-spaced samples.
    """
    c = _component(a, component)
    if c.is_zero():
        raise ZeroCoefficient(f"{component} coefficient vanishes identically")
    if method == "exact":
        return float(2 * c.degree_at_infinity)
    if method != "regression":
        raise ValueError("method must be 'exact' or 'regression'")
    if n_points < 20:
        raise ValueError("regression needs at least 20 points")
    s = np.logspace(math.log10(s_range[0]), math.log10(s_range[1]), n_points)
    vals = np.array([abs(float(c(Fraction(x)))) for x in s])
    if np.any(vals == 0):
        raise ZeroCoefficient(f"{component} coefficient vanishes on the fit range")
    slope = np.polyfit(np.log(s), np.log(vals), 1)[0]
    return float(2 * slope)


# --- Lagrangian split on a periodic lattice ---------------------------------


@dataclass(frozen=True)
class PlaneWave:
    """One real mode ``amplitude * cos(2 pi n.x / L + phase)``."""

    wave_numbers: tuple[int, int, int, int]
    amplitude: tuple[float, float, float, float]
    phase: float = 0.0


@dataclass(frozen=True)
class LatticeField:
    L: float
    N: int
    modes: tuple[PlaneWave, ...]

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(
            m if isinstance(m, PlaneWave) else PlaneWave(tuple(m[0]), tuple(m[1]), *m[2:]) for m in self.modes
        ))
        if self.L <= 0:
            raise ValueError("box size must be positive")
        if self.N < 8 or self.N % 2:
            raise ValueError("points per axis must be an even integer >= 8")
        for m in self.modes:
            if len(m.wave_numbers) != 4 or len(m.amplitude) != 4:
                raise ValueError("wave numbers and amplitudes must have 4 components")
            if any(abs(n) >= self.N // 2 for n in m.wave_numbers):
                raise ValueError(f"wave numbers {m.wave_numbers} outside the Nyquist range for N={self.N}")

    def grid(self) -> list[np.ndarray]:
        x = np.arange(self.N) * (self.L / self.N)
        return np.meshgrid(x, x, x, x, indexing="ij")


@dataclass
class _Fields:
    A: np.ndarray  # (4, N, N, N, N)
    dA: np.ndarray  # dA[mu, nu] = d_mu A_nu
    box: np.ndarray  # box A_nu
    ddivA: np.ndarray  # d_mu (d.A)


def _sample(lat: LatticeField) -> _Fields:
    X = lat.grid()
    shape = (lat.N,) * 4
    A = np.zeros((4,) + shape)
    dA = np.zeros((4, 4) + shape)
    box = np.zeros((4,) + shape)
    ddivA = np.zeros((4,) + shape)
    for mode in lat.modes:
        k = 2 * np.pi * np.asarray(mode.wave_numbers, dtype=float) / lat.L
        amp = np.asarray(mode.amplitude, dtype=float)
        theta = sum(k[i] * X[i] for i in range(4)) + mode.phase
        c, s = np.cos(theta), np.sin(theta)
        k2, kamp = k @ k, k @ amp
        for nu in range(4):
            A[nu] += amp[nu] * c
            box[nu] -= k2 * amp[nu] * c
            ddivA[nu] -= k[nu] * kamp * c
            for mu in range(4):
                dA[mu, nu] -= k[mu] * amp[nu] * s
    return _Fields(A, dA, box, ddivA)


def _densities(fl: _Fields, gp: GaugeParams) -> tuple[np.ndarray, np.ndarray]:
    alpha, beta2 = float(gp.alpha), float(gp.beta) ** 2
    F = fl.dA - fl.dA.transpose(1, 0, 2, 3, 4, 5)
    divA = np.einsum("mm...->...", fl.dA)
    AA = np.einsum("m...,m...->...", fl.A, fl.A)
    lagrangian = 0.25 * np.einsum("mn...,mn...->...", F, F) + (divA ** 2 + beta2 * AA) / (2 * alpha)
    PA = -fl.box + (beta2 / alpha) * fl.A + (1 - 1 / alpha) * fl.ddivA
    quadratic = 0.5 * np.einsum("m...,m...->...", fl.A, PA)
    return lagrangian, quadratic


def lattice_divergence_check(field: LatticeField, gp: GaugeParams) -> float:
    """Relative gap between the box integrals of the Euclidean Lagrangian and of ``A P A / 2``.

    The Lagrangian is ``(1/4) F F + ((d.A)^2 + beta^2 A.A)/(2 alpha)``.  When
    ``A P A / 2`` integrates to zero the absolute gap is returned instead.
    """
    if not field.modes:
        raise EmptyField("lattice field has no modes")
    fl = _sample(field)
    lag, quad = _densities(fl, gp)
    vol = field.L ** 4
    lhs = lag.mean() * vol
    rhs = quad.mean() * vol
    gap = abs(lhs - rhs)
    scale = abs(rhs)
    if scale <= 1e-300:
        return float(gap)
    return float(gap / scale)


def _spectral_divergence(rho: np.ndarray, L: float) -> np.ndarray:
    N = rho.shape[1]
    k1 = 2 * np.pi * np.fft.fftfreq(N, d=L / N)
    out = np.zeros(rho.shape[1:])
    for mu in range(4):
        shape = [1, 1, 1, 1]
        shape[mu] = N
        kmu = k1.reshape(shape)
        out += np.real(np.fft.ifftn(1j * kmu * np.fft.fftn(rho[mu])))
    return out


def lattice_density_residual(field: LatticeField, gp: GaugeParams) -> float:
    """Pointwise form: ``max |L - d.rho - A P A/2| / max |L|`` with ``d.rho`` taken by FFT.

    Requires every pairwise sum of wave numbers to stay below Nyquist so the
    product fields in ``rho`` are resolved.
    """
    if not field.modes:
        raise EmptyField("lattice field has no modes")
    fl = _sample(field)
    lag, quad = _densities(fl, gp)
    alpha = float(gp.alpha)
    divA = np.einsum("mm...->...", fl.dA)
    # rho_mu = -1/2 A_nu d_nu A_mu + 1/2 A_nu d_mu A_nu + A_mu (d.A) / (2 alpha)
    rho = (
        -0.5 * np.einsum("n...,nm...->m...", fl.A, fl.dA)
        + 0.5 * np.einsum("n...,mn...->m...", fl.A, fl.dA)
        + fl.A * divA / (2 * alpha)
    )
    div_rho = _spectral_divergence(rho, field.L)
    scale = max(np.abs(lag).max(), 1e-300)
    return float(np.abs(lag - div_rho - quad).max() / scale)


def random_lattice_field(rng, n_modes: int = 3, N: int = 16, L: float = 2 * np.pi, max_wave: int = 3) -> LatticeField:
    """Random real field with integer wave numbers in ``[-max_wave, max_wave]``."""
    modes = []
    for _ in range(n_modes):
        n = tuple(int(rng.integers(-max_wave, max_wave + 1)) for _ in range(4))
        amp = tuple(float(x) for x in rng.uniform(-1, 1, 4))
        modes.append(PlaneWave(n, amp, float(rng.uniform(0, 2 * np.pi))))
    return LatticeField(L, N, tuple(modes))
