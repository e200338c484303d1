"""Multiplicative renormalization bookkeeping and the physical/counterterm split.

Values are sympy numbers so that square roots of renormalization constants
(``sqrt(z_A)`` in the charge, ``rho = 1/sqrt(z_alpha)``) stay exact.  Every
Lagrangian coefficient that the split identity compares is rational.

Coefficient convention for :class:`LagrangianCoeffs`: each field multiplies
one monomial of the fixed basis with its sign included, e.g. ``c_int = -e``
multiplies ``psibar gamma^mu A_mu psi``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction

import sympy as sp

MONOMIALS = ("F^2", "psibar i dslash psi", "psibar Aslash psi", "psibar psi", "(d.A)^2", "A.A")


def exact(x) -> sp.Expr:
    """Convert ints, Fractions, ``"p/q"`` strings or sympy values to sympy exactly."""
    if isinstance(x, sp.Basic):
        return x
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    if isinstance(x, float):
        f = Fraction(x)
        return sp.Rational(f.numerator, f.denominator)
    return sp.Rational(x)


def to_fraction(x: sp.Expr) -> Fraction:
    x = sp.nsimplify(x) if not isinstance(x, sp.Rational) else x
    if not isinstance(x, sp.Rational):
        raise ValueError(f"{x} is not rational")
    return Fraction(int(x.p), int(x.q))


@dataclass(frozen=True)
class RenormConstants:
    """``z_A, z_psi, z_m, z_e, z_alpha`` and the beta rescaling ``rho``.

    ``rho=None`` selects ``1/sqrt(z_alpha)``, the choice that removes the
    ``A.A`` counterterm.
    """

    zA: sp.Expr = sp.Integer(1)
    zPsi: sp.Expr = sp.Integer(1)
    zM: sp.Expr = sp.Integer(1)
    zE: sp.Expr = sp.Integer(1)
    zAlpha: sp.Expr = sp.Integer(1)
    rho: sp.Expr | None = None

    def __post_init__(self):
        for f in ("zA", "zPsi", "zM", "zE", "zAlpha"):
            v = exact(getattr(self, f))
            if not v > 0:
                raise ValueError(f"{f} must be positive, got {v}")
            object.__setattr__(self, f, v)
        rho = 1 / sp.sqrt(self.zAlpha) if self.rho is None else exact(self.rho)
        if not rho > 0:
            raise ValueError(f"rho must be positive, got {rho}")
        object.__setattr__(self, "rho", rho)


@dataclass(frozen=True)
class PhysicalParams:
    e: sp.Expr = sp.Integer(0)
    m: sp.Expr = sp.Integer(0)
    alpha: sp.Expr = sp.Integer(1)
    beta: sp.Expr = sp.Integer(0)

    def __post_init__(self):
        for f in ("e", "m", "alpha", "beta"):
            object.__setattr__(self, f, exact(getattr(self, f)))
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")


@dataclass(frozen=True)
class BareParams:
    eB: sp.Expr
    mB: sp.Expr
    alphaB: sp.Expr
    betaB: sp.Expr


@dataclass(frozen=True)
class LagrangianCoeffs:
    cF: sp.Expr
    cKin: sp.Expr
    cInt: sp.Expr
    cMass: sp.Expr
    cDiv: sp.Expr
    cA2: sp.Expr

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def __add__(self, other: "LagrangianCoeffs") -> "LagrangianCoeffs":
        return LagrangianCoeffs(*(sp.simplify(a + b) for a, b in zip(self.as_tuple(), other.as_tuple())))

    def gauge_breaking(self) -> dict[str, sp.Expr]:
        """The coefficients of the two monomials that are not gauge invariant."""
        return {"(d.A)^2": self.cDiv, "A.A": self.cA2}


def bare_from_physical(rc: RenormConstants, pp: PhysicalParams) -> BareParams:
    return BareParams(
        eB=rc.zE / (rc.zPsi * sp.sqrt(rc.zA)) * pp.e,
        mB=rc.zM / rc.zPsi * pp.m,
        alphaB=rc.zA / rc.zAlpha * pp.alpha,
        betaB=rc.rho * pp.beta,
    )


def photon_mass_squared(pp: PhysicalParams) -> sp.Expr:
    """``m_gamma^2 = beta^2 / alpha``."""
    return pp.beta ** 2 / pp.alpha


def mtilde_squared(rc: RenormConstants, pp: PhysicalParams) -> Fraction:
    """``beta^2 / (alpha z_A)``, the mass parameter seen by the bare propagator."""
    return to_fraction(sp.nsimplify(photon_mass_squared(pp) / rc.zA))


def bare_mass_ratio(rc: RenormConstants, pp: PhysicalParams) -> sp.Expr:
    """``betaB^2 / alphaB`` from the bare parameters; equals :func:`mtilde_squared` iff ``rho^2 z_alpha = 1``."""
    b = bare_from_physical(rc, pp)
    return sp.nsimplify(b.betaB ** 2 / b.alphaB)


def physical_coeffs(pp: PhysicalParams) -> LagrangianCoeffs:
    half = sp.Rational(1, 2)
    return LagrangianCoeffs(
        cF=-sp.Rational(1, 4),
        cKin=sp.Integer(1),
        cInt=-pp.e,
        cMass=-pp.m,
        cDiv=-half / pp.alpha,
        cA2=-half * pp.beta ** 2 / pp.alpha,
    )


def counterterm_coeffs(rc: RenormConstants, pp: PhysicalParams) -> LagrangianCoeffs:
    half = sp.Rational(1, 2)
    return LagrangianCoeffs(
        cF=-(rc.zA - 1) / 4,
        cKin=rc.zPsi - 1,
        cInt=-(rc.zE - 1) * pp.e,
        cMass=-(rc.zM - 1) * pp.m,
        cDiv=-half * (rc.zAlpha - 1) / pp.alpha,
        cA2=sp.nsimplify(-half * pp.beta ** 2 / pp.alpha * (rc.rho ** 2 * rc.zAlpha - 1)),
    )


def bare_coeffs_in_physical_fields(rc: RenormConstants, pp: PhysicalParams) -> LagrangianCoeffs:
    """The bare Lagrangian with ``A_B = sqrt(z_A) A``, ``psi_B = sqrt(z_psi) psi`` substituted."""
    b = bare_from_physical(rc, pp)
    half = sp.Rational(1, 2)
    zA, zPsi = rc.zA, rc.zPsi
    return LagrangianCoeffs(
        cF=-zA / 4,
        cKin=zPsi,
        cInt=sp.simplify(-b.eB * zPsi * sp.sqrt(zA)),
        cMass=sp.simplify(-b.mB * zPsi),
        cDiv=sp.simplify(-half / b.alphaB * zA),
        cA2=sp.simplify(-half * b.betaB ** 2 / b.alphaB * zA),
    )


def split_check(rc: RenormConstants, pp: PhysicalParams, counterterms: LagrangianCoeffs | None = None) -> bool:
    """Coefficient-wise ``L_bare == L_phys + L_ct`` on the six-monomial basis.

    ``counterterms`` overrides the computed counterterm coefficients (used to
    confirm that a perturbed set is rejected).
    """
    ct = counterterm_coeffs(rc, pp) if counterterms is None else counterterms
    bare = bare_coeffs_in_physical_fields(rc, pp)
    total = physical_coeffs(pp) + ct
    return all(sp.simplify(a - b) == 0 for a, b in zip(bare.as_tuple(), total.as_tuple()))


def mutate(c: LagrangianCoeffs, name: str, delta) -> LagrangianCoeffs:
    return replace(c, **{name: getattr(c, name) + exact(delta)})
