"""Identity suites run by ``qedprop check``.

Each suite returns a :class:`CheckResult`; the runner never raises on a failed
identity, it records it.  Random inputs come from a seeded generator so a
given configuration always produces the same report.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
import sympy as sp

from . import clifford, coulomb, propagators, renorm, tensoralg
from .scalarfield import Polynomial, RationalFn
from .spacetime import EUCLIDEAN, MINKOWSKI, FourVector

S = RationalFn.s()


@dataclass(frozen=True)
class CheckResult:
    name: str
    identity: str
    passed: bool
    detail: str = ""


@dataclass
class CheckConfig:
    model: propagators.PropagatorModel = field(
        default_factory=lambda: propagators.PropagatorModel(2, 1, S / (S + 1))
    )
    renorm: renorm.RenormConstants = field(
        default_factory=lambda: renorm.RenormConstants(
            Fraction(5, 4), Fraction(6, 5), Fraction(7, 6), Fraction(8, 7), Fraction(9, 4)
        )
    )
    physical: renorm.PhysicalParams = field(
        default_factory=lambda: renorm.PhysicalParams(Fraction(1, 3), Fraction(1, 2), 1, Fraction(1, 2))
    )
    assert_ca2_zero: bool = True
    seed: int = 0
    yukawa_masses: tuple[float, ...] = (0.5, 1.0, 2.0)
    radial_grid: coulomb.RadialGrid = field(default_factory=lambda: coulomb.RadialGrid(0.1, 10.0, 20))


# random generators -------------------------------------------------------------

def rand_q(rng: random.Random, lo: int = -9, hi: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, 9))
        if x or not nonzero:
            return x


def rand_pos(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def rand_ratfn(rng: random.Random, max_deg: int = 4, allow_zero: bool = True) -> RationalFn:
    while True:
        num = Polynomial(rng.randint(-9, 9) for _ in range(rng.randint(0, max_deg) + 1))
        den = Polynomial(rng.randint(-9, 9) for _ in range(rng.randint(0, max_deg) + 1))
        if den.is_zero() or (num.is_zero() and not allow_zero):
            continue
        return RationalFn(num, den)


def rand_invertible_symbol(rng: random.Random, metric=EUCLIDEAN) -> tensoralg.RankTwoSymbol:
    while True:
        a = tensoralg.RankTwoSymbol(rand_ratfn(rng, 3), rand_ratfn(rng, 3), metric)
        p = tensoralg.decompose(a)
        if not p.transverse.is_zero() and not p.longitudinal.is_zero():
            return a


def rand_model(rng: random.Random, f_deg: int = 3) -> propagators.PropagatorModel:
    while True:
        num = Polynomial(rng.randint(-9, 9) for _ in range(rng.randint(0, f_deg) + 1))
        den = Polynomial(rng.randint(-9, 9) for _ in range(rng.randint(0, f_deg) + 1))
        if den.is_zero():
            continue
        mtilde2 = 0 if rng.random() < 0.2 else rand_pos(rng)
        pm = propagators.PropagatorModel(rand_pos(rng), mtilde2, RationalFn(num, den))
        if (pm.f + pm.mtilde2).is_zero():
            continue
        return pm


def rand_k(rng: random.Random, metric=EUCLIDEAN) -> FourVector:
    while True:
        k = FourVector(*(rand_q(rng) for _ in range(4)))
        if k.dot(k, metric) != 0:
            return k


# suites -------------------------------------------------------------------------

def _clifford_trace(cfg, rng):
    bad = [
        (m.name, mu, nu)
        for m in (MINKOWSKI, EUCLIDEAN)
        for g in [clifford.dirac_gammas(m)]
        for mu in range(4)
        for nu in range(4)
        if clifford.trace_product(g, mu, nu) != m[mu, nu]
    ]
    return CheckResult("clifford.trace_metric", "(1/4) Tr(gamma^mu gamma^nu) = g^{mu nu}", not bad,
                       f"16 pairs x 2 metrics, {len(bad)} failures")


def _clifford_anticommutator(cfg, rng):
    ok = True
    for m in (MINKOWSKI, EUCLIDEAN):
        g = clifford.dirac_gammas(m)
        one = clifford.identity4()
        for mu in range(4):
            for nu in range(4):
                ok &= bool(np.all(clifford.anticommutator(g, mu, nu) == one * (2 * m[mu, nu])))
    return CheckResult("clifford.anticommutator", "{gamma^mu, gamma^nu} = 2 g^{mu nu} 1", ok, "16 pairs x 2 metrics")


def _clifford_traceless(cfg, rng):
    ok = all(clifford.trace(clifford.dirac_gammas(m)[mu]) == 0 for m in (MINKOWSKI, EUCLIDEAN) for mu in range(4))
    return CheckResult("clifford.traceless", "Tr(gamma^mu) = 0", ok, "4 matrices x 2 metrics")


def _clifford_quadratic(cfg, rng):
    g = clifford.dirac_gammas(MINKOWSKI)
    fails = 0
    for _ in range(100):
        inp = clifford.GaugeMatrixInput(rand_q(rng), tuple(rand_q(rng) for _ in range(4)), rand_q(rng))
        if clifford.gauge_quadratic_form(inp, g) != clifford.gauge_quadratic_form_direct(inp, g.metric):
            fails += 1
    return CheckResult("clifford.quadratic_form", "(1/4) Tr(Phi Phi) = (d.A)^2 + beta^2 A.A", fails == 0,
                       f"100 random exact inputs, {fails} failures")


def _ghost_linearity(cfg, rng):
    g = clifford.dirac_gammas(MINKOWSKI)
    worst = 0.0
    for _ in range(20):
        inp = clifford.GaugeMatrixInput(rand_q(rng, 1, 9), tuple(rand_q(rng) for _ in range(4)), rand_q(rng))
        try:
            phi = float(clifford.gauge_functional_value(inp, g))
        except clifford.NegativeQuadraticForm:
            inp = clifford.GaugeMatrixInput(inp.divA, (0, 0, 0, 0), inp.beta)
            phi = float(clifford.gauge_functional_value(inp, g))
        p1 = FourVector(*(rand_q(rng) for _ in range(4)))
        p2 = FourVector(*(rand_q(rng) for _ in range(4)))
        lam = lambda p: clifford.ghost_action_multiplier(inp, g, p)
        # lambda(p) = (divA/Phi) p.p - i (beta^2/Phi) A.p: the A.p part is linear in p,
        # the p.p part is the quadratic form; check both separately
        psum = FourVector(*(a + b for a, b in zip(p1, p2)))
        lin = lam(psum).imag - lam(p1).imag - lam(p2).imag
        quad = lam(p1).real - float(inp.divA) / phi * float(p1.dot(p1, g.metric))
        worst = max(worst, abs(lin), abs(quad))
    return CheckResult("clifford.ghost_linearity", "ghost eigenvalue linear in p.p and in A.p", worst < 1e-9,
                       f"20 random inputs, max deviation {worst:.3e}")


def _ratfn_field(cfg, rng):
    fails = 0
    for _ in range(200):
        a, b, c = rand_ratfn(rng), rand_ratfn(rng), rand_ratfn(rng)
        if (a + b) * c != a * c + b * c:
            fails += 1
        if not b.is_zero() and (a / b) * b != a:
            fails += 1
    return CheckResult("scalarfield.field_axioms", "(a+b)c = ac+bc and (a/b)b = a over Q(s)", fails == 0,
                       f"200 random triples, {fails} failures")


def _inversion(cfg, rng):
    fails = 0
    for _ in range(100):
        a = rand_invertible_symbol(rng)
        inv = tensoralg.invert_symbol(a)
        if tensoralg.contract(a, inv) != tensoralg.RankTwoSymbol.identity():
            fails += 1
        if tensoralg.invert_symbol(inv) != a:
            fails += 1
    return CheckResult("tensoralg.inversion", "sigma sigma~ = delta and double inversion", fails == 0,
                       f"100 random symbols, {fails} failures")


def _projectors(cfg, rng):
    fails = 0
    for _ in range(50):
        a, b = rand_invertible_symbol(rng), rand_invertible_symbol(rng)
        pa, pb, pab = tensoralg.decompose(a), tensoralg.decompose(b), tensoralg.decompose(tensoralg.contract(a, b))
        if pab.transverse != pa.transverse * pb.transverse or pab.longitudinal != pa.longitudinal * pb.longitudinal:
            fails += 1
        if tensoralg.recompose(pa) != a:
            fails += 1
    return CheckResult("tensoralg.projectors", "projectors diagonalize contraction", fails == 0,
                       f"50 random pairs, {fails} failures")


def _numeric_inverse(cfg, rng):
    worst = 0.0
    for metric in (EUCLIDEAN, MINKOWSKI):
        n = 0
        while n < 25:
            a = rand_invertible_symbol(rng, metric)
            k = rand_k(rng, metric)
            try:
                m = tensoralg.evaluate_matrix(a, k)
                inv = tensoralg.evaluate_matrix(tensoralg.invert_symbol(a), k, "upper")
            except ArithmeticError:
                continue
            if np.linalg.cond(m) > 1e3:  # float inversion error grows like cond * eps
                continue
            num = np.linalg.inv(m)
            worst = max(worst, float(np.abs(num - inv).max() / np.abs(inv).max()))
            n += 1
    return CheckResult("tensoralg.numeric_inverse", "exact inverse equals numeric 4x4 inverse", worst <= 1e-12,
                       f"50 random (symbol, k), max relative error {worst:.3e}")


def _closed_forms(cfg, rng):
    fails = 0
    for _ in range(50):
        pm = rand_model(rng)
        if propagators.bare_propagator(pm) != propagators.bare_propagator_closed_form(pm):
            fails += 1
        full = propagators.renormalized_propagator(pm)
        if full != propagators.renormalized_propagator_closed_form(pm):
            fails += 1
        if full.u2 != propagators.renormalized_d2_from_u1(pm):
            fails += 1
    return CheckResult("propagators.closed_forms", "bare and dressed propagators match their closed forms",
                       fails == 0, f"50 random models, {fails} failures")


def _dyson(cfg, rng):
    models = [cfg.model] + [rand_model(rng) for _ in range(50)]
    fails = sum(not propagators.dyson_residual(pm).is_zero() for pm in models)
    return CheckResult("propagators.dyson", "Sigma~ = sigma~ + sigma~ Pi Sigma~", fails == 0,
                       f"{len(models)} models, {fails} non-zero residuals")


def _transversality(cfg, rng):
    worst = 0.0
    pm = cfg.model
    pi = propagators.polarization(pm)
    n = 0
    while n < 50:
        k = rand_k(rng)
        try:
            m = tensoralg.evaluate_matrix(pi, k, "upper")
        except ArithmeticError:
            continue
        kv = np.array([float(x) for x in k])
        scale = max(np.abs(m).max() * np.abs(kv).max(), 1e-300)
        worst = max(worst, float(np.abs(kv @ m).max() / scale))
        n += 1
    return CheckResult("propagators.transversality", "k^mu Pi_{mu nu} = 0", worst <= 1e-12,
                       f"50 random k, max relative residual {worst:.3e}")


def _gauge_independence(cfg, rng):
    alphas = [Fraction(1, 2), 1, 2, 5]
    rep = coulomb.gauge_independence_sweep(cfg.model.mtilde2, cfg.model.f, alphas)
    full_u1 = {propagators.renormalized_propagator(propagators.PropagatorModel(a, cfg.model.mtilde2, cfg.model.f)).u1
               for a in alphas}
    ok = rep.spectra_identical and rep.polarization_identical and rep.d2_distinct and len(full_u1) == 1
    return CheckResult("propagators.gauge_independence",
                       "Pi, d1 and corrected potential independent of alphaB; d2 not", ok,
                       f"alphaB in {{1/2,1,2,5}}, max spectrum deviation {rep.max_deviation}")


def _longitudinal(cfg, rng):
    models = [cfg.model] + [rand_model(rng) for _ in range(20)]
    fails = sum(
        tensoralg.decompose(propagators.self_energy(pm)).longitudinal
        != tensoralg.decompose(propagators.bare_symbol(pm)).longitudinal
        for pm in models
    )
    return CheckResult("propagators.longitudinal", "longitudinal coefficient unchanged by dressing", fails == 0,
                       f"{len(models)} models, {fails} failures")


def _falloff(cfg, rng):
    bare = propagators.bare_propagator(cfg.model)
    proca = propagators.massive_qed_integrand(propagators.MassiveQEDParams(1))
    e_bare = propagators.falloff_exponent(bare, "u1", "regression")
    e_proca = propagators.falloff_exponent(proca, "longitudinal", "regression")
    ok = (abs(e_bare + 2) <= 0.01 and abs(e_proca) <= 0.01
          and propagators.falloff_exponent(bare, "u1") == -2 and propagators.falloff_exponent(proca, "longitudinal") == 0)
    return CheckResult("propagators.falloff", "bare propagator ~ k^-2, Proca integrand ~ const", ok,
                       f"fitted exponents {e_bare:.4f} (bare u1), {e_proca:.4f} (Proca longitudinal)")


def _lattice(cfg, rng):
    nrng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for alpha in (1, 2):
        for beta in (0, Fraction(1, 2)):
            fieldv = propagators.random_lattice_field(nrng, 3, 16)
            worst = max(worst, propagators.lattice_divergence_check(fieldv, propagators.GaugeParams(alpha, beta)))
    return CheckResult("propagators.lagrangian_split", "L = d.rho + (1/2) A P A on a periodic box", worst <= 1e-10,
                       f"4 gauge choices on 16^4, max residual {worst:.3e}")


def _counterterms(cfg, rng):
    ct = renorm.counterterm_coeffs(cfg.renorm, cfg.physical)
    ok = True
    detail = f"cA2 = {ct.cA2}, cDiv = {ct.cDiv}"
    if cfg.assert_ca2_zero:
        ok = ct.cA2 == 0 and (ct.cDiv != 0 or cfg.renorm.zAlpha == 1)
    return CheckResult("renorm.counterterm_structure", "only (d.A)^2 counterterm breaks gauge invariance", ok, detail)


def _split(cfg, rng):
    fails = 0
    sets = [(cfg.renorm, cfg.physical)]
    for _ in range(50):
        rc = renorm.RenormConstants(*(rand_pos(rng) for _ in range(5)))
        pp = renorm.PhysicalParams(rand_q(rng), rand_q(rng), rand_pos(rng), rand_q(rng))
        sets.append((rc, pp))
    names = ("cF", "cKin", "cInt", "cMass", "cDiv", "cA2")
    for rc, pp in sets:
        if not renorm.split_check(rc, pp):
            fails += 1
        ct = renorm.counterterm_coeffs(rc, pp)
        for name in names:
            if renorm.split_check(rc, pp, renorm.mutate(ct, name, Fraction(1, 8))):
                fails += 1
    return CheckResult("renorm.split", "L_bare = L_phys + L_ct, each mutation detected", fails == 0,
                       f"{len(sets)} constant sets x 6 mutations, {fails} failures")


def _mtilde(cfg, rng):
    fails = 0
    for _ in range(20):
        rc = renorm.RenormConstants(*(rand_pos(rng) for _ in range(5)))
        pp = renorm.PhysicalParams(0, 0, rand_pos(rng), rand_q(rng))
        lam = rand_pos(rng) ** 2
        mt = renorm.mtilde_squared(rc, pp)
        scaled = renorm.PhysicalParams(0, 0, pp.alpha * renorm.exact(lam), pp.beta * sp.sqrt(renorm.exact(lam)))
        if renorm.mtilde_squared(rc, scaled) != mt:
            fails += 1
        if renorm.bare_mass_ratio(rc, pp) != renorm.exact(mt):
            fails += 1
    return CheckResult("renorm.mtilde", "betaB^2/alphaB = beta^2/(alpha zA), invariant under (alpha, beta) rescaling",
                       fails == 0, f"20 random sets, {fails} failures")


def _yukawa(cfg, rng):
    worst = 0.0
    for m in cfg.yukawa_masses:
        curve = coulomb.radial_fourier(coulomb.yukawa_spectrum(1, Fraction(m) ** 2), cfg.radial_grid)
        for r, v in curve.samples:
            worst = max(worst, abs(v / coulomb.yukawa_closed_form(1, m, r) - 1))
    return CheckResult("coulomb.yukawa_oracle", "radial transform of q/(k^2+m^2) = q exp(-m r)/(4 pi r)",
                       worst <= 1e-6, f"{len(cfg.yukawa_masses)} masses x {cfg.radial_grid.n} radii, "
                                      f"max relative error {worst:.3e}")


def _vanishes_at_zero(f: RationalFn) -> bool:
    return f.den(0) != 0 and f.num(0) == 0


def _long_range(cfg, rng):
    src = coulomb.StaticSource()
    f = cfg.model.f if _vanishes_at_zero(cfg.model.f) else S / (S + 1)
    pm = propagators.PropagatorModel(cfg.model.alphaB, cfg.model.mtilde2 or 1, f)
    spectrum = coulomb.corrected_spectrum(pm, src)
    ok = spectrum == coulomb.corrected_spectrum_closed_form(pm, src) and coulomb.long_range_charge(spectrum) == src.q
    return CheckResult("coulomb.long_range", "corrected potential keeps the q/k^2 tail when f(0) = 0", ok,
                       f"lim s A0(s) = {coulomb.long_range_charge(spectrum)}")


SUITES: tuple[Callable, ...] = (
    _clifford_trace, _clifford_anticommutator, _clifford_traceless, _clifford_quadratic, _ghost_linearity,
    _ratfn_field, _inversion, _projectors, _numeric_inverse, _closed_forms, _dyson, _transversality,
    _gauge_independence, _longitudinal, _falloff, _lattice, _counterterms, _split, _mtilde, _yukawa, _long_range,
)


def run_all(cfg: CheckConfig | None = None) -> list[CheckResult]:
    cfg = cfg or CheckConfig()
    out = []
    for suite in SUITES:
        rng = random.Random(f"{cfg.seed}:{suite.__name__}")
        try:
            out.append(suite(cfg, rng))
        except Exception as exc:  # a crashing suite is a failed identity, not a crashed run
            out.append(CheckResult(suite.__name__.lstrip("_"), "suite raised", False, f"{type(exc).__name__}: {exc}"))
    return out
