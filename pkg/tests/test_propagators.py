import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, assume, strategies as st

from qedprop.checks import rand_k
from qedprop.errors import EmptyField, ZeroCoefficient
from qedprop.propagators import (
    GaugeParams,
    LatticeField,
    MassiveQEDParams,
    PlaneWave,
    PropagatorModel,
    _densities,
    _sample,
    bare_propagator,
    bare_propagator_closed_form,
    bare_symbol,
    dyson_residual,
    falloff_exponent,
    lattice_density_residual,
    lattice_divergence_check,
    massive_qed_integrand,
    operator_symbol,
    polarization,
    polarization_closed_form,
    proca_operator_symbol,
    random_lattice_field,
    renormalized_propagator,
    renormalized_propagator_closed_form,
    self_energy,
)
from qedprop.scalarfield import RationalFn, ratfn_eval
from qedprop.tensoralg import RankTwoSymbol, contract, decompose, evaluate_matrix

from conftest import positive_rationals, ratfns

S = RationalFn.s()
ALPHAS = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))


def sym(u1, u2):
    return RankTwoSymbol(u1, u2)


@pytest.mark.parametrize("alpha,beta,expected", [
    (1, 1, (S + 1, 0)),
    (2, 0, (S, Fraction(-1, 2))),
    (1, 0, (S, 0)),
])
def test_operator_symbol(alpha, beta, expected):
    assert operator_symbol(GaugeParams(alpha, beta)) == sym(*expected)


def test_bare_symbol_examples():
    assert bare_symbol(PropagatorModel(1, 4)) == sym(S + 4, 0)
    assert decompose(bare_symbol(PropagatorModel(2, 1))).longitudinal == (S + 2) / 2
    p = decompose(bare_symbol(PropagatorModel(3, 0)))
    assert (p.transverse, p.longitudinal) == (S, S / 3)


def test_bare_propagator_examples():
    assert bare_propagator(PropagatorModel(1, 3)) == sym(1 / (S + 3), 0)
    d = bare_propagator(PropagatorModel(2, 1))
    assert (ratfn_eval(d.u1, 1), ratfn_eval(d.u2, 1)) == (Fraction(1, 2), Fraction(1, 6))
    for a in ALPHAS:
        pm = PropagatorModel(a, Fraction(1, 3))
        assert contract(bare_symbol(pm), bare_propagator(pm)) == RankTwoSymbol.identity()
        assert bare_propagator(pm) == bare_propagator_closed_form(pm)


def test_self_energy_examples():
    pm = PropagatorModel(2, 1, S)
    assert self_energy(pm) == bare_symbol(pm)
    pm0 = PropagatorModel(2, 1, 0)
    p, pb = decompose(self_energy(pm0)), decompose(bare_symbol(pm0))
    assert p.transverse == RationalFn.const(1)
    assert p.longitudinal == pb.longitudinal


def test_renormalized_examples():
    pm = PropagatorModel(3, 2, S)
    assert renormalized_propagator(pm) == bare_propagator(pm)
    assert renormalized_propagator(PropagatorModel(1, 1, 0)) == sym(1, -1 / (S + 1))


def test_polarization_examples():
    assert polarization(PropagatorModel(2, 1, S)).is_zero()
    assert decompose(polarization(PropagatorModel(2, 1, 0))).transverse == S


@pytest.mark.parametrize("pm", [
    PropagatorModel(3, 1, S),
    PropagatorModel(2, 1, S / (S + 1)),
    PropagatorModel(1, 0, S ** 2),
])
def test_dyson_examples(pm):
    assert dyson_residual(pm).is_zero()


def test_massive_qed_examples():
    mp = MassiveQEDParams(1)
    m = massive_qed_integrand(mp)
    assert (ratfn_eval(m.u1, 1), ratfn_eval(m.u2, 1)) == (Fraction(1, 2), Fraction(-1, 2))
    assert (m.u2 * S).degree_at_infinity == 0
    big = Fraction(10 ** 12)
    assert float(ratfn_eval(m.u2 * S, big)) == pytest.approx(-1.0, rel=1e-9)
    p = decompose(contract(proca_operator_symbol(mp), m))
    assert p.transverse == RationalFn.one()
    assert p.longitudinal != RationalFn.one()


def test_falloff_examples():
    d = bare_propagator(PropagatorModel(2, 1))
    assert falloff_exponent(d, "u1") == -2
    assert falloff_exponent(d, "u1", method="regression") == pytest.approx(-2, abs=0.01)
    m = massive_qed_integrand(MassiveQEDParams(1))
    for comp in ("u2_times_s", "longitudinal"):
        assert falloff_exponent(m, comp) == 0
        assert falloff_exponent(m, comp, method="regression") == pytest.approx(0, abs=0.01)
    assert falloff_exponent(RankTwoSymbol.identity(), "u1") == 0
    with pytest.raises(ZeroCoefficient):
        falloff_exponent(RankTwoSymbol.identity(), "u2_times_s")


# --- structural invariants ---------------------------------------------------

models = st.builds(
    PropagatorModel,
    positive_rationals,
    positive_rationals,
    ratfns(3),
)


@settings(max_examples=50, deadline=None)
@given(models)
def test_dyson_residual_vanishes(pm):
    assume(not (pm.f + pm.mtilde2).is_zero())
    assert dyson_residual(pm).is_zero()


@settings(max_examples=30, deadline=None)
@given(positive_rationals, ratfns(3))
def test_gauge_independence(m2, f):
    assume(not (f + m2).is_zero())
    pms = [PropagatorModel(a, m2, f) for a in ALPHAS]
    pis = [polarization(pm) for pm in pms]
    assert all(p == pis[0] for p in pis)
    assert pis[0] == polarization_closed_form(f)
    props = [renormalized_propagator(pm) for pm in pms]
    assert all(p.u1 == props[0].u1 for p in props)
    assert props == [renormalized_propagator_closed_form(pm) for pm in pms]
    if f != S:
        assert len({p.u2 for p in props}) == len(ALPHAS)


@settings(max_examples=30, deadline=None)
@given(models)
def test_longitudinal_stability(pm):
    assert decompose(self_energy(pm)).longitudinal == decompose(bare_symbol(pm)).longitudinal


def test_transversality_numeric():
    rng = random.Random(5)
    pm = PropagatorModel(2, 1, S / (S + 1))
    pi = polarization(pm)
    for _ in range(50):
        k = np.array([float(x) for x in rand_k(rng)])
        m = evaluate_matrix(pi, tuple(Fraction(x) for x in k), indices="upper").astype(float)
        scale = max(np.abs(m).max(), 1.0) * np.abs(k).max()
        assert np.abs(k @ m).max() <= 1e-12 * scale


def test_transversality_forces_structure():
    # any symbol annihilated by k must have u1 + s u2 = 0
    for pm in (PropagatorModel(2, 1, S ** 2), PropagatorModel(5, 3, 0)):
        assert decompose(polarization(pm)).longitudinal.is_zero()


# --- lattice ------------------------------------------------------------------

def mode_algebra_integral(field: LatticeField, gp: GaugeParams) -> float:
    """Oracle: box integral of A P A / 2 from orthogonality of distinct cosines."""
    alpha, b2 = float(gp.alpha), float(gp.beta) ** 2
    vol = field.L ** 4
    total = 0.0
    for m in field.modes:
        k = 2 * np.pi * np.asarray(m.wave_numbers, float) / field.L
        a = np.asarray(m.amplitude, float)
        total += 0.25 * vol * (k @ k * (a @ a) + b2 / alpha * (a @ a) - (1 - 1 / alpha) * (k @ a) ** 2)
    return total


def test_pure_gauge_mode():
    field = LatticeField(2 * np.pi, 16, (PlaneWave((1, 2, 0, 0), (1.0, 2.0, 0.0, 0.0)),))
    gp = GaugeParams(1, 0)
    assert lattice_divergence_check(field, gp) <= 1e-10
    assert lattice_density_residual(field, gp) <= 1e-10


def test_constant_field():
    field = LatticeField(2 * np.pi, 8, (PlaneWave((0, 0, 0, 0), (0.3, -0.2, 0.5, 1.0)),))
    assert lattice_divergence_check(field, GaugeParams(1, 0)) == 0


def test_random_modes():
    field = random_lattice_field(np.random.default_rng(3), n_modes=3, N=16)
    gp = GaugeParams(2, Fraction(1, 2))
    assert lattice_divergence_check(field, gp) <= 1e-10


def test_lattice_against_mode_algebra():
    field = LatticeField(2 * np.pi, 16, (
        PlaneWave((1, 0, 2, 0), (0.4, -0.1, 0.7, 0.2), 0.3),
        PlaneWave((0, 3, 1, -1), (-0.5, 0.9, 0.1, 0.3), 1.1),
        PlaneWave((2, 1, 0, 1), (0.2, 0.2, -0.6, 0.8), 2.0),
    ))
    for gp in (GaugeParams(1, 0), GaugeParams(2, Fraction(1, 2))):
        lag, quad = _densities(_sample(field), gp)
        vol = field.L ** 4
        oracle = mode_algebra_integral(field, gp)
        assert quad.mean() * vol == pytest.approx(oracle, rel=1e-12)
        assert lag.mean() * vol == pytest.approx(oracle, rel=1e-12)


def test_pointwise_density_identity():
    field = random_lattice_field(np.random.default_rng(8), n_modes=3, N=16, max_wave=3)
    for alpha in (1, 2):
        for beta in (0, Fraction(1, 2)):
            assert lattice_density_residual(field, GaugeParams(alpha, beta)) <= 1e-10


def test_empty_field():
    with pytest.raises(EmptyField):
        lattice_divergence_check(LatticeField(1.0, 8, ()), GaugeParams(1))


def test_lattice_validation():
    with pytest.raises(ValueError):
        LatticeField(1.0, 8, (PlaneWave((4, 0, 0, 0), (1, 0, 0, 0)),))
    with pytest.raises(ValueError):
        LatticeField(1.0, 7, ())
