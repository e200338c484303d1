
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qedprop.clifford import (
    GaugeMatrixInput,
    anticommutator,
    build_phi_matrix,
    dirac_gammas,
    gauge_functional_value,
    gauge_quadratic_form,
    gauge_quadratic_form_direct,
    ghost_action_multiplier,
    identity4,
    trace,
    trace_product,
)
from qedprop.errors import GaugeFunctionalZero, NegativeQuadraticForm
from qedprop.spacetime import EUCLIDEAN, MINKOWSKI, FourVector, Gaussian

from conftest import rationals

G = dirac_gammas()
GE = dirac_gammas(EUCLIDEAN)

# Dirac representation written out by hand, independent of the library's builder
_SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
_G0 = np.diag([1, 1, -1, -1]).astype(complex)
_GJ = [np.block([[np.zeros((2, 2)), s], [-s, np.zeros((2, 2))]]) for s in _SIGMA]


def as_complex(m):
    return np.array([[complex(x) for x in row] for row in m])


def test_matches_hand_written_dirac_matrices():
    for got, want in zip(G.gammas, [_G0] + _GJ):
        np.testing.assert_array_equal(as_complex(got), want)


@pytest.mark.parametrize("mu,nu,expected", [(0, 0, 1), (1, 1, -1), (0, 1, 0)])
def test_trace_product_examples(mu, nu, expected):
    assert trace_product(G, mu, nu) == expected


@pytest.mark.parametrize("g", [G, GE], ids=["minkowski", "euclidean"])
def test_trace_metric_identity_all_pairs(g):
    for mu in range(4):
        for nu in range(4):
            assert trace_product(g, mu, nu) == g.metric[mu, nu]
            ac = anticommutator(g, mu, nu)
            assert (ac == identity4() * (2 * g.metric[mu, nu])).all()


def test_gammas_traceless():
    for g in (G, GE):
        for mu in range(4):
            assert trace(g[mu]) == Gaussian(0, 0)


def test_phi_matrix_examples():
    assert (build_phi_matrix(GaugeMatrixInput(1, (0, 0, 0, 0), 7), G) == identity4()).all()
    assert (build_phi_matrix(GaugeMatrixInput(0, (1, 0, 0, 0), 2), G) == G[0] * 2).all()
    got = build_phi_matrix(GaugeMatrixInput(1, (1, 1, 0, 0), 1), G)
    # A_1 = -A^1 in Minkowski signature
    np.testing.assert_array_equal(as_complex(got), np.eye(4) + _G0 - _GJ[0])


@pytest.mark.parametrize("divA,A,beta,expected", [
    (1, (0, 0, 0, 0), 3, 1),
    (0, (1, 0, 0, 0), 2, 4),
    (0, (0, 1, 0, 0), 2, -4),
])
def test_quadratic_form_examples(divA, A, beta, expected):
    assert gauge_quadratic_form(GaugeMatrixInput(divA, A, beta), G) == expected


def test_functional_value_examples():
    assert gauge_functional_value(GaugeMatrixInput(2, (0, 0, 0, 0), 1), G) == 2
    assert gauge_functional_value(GaugeMatrixInput(0, (1, 0, 0, 0), 2), G) == 2
    with pytest.raises(NegativeQuadraticForm):
        gauge_functional_value(GaugeMatrixInput(0, (0, 1, 0, 0), 2), G)


def test_functional_value_irrational_root():
    v = gauge_functional_value(GaugeMatrixInput(1, (1, 0, 0, 0), 1), G)
    assert v == pytest.approx(2 ** 0.5, rel=1e-15)


def test_imaginary_beta_only_euclidean():
    inp = GaugeMatrixInput(0, (1, 0, 0, 0), Gaussian(0, 2))
    assert gauge_quadratic_form(inp, GE) == -4
    with pytest.raises(ValueError):
        gauge_quadratic_form(inp, G)
    with pytest.raises(ValueError):
        GaugeMatrixInput(0, (1, 0, 0, 0), complex(1, 1))


def test_ghost_examples():
    q = FourVector(2, 1, 0, 0)  # p.p = 3
    assert ghost_action_multiplier(GaugeMatrixInput(1, (0, 0, 0, 0), 5), G, q) == pytest.approx(3)
    assert ghost_action_multiplier(GaugeMatrixInput(3, (0, 0, 0, 0), 1), G, (0, 0, 0, 0)) == 0
    lam = ghost_action_multiplier(GaugeMatrixInput(0, (1, 0, 0, 0), 1), G, (1, 0, 0, 0))
    assert lam == pytest.approx(-1j)


def test_ghost_zero_functional():
    with pytest.raises(GaugeFunctionalZero):
        ghost_action_multiplier(GaugeMatrixInput(0, (0, 0, 0, 0), 1), G, (1, 0, 0, 0))


vectors = st.tuples(rationals, rationals, rationals, rationals)


@settings(max_examples=100, deadline=None)
@given(rationals, vectors, rationals)
def test_quadratic_form_trace_equals_direct(divA, A, beta):
    inp = GaugeMatrixInput(divA, A, beta)
    assert gauge_quadratic_form(inp, G) == gauge_quadratic_form_direct(inp, MINKOWSKI)


@settings(max_examples=50, deadline=None)
@given(rationals, vectors, st.fractions(min_value=0, max_value=9, max_denominator=9))
def test_quadratic_form_euclidean_imaginary_beta(divA, A, b):
    inp = GaugeMatrixInput(divA, A, Gaussian(0, b))
    assert gauge_quadratic_form(inp, GE) == divA ** 2 - b ** 2 * sum(x * x for x in A)


@settings(max_examples=20, deadline=None)
@given(vectors, vectors)
def test_ghost_superposition(p, q):
    # Phi fixed at 1: divA = 1, A = 0 leaves only the p.p term, linear in p.p
    inp = GaugeMatrixInput(1, (0, 0, 0, 0), 1)
    pp = FourVector(*p).dot(p, MINKOWSKI)
    qq = FourVector(*q).dot(q, MINKOWSKI)
    lam_p = ghost_action_multiplier(inp, G, p)
    lam_q = ghost_action_multiplier(inp, G, q)
    assert lam_p == pytest.approx(float(pp), abs=1e-12)
    assert lam_p + lam_q == pytest.approx(float(pp + qq), abs=1e-12)
    # Phi = 1 with the A.p term: A = (1,0,0,0), beta = 1, divA = 0 is linear in A.p
    inp2 = GaugeMatrixInput(0, (1, 0, 0, 0), 1)
    a = ghost_action_multiplier(inp2, G, p) + ghost_action_multiplier(inp2, G, q)
    b = ghost_action_multiplier(inp2, G, tuple(x + y for x, y in zip(p, q)))
    assert a == pytest.approx(b, abs=1e-12)
