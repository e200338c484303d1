import random
from dataclasses import fields
from fractions import Fraction

import pytest
import sympy as sp

from qedprop.renorm import (
    PhysicalParams,
    RenormConstants,
    bare_from_physical,
    bare_mass_ratio,
    counterterm_coeffs,
    mtilde_squared,
    mutate,
    physical_coeffs,
    split_check,
)

R = sp.Rational


def rand_pos(rng):
    return R(rng.randint(1, 20), rng.randint(1, 20))


def rand_set(rng, rho_default=True):
    rc = RenormConstants(*(rand_pos(rng) for _ in range(5)), rho=None if rho_default else rand_pos(rng))
    pp = PhysicalParams(R(rng.randint(-9, 9), rng.randint(1, 9)), rand_pos(rng), rand_pos(rng), rand_pos(rng))
    return rc, pp


def test_identity_renormalization():
    rc = RenormConstants(rho=1)
    pp = PhysicalParams(R(1, 3), 2, 3, R(1, 2))
    b = bare_from_physical(rc, pp)
    assert (b.eB, b.mB, b.alphaB, b.betaB) == (pp.e, pp.m, pp.alpha, pp.beta)
    assert all(c == 0 for c in counterterm_coeffs(rc, pp).as_tuple())
    assert split_check(RenormConstants(), pp)


def test_bare_examples():
    assert bare_from_physical(RenormConstants(zA=4, zAlpha=1), PhysicalParams(alpha=1)).alphaB == 4
    assert bare_from_physical(RenormConstants(zA=4, zE=2, zPsi=1), PhysicalParams(e=3)).eB == 3


def test_mtilde_examples():
    assert mtilde_squared(RenormConstants(), PhysicalParams(alpha=1, beta=1)) == 1
    assert mtilde_squared(RenormConstants(zA=4), PhysicalParams(alpha=2, beta=2)) == Fraction(1, 2)


def test_physical_examples():
    c = physical_coeffs(PhysicalParams(alpha=1, beta=0))
    assert (c.cDiv, c.cA2) == (R(-1, 2), 0)
    assert physical_coeffs(PhysicalParams(alpha=2, beta=2)).cA2 == -1


def test_counterterm_examples():
    assert counterterm_coeffs(RenormConstants(zAlpha=R(7, 3)), PhysicalParams(beta=3)).cA2 == 0
    c = counterterm_coeffs(RenormConstants(zA=2, zAlpha=3, rho=1), PhysicalParams(alpha=1, beta=1))
    assert (c.cF, c.cDiv, c.cA2) == (R(-1, 4), -1, -1)


def test_default_rho_leaves_only_divergence_counterterm():
    rng = random.Random(1)
    for _ in range(20):
        rc, pp = rand_set(rng)
        gb = counterterm_coeffs(rc, pp).gauge_breaking()
        assert gb["A.A"] == 0
        if rc.zAlpha != 1:
            assert gb["(d.A)^2"] != 0


def test_split_random_and_mutations():
    rng = random.Random(2)
    for i in range(50):
        rc, pp = rand_set(rng, rho_default=i % 2 == 0)
        assert split_check(rc, pp)
        ct = counterterm_coeffs(rc, pp)
        for f in fields(ct):
            assert not split_check(rc, pp, mutate(ct, f.name, R(1, 8)))


def test_split_cf_mutation_example():
    rc, pp = RenormConstants(), PhysicalParams()
    assert not split_check(rc, pp, mutate(counterterm_coeffs(rc, pp), "cF", R(1, 8)))


def test_mtilde_rescaling_invariance():
    rng = random.Random(3)
    rc = RenormConstants(zA=R(5, 3))
    pp = PhysicalParams(alpha=R(2, 7), beta=R(3, 2))
    base = mtilde_squared(rc, pp)
    for _ in range(20):
        lam = R(rng.randint(1, 30), rng.randint(1, 30))
        scaled = PhysicalParams(alpha=lam * pp.alpha, beta=sp.sqrt(lam) * pp.beta)
        assert mtilde_squared(rc, scaled) == base


def test_bare_mass_ratio_matches_mtilde():
    rng = random.Random(4)
    for _ in range(20):
        rc, pp = rand_set(rng)
        assert bare_mass_ratio(rc, pp) == R(mtilde_squared(rc, pp).numerator, mtilde_squared(rc, pp).denominator)
    rc = RenormConstants(zAlpha=4, rho=1)
    pp = PhysicalParams(alpha=1, beta=1)
    assert bare_mass_ratio(rc, pp) != mtilde_squared(rc, pp)


def test_invalid_constants():
    with pytest.raises(ValueError):
        RenormConstants(zA=0)
    with pytest.raises(ValueError):
        PhysicalParams(alpha=-1)
