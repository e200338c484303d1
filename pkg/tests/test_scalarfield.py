from fractions import Fraction

import pytest
from hypothesis import given, settings, assume

from qedprop.errors import DivisionByZeroFn, PoleAtPoint
from qedprop.scalarfield import (
    Polynomial,
    RationalFn,
    normalize,
    parse,
    poly_gcd,
    ratfn_binary,
    ratfn_equal,
    ratfn_eval,
    serialize,
)

from conftest import polynomials, ratfns

S = RationalFn.s()


def test_common_denominator_collapses():
    assert 1 / (S + 1) + S / (S + 1) == RationalFn.one()


def test_gcd_cancellation():
    a = RationalFn([-1, 0, 1], [-1, 1])
    assert a == S + 1
    assert a.den == Polynomial([1])


def test_product_cancels():
    prod = ratfn_binary(1 / (S + 1), (S + 1) / (S + 2), "mul")
    assert prod == 1 / (S + 2)
    for x in range(4):
        lhs = Fraction(1, x + 1) * Fraction(x + 1, x + 2)
        assert ratfn_eval(prod, x) == lhs


@pytest.mark.parametrize("a,s,expected", [
    (1 / (S + 1), 1, Fraction(1, 2)),
    ((S + 2) / (S + 3), 0, Fraction(2, 3)),
    (Fraction(1) / ((S + 1) * (S + 2)), 1, Fraction(1, 6)),
])
def test_eval(a, s, expected):
    assert ratfn_eval(a, s) == expected


def test_eval_pole():
    with pytest.raises(PoleAtPoint):
        ratfn_eval(1 / (S - 2), 2)


def test_division_by_zero_function():
    with pytest.raises(DivisionByZeroFn):
        ratfn_binary(S, S - S, "div")


def test_equal_examples():
    assert ratfn_equal(1 / (S + 1), (S + 2) / ((S + 1) * (S + 2)))
    assert not ratfn_equal(1 / (S + 1), 1 / (S + 2))


def test_canonical_form_is_monic_and_reduced():
    a = RationalFn([6, 4], [4, 2])  # (6+4s)/(4+2s) = (3+2s)/(2+s)
    assert a.den.lead == 1
    assert poly_gcd(a.num, a.den) == Polynomial([1])
    assert a == (2 * S + 3) / (S + 2)


def test_big_integers_do_not_overflow():
    big = 10 ** 40 + 7
    a = RationalFn([big, 1], [1])
    b = a * a / a
    assert b == a
    assert ratfn_eval(a, big) == 2 * big


def test_serialization_roundtrip():
    a = (Fraction(2, 3) * S ** 2 - 1) / (S + Fraction(1, 7))
    text = serialize(a)
    assert text.startswith("num_coeffs=[")
    assert parse(text) == a
    assert parse("num_coeffs=[0,1] / den_coeffs=[1,1]") == S / (S + 1)


def test_degree_at_infinity():
    assert (1 / (S + 1)).degree_at_infinity == -1
    assert RationalFn.const(3).degree_at_infinity == 0


@given(ratfns())
def test_normalize_idempotent(a):
    assert normalize(normalize(a)) == normalize(a) == a


@settings(max_examples=200, deadline=None)
@given(ratfns(), ratfns(), ratfns())
def test_distributive(a, b, c):
    assert (a + b) * c == a * c + b * c


@settings(max_examples=200, deadline=None)
@given(ratfns(), ratfns(nonzero=True))
def test_division_inverts_multiplication(a, b):
    assume(not b.is_zero())
    assert (a / b) * b == a


@settings(max_examples=100, deadline=None)
@given(ratfns(max_deg=3), ratfns(max_deg=3))
def test_equality_agrees_with_pointwise(a, b):
    # deg+1 distinct non-pole sample points decide equality of rational functions
    diff_bound = max(a.num.degree + b.den.degree, b.num.degree + a.den.degree, 0) + 1
    points, x = [], 0
    while len(points) < diff_bound:
        if a.den(x) != 0 and b.den(x) != 0:
            points.append(x)
        x += 1
    pointwise = all(ratfn_eval(a, p) == ratfn_eval(b, p) for p in points)
    assert ratfn_equal(a, b) == pointwise


@given(polynomials(), polynomials(nonzero=True))
def test_polynomial_divmod(a, b):
    assume(not b.is_zero())
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree
