from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qedprop.scalarfield import Polynomial, RationalFn

ACCEPTANCE_LINES: list[str] = []


def small_ints(lo=-9, hi=9):
    return st.integers(lo, hi)


@st.composite
def polynomials(draw, max_deg=4, nonzero=False):
    coeffs = draw(st.lists(small_ints(), min_size=1, max_size=max_deg + 1))
    p = Polynomial(coeffs)
    if nonzero and p.is_zero():
        p = Polynomial([draw(st.integers(1, 9))])
    return p


@st.composite
def ratfns(draw, max_deg=4, nonzero=False):
    return RationalFn(draw(polynomials(max_deg, nonzero)), draw(polynomials(max_deg, nonzero=True)))


rationals = st.fractions(min_value=-9, max_value=9, max_denominator=9)
positive_rationals = st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9)


@pytest.fixture
def s():
    return RationalFn.s()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
