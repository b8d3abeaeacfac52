from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptflab.dyadic import Dyadic

dyadics = st.builds(Dyadic, st.integers(-10**6, 10**6), st.integers(0, 40))


def test_canonical_form():
    d = Dyadic(12, 4)
    assert (d.numerator, d.exponent) == (3, 2)
    assert Dyadic(0, 9).exponent == 0
    assert Dyadic(3, -2) == 12


def test_string_forms():
    assert str(Dyadic(51, 4)) == "51/16"
    assert str(Dyadic(8, 2)) == "2"
    assert Dyadic(51, 4).power_form() == "51/2^4"


def test_from_value_rejects_non_dyadic():
    assert Dyadic.from_value(Fraction(3, 8)) == Dyadic(3, 3)
    with pytest.raises(ValueError):
        Dyadic.from_value(Fraction(1, 3))


def test_exact_comparison():
    assert Dyadic(51, 4) > Dyadic(25, 3)
    assert Dyadic(51, 4) > 3.125
    assert not Dyadic(25, 3) > 3.125
    assert Dyadic.parse("249/64") > Fraction(245, 64)


@given(dyadics, dyadics)
def test_ring_operations_match_fraction(a, b):
    fa, fb = a.as_fraction(), b.as_fraction()
    assert (a + b).as_fraction() == fa + fb
    assert (a - b).as_fraction() == fa - fb
    assert (a * b).as_fraction() == fa * fb
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)
    assert hash(a) == hash(fa)


@given(dyadics)
def test_result_stays_canonical(a):
    s = a * 6 + a
    assert s.exponent == 0 or s.numerator % 2 == 1
