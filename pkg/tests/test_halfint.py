from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gmrk import HalfInt, magnetic_range
from gmrk.halfint import ZERO


def test_coercions():
    assert HalfInt.of(2).twice == 4
    assert HalfInt.of("3/2").twice == 3
    assert HalfInt.of(0.5).twice == 1
    assert HalfInt.of(Fraction(5, 2)).twice == 5
    assert HalfInt.of(HalfInt(3)).twice == 3


def test_bad_values():
    from gmrk import InvalidLabelError

    with pytest.raises(InvalidLabelError):
        HalfInt.of(0.3)
    with pytest.raises(InvalidLabelError):
        HalfInt.of("1/3")


def test_str_fractions():
    assert str(HalfInt.of("3/2")) == "3/2"
    assert str(HalfInt.of(2)) == "2"
    assert str(ZERO) == "0"


def test_arithmetic_and_order():
    a, b = HalfInt.of("1/2"), HalfInt.of(1)
    assert (a + b).twice == 3
    assert (b - a) == a
    assert a < b
    assert not a.is_integer and b.is_integer
    assert a.as_fraction() == Fraction(1, 2)


@given(st.integers(min_value=0, max_value=20))
def test_magnetic_range_span(twice_j):
    j = HalfInt(twice_j)
    ms = magnetic_range(j)
    assert len(ms) == twice_j + 1
    assert ms[0].twice == -twice_j and ms[-1].twice == twice_j
    assert all(m2.twice - m1.twice == 2 for m1, m2 in zip(ms, ms[1:]))
