"""Coupling-coefficient engine, checked against an independent oracle
(sympy's exact angular-momentum coupling) and against its own exact
orthogonality and symmetry identities."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational
from sympy.physics.quantum.cg import CG

from gmrk import (
    CgValue,
    IrrepLabel,
    InvalidLabelError,
    casimir2,
    cg,
    cg_spin4,
    dim,
    get_phase_convention,
    set_phase_convention,
)
from gmrk.halfint import HalfInt, magnetic_range


def _oracle(tj1, tm1, tj2, tm2, tj, tm) -> float:
    val = CG(
        Rational(tj1, 2), Rational(tm1, 2),
        Rational(tj2, 2), Rational(tm2, 2),
        Rational(tj, 2), Rational(tm, 2),
    ).doit()
    return float(val)


def test_against_oracle_random():
    rng = random.Random(20240817)
    checked = 0
    for _ in range(300):
        tj1 = rng.randint(0, 8)
        tj2 = rng.randint(0, 8)
        tj = rng.randint(abs(tj1 - tj2), tj1 + tj2)
        if (tj1 + tj2 + tj) % 2:
            continue
        tm1 = rng.choice(range(-tj1, tj1 + 1, 2)) if tj1 else 0
        tm2 = rng.choice(range(-tj2, tj2 + 1, 2)) if tj2 else 0
        tm = tm1 + tm2
        if abs(tm) > tj:
            continue
        mine = float(cg(Fraction(tj1, 2), Fraction(tm1, 2),
                        Fraction(tj2, 2), Fraction(tm2, 2),
                        Fraction(tj, 2), Fraction(tm, 2)))
        theirs = _oracle(tj1, tm1, tj2, tm2, tj, tm)
        assert mine == pytest.approx(theirs, abs=1e-14)
        checked += 1
    assert checked > 150


def test_exact_values():
    # <1/2 1/2; 1/2 -1/2 | 0 0> = 1/sqrt(2)
    v = cg("1/2", "1/2", "1/2", "-1/2", 0, 0)
    assert v.sign == 1 and v.radicand == Fraction(1, 2)
    # <1 0; 1 0 | 2 0> = sqrt(2/3)
    v = cg(1, 0, 1, 0, 2, 0)
    assert v.sign == 1 and v.radicand == Fraction(2, 3)
    # stretched state coefficient is exactly 1
    assert cg(3, 3, 2, 2, 5, 5).radicand == 1


def test_selection_rules():
    assert not cg(1, 0, 1, 1, 2, 0)       # m mismatch
    assert not cg(1, 1, 1, 1, 3, 2)       # triangle violated
    assert not cg("1/2", "1/2", 1, 0, 2, "1/2")  # parity of j1+j2+j


def _orthogonality_residual(tj1, tj2) -> float:
    """Max violation of sum_j <m1 m2|j m><m1' m2'|j m> = delta."""
    worst = 0.0
    ms1 = range(-tj1, tj1 + 1, 2)
    ms2 = range(-tj2, tj2 + 1, 2)
    for tm1 in ms1:
        for tm2 in ms2:
            for tn1 in ms1:
                for tn2 in ms2:
                    if tm1 + tm2 != tn1 + tn2:
                        continue
                    total = 0.0
                    for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                        a = float(cg(Fraction(tj1, 2), Fraction(tm1, 2),
                                     Fraction(tj2, 2), Fraction(tm2, 2),
                                     Fraction(tj, 2), Fraction(tm1 + tm2, 2)))
                        b = float(cg(Fraction(tj1, 2), Fraction(tn1, 2),
                                     Fraction(tj2, 2), Fraction(tn2, 2),
                                     Fraction(tj, 2), Fraction(tn1 + tn2, 2)))
                        total += a * b
                    expect = 1.0 if (tm1, tm2) == (tn1, tn2) else 0.0
                    worst = max(worst, abs(total - expect))
    return worst


def test_orthogonality_exhaustive_j_le_4():
    for tj1 in range(0, 9):
        for tj2 in range(0, 9):
            assert _orthogonality_residual(tj1, tj2) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=10),
    st.integers(min_value=0, max_value=10),
    st.data(),
)
def test_symmetry_exchange(tj1, tj2, data):
    """<j1 m1; j2 m2|j m> = (-1)^(j1+j2-j) <j2 m2; j1 m1|j m>."""
    tj = data.draw(st.integers(min_value=abs(tj1 - tj2), max_value=tj1 + tj2))
    if (tj1 + tj2 + tj) % 2:
        tj += 1
    if tj > tj1 + tj2:
        return
    tm1 = data.draw(st.integers(min_value=-tj1, max_value=tj1))
    tm2 = data.draw(st.integers(min_value=-tj2, max_value=tj2))
    if (tm1 + tj1) % 2 or (tm2 + tj2) % 2 or abs(tm1 + tm2) > tj:
        return
    lhs = cg(Fraction(tj1, 2), Fraction(tm1, 2), Fraction(tj2, 2),
             Fraction(tm2, 2), Fraction(tj, 2), Fraction(tm1 + tm2, 2))
    rhs = cg(Fraction(tj2, 2), Fraction(tm2, 2), Fraction(tj1, 2),
             Fraction(tm1, 2), Fraction(tj, 2), Fraction(tm1 + tm2, 2))
    phase = (-1) ** ((tj1 + tj2 - tj) // 2)
    assert float(lhs) == pytest.approx(phase * float(rhs), abs=1e-14)


def test_phase_convention_toggle():
    base = float(cg(1, 1, 1, 0, 1, 1))
    try:
        set_phase_convention("reversed")
        assert get_phase_convention() == "reversed"
        flipped = float(cg(1, 1, 1, 0, 1, 1))
        # j1 + j2 - j = 1 here, so the sign flips
        assert flipped == pytest.approx(-base, abs=1e-15)
    finally:
        set_phase_convention("condon_shortley")
    with pytest.raises(ValueError):
        set_phase_convention("nonsense")


def test_cgvalue_algebra():
    a = CgValue.of_rational(Fraction(-2, 3))
    b = CgValue.of_rational(Fraction(1, 2))
    c = a * b
    assert c.sign == -1 and c.radicand == Fraction(4, 9) * Fraction(1, 4)
    assert float(-c) == pytest.approx(-float(c))
    assert not (a * CgValue.zero())
    with pytest.raises(ValueError):
        CgValue(1, Fraction(-1))
    with pytest.raises(ValueError):
        CgValue(0, Fraction(1))


def test_irrep_labels_and_dim():
    j2 = IrrepLabel.of(3, 2)
    assert dim(j2) == 5 and str(j2) == "2"
    half = IrrepLabel.of(4, "1/2", "1/2")
    assert dim(half) == 4 and str(half) == "1/2 1/2"
    with pytest.raises(InvalidLabelError):
        IrrepLabel.of(3, -1)
    with pytest.raises(InvalidLabelError):
        IrrepLabel.of(4, 1)
    with pytest.raises(InvalidLabelError):
        IrrepLabel.of(5, 1)


def test_casimir_values():
    assert casimir2(IrrepLabel.of(3, 2)) == 6
    assert casimir2(IrrepLabel.of(3, 1)) == 2
    assert casimir2(IrrepLabel.of(3, 3)) == 12
    assert casimir2(IrrepLabel.of(4, 1, 1)) == 8
    assert casimir2(IrrepLabel.of(4, 1, 0)) == 4
    assert casimir2(IrrepLabel.of(4, "1/2", "1/2")) == 3


def test_casimir_monotone_in_j():
    vals = [casimir2(IrrepLabel.of(3, Fraction(t, 2))) for t in range(0, 17)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_cg_spin4_factorizes():
    J1 = IrrepLabel.of(4, 1, 0)
    J2 = IrrepLabel.of(4, 1, 1)
    J = IrrepLabel.of(4, 2, 1)
    v = cg_spin4(J1, (0, 0), J2, (1, -1), J, (1, -1))
    expect = float(cg(1, 0, 1, 1, 2, 1)) * float(cg(0, 0, 1, -1, 1, -1))
    assert float(v) == pytest.approx(expect, abs=1e-15)
    with pytest.raises(InvalidLabelError):
        cg_spin4(IrrepLabel.of(3, 1), (0,), J2, (0, 0), J, (0, 0))
