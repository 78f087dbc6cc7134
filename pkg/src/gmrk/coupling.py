"""Exact Clebsch-Gordan coefficients and Spin(3)/Spin(4) irrep metadata.

Coefficients are evaluated with Racah's single-sum closed formula over
exact factorial rationals, so every value is a signed square root of a
rational number.  Spin(4) = SU(2) x SU(2) couplings factorize into
products of two SU(2) coefficients.

The Condon-Shortley phase convention is the default.  A global toggle
(`set_phase_convention`) multiplies every coefficient by (-1)^(j1+j2-j),
which is the reversed-coupling-order convention; it exists so that
convention independence of downstream residuals can be asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidLabelError
from .halfint import HalfInt

_PHASE_FLIPPED = False


def set_phase_convention(name: str) -> None:
    """Select 'condon_shortley' (default) or 'reversed' globally."""
    global _PHASE_FLIPPED
    if name not in ("condon_shortley", "reversed"):
        raise ValueError(f"unknown phase convention {name!r}")
    _PHASE_FLIPPED = name == "reversed"


def get_phase_convention() -> str:
    return "reversed" if _PHASE_FLIPPED else "condon_shortley"


@dataclass(frozen=True)
class CgValue:
    """A signed square root of a non-negative rational, sign * sqrt(radicand).

    Closed under multiplication.  Sums of distinct radicands leave this
    domain, so matrix assembly converts to float at the last step.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")

    @staticmethod
    def zero() -> "CgValue":
        return CgValue(0, Fraction(0))

    @staticmethod
    def one() -> "CgValue":
        return CgValue(1, Fraction(1))

    @staticmethod
    def of_rational(q: Fraction) -> "CgValue":
        q = Fraction(q)
        if q == 0:
            return CgValue.zero()
        return CgValue(1 if q > 0 else -1, q * q)

    def __mul__(self, other: "CgValue") -> "CgValue":
        s = self.sign * other.sign
        if s == 0:
            return CgValue.zero()
        return CgValue(s, self.radicand * other.radicand)

    def __neg__(self) -> "CgValue":
        return CgValue(-self.sign, self.radicand)

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def __bool__(self) -> bool:
        return self.sign != 0


@dataclass(frozen=True)
class IrrepLabel:
    """A Spin(n) irrep tag: one spin for n=3, an (j1, j2) pair for n=4."""

    n: int
    parts: tuple

    def __post_init__(self):
        if self.n not in (3, 4):
            raise InvalidLabelError(f"unsupported n={self.n} (only 3 and 4)")
        expected = 1 if self.n == 3 else 2
        if len(self.parts) != expected:
            raise InvalidLabelError(
                f"n={self.n} irrep label needs {expected} part(s), got {len(self.parts)}"
            )
        for p in self.parts:
            if not isinstance(p, HalfInt):
                raise InvalidLabelError("irrep parts must be HalfInt")
            if p.twice < 0:
                raise InvalidLabelError(f"negative irrep label {p}")

    @staticmethod
    def of(n: int, *parts) -> "IrrepLabel":
        return IrrepLabel(n, tuple(HalfInt.of(p) for p in parts))

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.parts)


def _check_spin(j: HalfInt) -> HalfInt:
    j = HalfInt.of(j)
    if j.twice < 0:
        raise InvalidLabelError(f"negative spin label {j}")
    return j


@lru_cache(maxsize=None)
def _cg_racah(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> CgValue:
    """Condon-Shortley CG coefficient from doubled labels, Racah's sum."""
    if tm1 + tm2 != tm:
        return CgValue.zero()
    if tj < abs(tj1 - tj2) or tj > tj1 + tj2:
        return CgValue.zero()
    # j1+j2+j must be an integer, m within range and of matching parity
    if (tj1 + tj2 + tj) % 2 != 0:
        return CgValue.zero()
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm) > tj:
        return CgValue.zero()
    if (tj1 + tm1) % 2 != 0 or (tj2 + tm2) % 2 != 0 or (tj + tm) % 2 != 0:
        return CgValue.zero()

    def f(twice: int) -> int:
        assert twice % 2 == 0 and twice >= 0
        return math.factorial(twice // 2)

    pref = Fraction(tj + 1, 1) * Fraction(
        f(tj1 + tj2 - tj) * f(tj1 - tj2 + tj) * f(-tj1 + tj2 + tj),
        f(tj1 + tj2 + tj + 2),
    )
    pref *= f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2)
    pref *= f(tj + tm) * f(tj - tm)

    kmin = max(0, tj2 - tj - tm1, tj1 + tm2 - tj) // 2
    kmax = min(tj1 + tj2 - tj, tj1 - tm1, tj2 + tm2) // 2
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        denom = (
            math.factorial(k)
            * f(tj1 + tj2 - tj - 2 * k)
            * f(tj1 - tm1 - 2 * k)
            * f(tj2 + tm2 - 2 * k)
            * f(tj - tj2 + tm1 + 2 * k)
            * f(tj - tj1 - tm2 + 2 * k)
        )
        total += Fraction((-1) ** k, denom)
    if total == 0:
        return CgValue.zero()
    sign = 1 if total > 0 else -1
    return CgValue(sign, pref * total * total)


def cg(j1, m1, j2, m2, j, m) -> CgValue:
    """Exact SU(2) Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>."""
    j1, j2, j = _check_spin(j1), _check_spin(j2), _check_spin(j)
    m1, m2, m = HalfInt.of(m1), HalfInt.of(m2), HalfInt.of(m)
    value = _cg_racah(j1.twice, m1.twice, j2.twice, m2.twice, j.twice, m.twice)
    if _PHASE_FLIPPED and value:
        exponent = (j1.twice + j2.twice - j.twice) // 2
        if exponent % 2:
            value = -value
    return value


def cg_spin4(J1: IrrepLabel, x1, J2: IrrepLabel, x2, J: IrrepLabel, x) -> CgValue:
    """Spin(4) CG as a product of the two SU(2) factor coefficients.

    Magnetic arguments are pairs (m for the first factor, m for the second).
    """
    for lab in (J1, J2, J):
        if lab.n != 4:
            raise InvalidLabelError(f"cg_spin4 needs n=4 labels, got n={lab.n}")
    x1 = tuple(HalfInt.of(v) for v in x1)
    x2 = tuple(HalfInt.of(v) for v in x2)
    x = tuple(HalfInt.of(v) for v in x)
    if not (len(x1) == len(x2) == len(x) == 2):
        raise InvalidLabelError("n=4 magnetic labels are pairs")
    left = cg(J1.parts[0], x1[0], J2.parts[0], x2[0], J.parts[0], x[0])
    right = cg(J1.parts[1], x1[1], J2.parts[1], x2[1], J.parts[1], x[1])
    return left * right


def dim(J: IrrepLabel) -> int:
    """Dimension of the irrep: 2j+1 for n=3, (2j1+1)(2j2+1) for n=4."""
    out = 1
    for p in J.parts:
        out *= p.twice + 1
    return out


def casimir2(J: IrrepLabel) -> Fraction:
    """Second-order Casimir, normalized as (1/2) sum_ab (M_ab)^2.

    n=3: j(j+1).  n=4: 2(j1(j1+1) + j2(j2+1)).  This scale reproduces the
    values 2n, 2n-4 and 4n on the symmetric, adjoint and boxed-square
    tensor irreps respectively.
    """
    terms = [p.as_fraction() * (p.as_fraction() + 1) for p in J.parts]
    if J.n == 3:
        return terms[0]
    return 2 * (terms[0] + terms[1])
