"""Exact half-integer arithmetic for spin and magnetic labels."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidLabelError


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number of the form twice/2, stored exactly.

    Spin labels (j) and magnetic labels (k, m) are all half-integers;
    storing 2x as an int keeps every comparison and sum exact.
    """

    twice: int

    @staticmethod
    def of(value) -> "HalfInt":
        """Coerce an int, Fraction, float multiple of 1/2, or 'p/q' string."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        if isinstance(value, str):
            frac = Fraction(value)
            value = frac
        if isinstance(value, float):
            doubled = value * 2
            if doubled != int(doubled):
                raise InvalidLabelError(f"{value} is not a half-integer")
            return HalfInt(int(doubled))
        if isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise InvalidLabelError(f"{value} is not a half-integer")
            return HalfInt(int(value * 2))
        raise InvalidLabelError(f"cannot interpret {value!r} as a half-integer")

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __radd__(self, other) -> "HalfInt":
        return self.__add__(other)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __float__(self) -> float:
        return self.twice / 2.0

    def __bool__(self) -> bool:
        return self.twice != 0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


ZERO = HalfInt(0)


def magnetic_range(j: HalfInt):
    """All magnetic labels -j, -j+1, ..., j for a spin j."""
    j = HalfInt.of(j)
    if j.twice < 0:
        raise InvalidLabelError(f"negative spin label {j}")
    return [HalfInt(t) for t in range(-j.twice, j.twice + 1, 2)]
