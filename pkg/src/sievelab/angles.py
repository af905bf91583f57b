"""Exact roots of unity as reduced rational exponents.

A RationalAngle num/den stands for e(num/den) = exp(2*pi*i*num/den).
Keeping the exponent exact until the final complex accumulation removes
per-value rounding from identity checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class RationalAngle:
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        n = self.num % self.den
        g = math.gcd(n, self.den)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", self.den // g)

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.num, self.den)

    def scale(self, k: int) -> "RationalAngle":
        """The angle of e(num/den)**k."""
        return RationalAngle(self.num * k, self.den)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.num / self.den)

    @property
    def is_zero(self) -> bool:
        return self.num == 0


ZERO_ANGLE = RationalAngle(0, 1)
