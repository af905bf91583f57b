"""Compensated accumulation helpers.

math.fsum is the stdlib's error-free summation; these wrappers extend it to
complex data so long reductions do not leak rounding into identity checks.
"""

from __future__ import annotations

import math
from typing import Iterable


def csum(terms: Iterable[complex]) -> complex:
    """Compensated sum of complex terms."""
    re = []
    im = []
    for t in terms:
        z = complex(t)
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


def rsum(terms: Iterable[float]) -> float:
    """Compensated sum of real terms."""
    return math.fsum(terms)
