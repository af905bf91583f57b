"""Kloosterman and Ramanujan sums, amplitude sums and their completion.

Phases are carried as integer numerators over the relevant modulus and
converted to the unit circle once per term; accumulation is compensated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .accum import csum, rsum
from .modular import divisors, euler_phi, inv_mod, is_prime, tau

MODULUS_CAP = 1 << 40


class ModulusOverflow(ValueError):
    """Raised when a product of moduli exceeds the 2^40 desk-scale cap."""


class RangeTooLong(ValueError):
    """Raised when an incomplete-sum interval is at least a full period."""


class NotDistinct(ValueError):
    """Raised when a factorization claim needs pairwise distinct primes."""


@dataclass(frozen=True)
class SumReport:
    value: complex
    bound: float
    passed: bool
    terms_skipped: int = 0


@dataclass(frozen=True)
class ErrorTermReport:
    """Harmonic-weighted tail of the amplitude spectrum plus the per-frequency
    Weil comparison (the exact, hard-assertable part)."""

    value: float
    bound: float
    passed: bool
    terms_skipped: int
    worst_ratio: float
    worst_a: int


@dataclass(frozen=True)
class AmplitudeSpec:
    """Prime triple (q, q1, q2) and shifts (l, l1, l2) of the amplitude phase

        f(x) = inv(x + l*q) * l1 / q1 - inv(x) * l2 / q2 + inv(x) * l / q.
    """

    q: int
    q1: int
    q2: int
    l: int
    l1: int
    l2: int

    def __post_init__(self):
        for m in (self.q, self.q1, self.q2):
            if not is_prime(m):
                raise ValueError(f"modulus {m} is not prime")
        if self.c >= MODULUS_CAP:
            raise ModulusOverflow(f"q*q1*q2 = {self.c} >= 2^40")

    @property
    def c(self) -> int:
        return self.q * self.q1 * self.q2

    @property
    def distinct(self) -> bool:
        return len({self.q, self.q1, self.q2}) == 3


def kloosterman(m: int, n: int, c: int) -> complex:
    """K(m, n; c) = sum over units a mod c of e((m*a + n*inv(a))/c)."""
    if c < 1:
        raise ValueError("modulus must be >= 1")
    terms = []
    for a in range(1, c + 1):
        if math.gcd(a, c) != 1:
            continue
        d = inv_mod(a, c)
        terms.append(np.exp(2j * np.pi * ((m * a + n * d) % c) / c))
    if not terms:  # c == 1: the empty product has the single unit a = 0
        return 1 + 0j
    return csum(terms)


def kloosterman_all(c: int) -> np.ndarray:
    """K(m, n; c) for all (m, n) in [0, c)^2, as a c x c array.

    Factors the double grid through the unit list: K = A @ B with
    A[m, a] = e(m*a/c) and B[a, n] = e(n*inv(a)/c).
    """
    units = np.array([a for a in range(1, max(c, 2)) if math.gcd(a, c) == 1])
    if c == 1:
        return np.ones((1, 1), dtype=complex)
    invs = np.array([inv_mod(int(a), c) for a in units])
    ms = np.arange(c)
    A = np.exp(2j * np.pi * np.outer(ms, units) / c)
    B = np.exp(2j * np.pi * np.outer(invs, ms) / c)
    return A @ B


def ramanujan(l: int, q: int) -> float:
    """c_q(l) = sum over units a mod q of e(a*l/q); always real."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    if q == 1:
        return 1.0
    terms = []
    for a in range(1, q):
        if math.gcd(a, q) == 1:
            terms.append(np.exp(2j * np.pi * ((a * l) % q) / q))
    val = csum(terms)
    if abs(val.imag) > 1e-10 * q:
        raise AssertionError(f"Ramanujan sum c_{q}({l}) has imaginary part {val.imag}")
    return val.real


def ramanujan_grid(q: int, lmax: int) -> np.ndarray:
    """c_q(l) for l = 0..lmax, vectorized over the unit list."""
    if q == 1:
        return np.ones(lmax + 1)
    units = np.array([a for a in range(1, q) if math.gcd(a, q) == 1])
    ls = np.arange(lmax + 1)
    return np.exp(2j * np.pi * np.outer(ls, units) / q).sum(axis=1).real


def weil_check(m: int, n: int, c: int) -> SumReport:
    """Kloosterman sum against the bound gcd(m,n,c)^(1/2) * c^(1/2) * tau(c)."""
    value = kloosterman(m, n, c)
    g = math.gcd(math.gcd(m, c), math.gcd(n, c))
    bound = math.sqrt(g) * math.sqrt(c) * tau(c)
    return SumReport(value=value, bound=bound, passed=abs(value) <= bound + 1e-9)


def gcd_sum(q: int) -> tuple[int, int]:
    """(sum over d mod q of gcd(d, q), q*tau(q)); value by the divisor closed form."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    value = sum(l * euler_phi(q // l) for l in divisors(q))
    return value, q * tau(q)


@lru_cache(maxsize=None)
def _inv_table(p: int) -> np.ndarray:
    """Inverse table mod prime p; entry 0 unused (stored as 0)."""
    tab = np.zeros(p, dtype=np.int64)
    for i in range(1, p):
        tab[i] = pow(i, p - 2, p)
    return tab


def _phase_numerators(spec: AmplitudeSpec) -> tuple[np.ndarray, np.ndarray]:
    """(numerators of f(x) mod c for x = 0..c-1, admissibility mask).

    x is admissible when x + l*q is invertible mod q1 and x is invertible
    mod q2*q; inadmissible x are skipped, not zero-phased.
    """
    q, q1, q2 = spec.q, spec.q1, spec.q2
    c = spec.c
    x = np.arange(c, dtype=np.int64)
    x1 = (x + spec.l * q) % q1
    x2 = x % q2
    y = x % q
    mask = (x1 != 0) & (x2 != 0) & (y != 0)
    inv1 = _inv_table(q1)[x1]
    inv2 = _inv_table(q2)[x2]
    invq = _inv_table(q)[y]
    num = (
        spec.l1 % c * (q2 * q) % c * inv1
        - spec.l2 % c * (q1 * q) % c * inv2
        + spec.l % c * (q1 * q2) % c * invq
    ) % c
    return num, mask


def amplitude_terms(spec: AmplitudeSpec) -> tuple[np.ndarray, int]:
    """(w, skipped) with w[x] = e(f(x)) for admissible x, 0 otherwise."""
    num, mask = _phase_numerators(spec)
    w = np.where(mask, np.exp(2j * np.pi * num / spec.c), 0j)
    return w, int(spec.c - mask.sum())


def amplitude_sum(spec: AmplitudeSpec, a: int = 0) -> complex:
    """S_a = sum over admissible x mod c of e(f(x) - a*x/c)."""
    c = spec.c
    num, mask = _phase_numerators(spec)
    shifted = (num - a % c * np.arange(c, dtype=np.int64)) % c
    return csum(np.exp(2j * np.pi * shifted[mask] / c))


def amplitude_spectrum(spec: AmplitudeSpec) -> np.ndarray:
    """All S_a for a = 0..c-1 at once: the DFT of the admissible-term vector."""
    w, _ = amplitude_terms(spec)
    return np.fft.fft(w)


def factorization_check(spec: AmplitudeSpec) -> SumReport:
    """S_0 against the product of three Ramanujan sums (distinct primes only)."""
    if not spec.distinct:
        raise NotDistinct(f"moduli ({spec.q}, {spec.q1}, {spec.q2}) repeat")
    _, skipped = amplitude_terms(spec)
    s0 = amplitude_sum(spec, 0)
    rhs = (
        ramanujan(spec.l1, spec.q1)
        * ramanujan(-spec.l2, spec.q2)
        * ramanujan(spec.l, spec.q)
    )
    diff = s0 - rhs
    bound = 1e-8 * spec.c
    return SumReport(
        value=diff, bound=bound, passed=abs(diff) <= bound, terms_skipped=skipped
    )


def interval_sum_direct(spec: AmplitudeSpec, n0: int, n1: int) -> complex:
    """Term-by-term sum of e(f(n)) over [n0, n1]; the completion oracle path.

    Deliberately avoids the table machinery: inverses come from pow per term.
    """
    q, q1, q2 = spec.q, spec.q1, spec.q2
    c = spec.c
    terms = []
    for n in range(n0, n1 + 1):
        u1 = (n + spec.l * q) % q1
        u2 = n % q2
        uq = n % q
        if u1 == 0 or u2 == 0 or uq == 0:
            continue
        num = (
            spec.l1 * (q2 * q) * pow(u1, -1, q1)
            - spec.l2 * (q1 * q) * pow(u2, -1, q2)
            + spec.l * (q1 * q2) * pow(uq, -1, q)
        ) % c
        terms.append(np.exp(2j * np.pi * num / c))
    return csum(terms)


def complete_incomplete(spec: AmplitudeSpec, n0: int, n1: int) -> complex:
    """Sum of e(f(n)) over n in [n0, n1] via finite-Fourier completion:
    (1/c) * sum over a mod c of D_a * S_a, D_a the interval exponential sum."""
    if n1 < n0:
        return 0j
    c = spec.c
    if n1 - n0 >= c:
        raise RangeTooLong(f"interval length {n1 - n0 + 1} >= period {c}")
    spectrum = amplitude_spectrum(spec)
    indicator = np.zeros(c)
    np.add.at(indicator, np.arange(n0, n1 + 1) % c, 1.0)
    d = np.conj(np.fft.fft(indicator))
    return csum(d * spectrum) / c


def error_term_bound(spec: AmplitudeSpec) -> ErrorTermReport:
    """Harmonic-weighted spectrum tail sum over 0 < |a| <= c/2, with the
    per-frequency Weil comparison |S_a| <= gcd(a,c)^(1/2) * c^(1/2) * tau(c)."""
    if not spec.distinct:
        raise NotDistinct(f"moduli ({spec.q}, {spec.q1}, {spec.q2}) repeat")
    c = spec.c
    spectrum = amplitude_spectrum(spec)
    _, skipped = amplitude_terms(spec)
    tau_c = tau(c)
    sqrt_c = math.sqrt(c)
    harmonic = []
    bound_terms = []
    passed = True
    worst_ratio = 0.0
    worst_a = 0
    # ascending |a|, negative frequency via S_{-a} = S_{c-a}
    for a in range(1, c // 2 + 1):
        for sa in (spectrum[a], spectrum[c - a]) if a != c - a else (spectrum[a],):
            mag = abs(sa)
            per_term = math.sqrt(math.gcd(a, c)) * sqrt_c * tau_c
            harmonic.append(mag / a)
            bound_terms.append(per_term / a)
            ratio = mag / per_term
            if ratio > worst_ratio:
                worst_ratio, worst_a = ratio, a
            if mag > per_term + 1e-9:
                passed = False
    return ErrorTermReport(
        value=rsum(harmonic),
        bound=rsum(bound_terms),
        passed=passed,
        terms_skipped=skipped,
        worst_ratio=worst_ratio,
        worst_a=worst_a,
    )
