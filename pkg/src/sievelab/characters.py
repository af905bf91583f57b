"""The special character families G_a modulo p**2.

A character in G_a restricts on the subgroup {x = 1 mod p} of units mod p**2
to x -> e(a*(x-1)/p**2).  Each family member is the base character

    n -> e(a * (n**(1-p) mod p**2 - 1) / p**2)

(closed form of the principal part of the unit decomposition n = t*h with
t = n**p of order dividing p-1 and h = n**(1-p) = 1 mod p) times one of the
p-1 Dirichlet characters mod p.  All values are exact RationalAngles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import RationalAngle, ZERO_ANGLE
from .modular import euler_phi, inv_mod, is_prime, primitive_root


class NotAUnit(ValueError):
    """Raised when a residue shares a factor with the prime modulus."""


@dataclass(frozen=True)
class UnitDecomposition:
    """x = t*h mod p**2 with t of order dividing p-1 and h = 1 mod p."""

    x: int
    t: int
    h: int


@dataclass(frozen=True)
class CharacterValue:
    """Either zero (argument not coprime to p) or an exact root of unity."""

    zero: bool
    angle: RationalAngle = ZERO_ANGLE

    def to_complex(self) -> complex:
        return 0j if self.zero else self.angle.to_complex()


CHAR_ZERO = CharacterValue(zero=True)


def teichmuller_split(x: int, p: int) -> UnitDecomposition:
    p2 = p * p
    x %= p2
    if math.gcd(x, p) != 1:
        raise NotAUnit(f"{x} is not a unit mod {p}^2")
    t = pow(x, p, p2)
    h = x * inv_mod(t, p2) % p2
    return UnitDecomposition(x=x, t=t, h=h)


@lru_cache(maxsize=None)
def _index_table(p: int, g: int) -> tuple[int, ...]:
    """ind[n] = discrete log of n base g mod p (ind[0] unused)."""
    tab = [0] * p
    cur = 1
    for k in range(p - 1):
        tab[cur] = k
        cur = cur * g % p
    return tuple(tab)


@dataclass(frozen=True)
class SpecialCharacter:
    """Member of G_a mod p**2: base character for parameter a, twisted by the
    j-th Dirichlet character mod p (defined through the primitive root g)."""

    p: int
    a: int
    j: int
    g: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not 0 <= self.a < self.p:
            raise ValueError("a must lie in [0, p)")
        if self.p == 2:
            if self.j != 0:
                raise ValueError("p = 2 has a single twist, j = 0")
        elif not 0 <= self.j <= self.p - 2:
            raise ValueError("j must lie in [0, p-2]")

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def __call__(self, n: int) -> CharacterValue:
        return xi_eval(self, n)


def xi_eval(chi: SpecialCharacter, n: int) -> CharacterValue:
    p = chi.p
    p2 = p * p
    n %= p2
    if math.gcd(n, p) != 1:
        return CHAR_ZERO
    h = pow(n, 1 - p, p2)  # principal part; equals n itself when p = 2
    k = (h - 1) // p
    angle = RationalAngle(chi.a * k, p)
    if chi.j:
        ind = _index_table(p, chi.g)[n % p]
        angle = angle + RationalAngle(chi.j * ind, p - 1)
    return CharacterValue(zero=False, angle=angle)


def dirichlet_char_mod_p(p: int, j: int, n: int) -> CharacterValue:
    """The j-th Dirichlet character mod prime p, via the smallest primitive root."""
    if not 0 <= j <= max(p - 2, 0):
        raise ValueError("j must lie in [0, p-2]")
    if n % p == 0:
        return CHAR_ZERO
    if p == 2:
        return CharacterValue(zero=False, angle=ZERO_ANGLE)
    g = primitive_root(p, 1)
    ind = _index_table(p, g)[n % p]
    return CharacterValue(zero=False, angle=RationalAngle(j * ind, p - 1))


def enumerate_G_a(p: int, a: int) -> list[SpecialCharacter]:
    """All phi(p) members of G_a mod p**2."""
    if not 0 <= a < p:
        raise ValueError("a must lie in [0, p)")
    if p == 2:
        return [SpecialCharacter(p=2, a=a, j=0, g=1)]
    g = primitive_root(p, 1)
    return [SpecialCharacter(p=p, a=a, j=j, g=g) for j in range(p - 1)]


@lru_cache(maxsize=256)
def character_matrix(p: int, a: int, M: int, N: int) -> np.ndarray:
    """Value matrix W[j, i] = xi_j(M+1+i) over the family G_a, as complex.

    Angles are computed exactly and converted once; rows follow the j order
    of enumerate_G_a.  Multiples of p give 0 columns.  Cached per modulus and
    window; treat the returned array as read-only.
    """
    family = enumerate_G_a(p, a)
    base = np.zeros(N, dtype=complex)
    ind = np.zeros(N, dtype=np.int64)
    for i in range(N):
        n = M + 1 + i
        v = xi_eval(family[0], n)
        if not v.zero:
            base[i] = v.angle.to_complex()
            if p > 2:
                ind[i] = _index_table(p, family[0].g)[n % p]
    if p == 2:
        return base.reshape(1, N)
    omega = np.exp(2j * np.pi / (p - 1))
    rows = [base * omega ** ((j * ind) % (p - 1)) for j in range(p - 1)]
    return np.array(rows)


def phi_of_family(p: int) -> int:
    """|G_a| = phi(p) for every a."""
    return euler_phi(p)
