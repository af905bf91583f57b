"""Exact integer and modular arithmetic primitives.

Everything here is pure-Python integer arithmetic; Python integers make
overflow a non-issue, but all moduli in this project stay below 2**40 so
that triple products of moduli remain exact in double-checked paths.
"""

from __future__ import annotations

import math


class NotInvertible(ValueError):
    """Raised when asked to invert a residue sharing a factor with the modulus."""


class NotInGroup(ValueError):
    """Raised when a discrete logarithm does not exist in the given cyclic group."""


# Witness set deterministic for all n < 2^64 (Sinclair, 2011).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeModulus:
    """A prime p together with its square, the modulus family of the experiments."""

    __slots__ = ("p", "p_squared")

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.p_squared = p * p

    def __repr__(self):
        return f"PrimeModulus({self.p})"


def pow_mod(base: int, exp: int, m: int) -> int:
    """base**exp mod m for m >= 1 (m == 1 yields 0)."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return pow(base, exp, m)


def inv_mod(x: int, m: int) -> int:
    """Multiplicative inverse of x mod m, in [0, m)."""
    x %= m
    if math.gcd(x, m) != 1:
        raise NotInvertible(f"gcd({x}, {m}) > 1")
    return pow(x, -1, m)


def primes_in(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending, by a segmented sieve."""
    if lo > hi:
        raise ValueError("lo must be <= hi")
    if hi < 2:
        return []
    lo = max(lo, 2)
    root = math.isqrt(hi)
    base = _sieve_upto(root)
    if lo <= root:
        small = [p for p in base if lo <= p]
    else:
        small = []
    if hi <= root:
        return [p for p in small if p <= hi]
    seg_lo = max(lo, root + 1)
    flags = bytearray(b"\x01") * (hi - seg_lo + 1)
    for p in base:
        start = max(p * p, (seg_lo + p - 1) // p * p)
        for k in range(start, hi + 1, p):
            flags[k - seg_lo] = 0
    return small + [seg_lo + i for i, f in enumerate(flags) if f]


def _sieve_upto(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray(b"\x01") * (n + 1)
    flags[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, n + 1, p))
    return [i for i, f in enumerate(flags) if f]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk scale, n < 2^40)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def tau(n: int) -> int:
    """Number of positive divisors."""
    t = 1
    for e in factorize(n).values():
        t *= e + 1
    return t


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def primitive_root(p: int, power: int = 1) -> int:
    """Smallest generator of the unit group mod p**power (power in {1, 2}).

    For p = 2: returns 1 mod 2 and 3 mod 4.
    """
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    if p == 2:
        return 1 if power == 1 else 3
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = p**power
    order = euler_phi(m)
    prime_facs = list(factorize(order))
    for g in range(2, m):
        if g % p == 0:
            continue
        if all(pow(g, order // f, m) != 1 for f in prime_facs):
            return g
    raise RuntimeError(f"no primitive root mod {m}")  # unreachable for valid input


def discrete_log(g: int, y: int, m: int, order: int) -> int:
    """Smallest e >= 0 with g**e = y (mod m), by baby-step giant-step."""
    g %= m
    y %= m
    if y == 1 % m:
        return 0
    step = math.isqrt(order) + 1
    baby: dict[int, int] = {}
    cur = 1
    for j in range(step):
        baby.setdefault(cur, j)
        cur = cur * g % m
    # cur == g**step; giant steps multiply y by g**(-step)
    giant = inv_mod(cur, m)
    gamma = y
    for i in range(step + 1):
        j = baby.get(gamma)
        if j is not None:
            e = i * step + j
            if e < order:
                return e
        gamma = gamma * giant % m
    raise NotInGroup(f"{y} is not a power of {g} mod {m}")
