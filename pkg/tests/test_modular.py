import math
import random

import pytest

from sievelab.angles import RationalAngle
from sievelab.modular import (
    NotInGroup,
    NotInvertible,
    discrete_log,
    euler_phi,
    factorize,
    inv_mod,
    is_prime,
    mobius,
    pow_mod,
    primes_in,
    primitive_root,
    tau,
)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_pow_mod_examples():
    assert pow_mod(2, 10, 1000) == 24
    assert pow_mod(12345, 0, 7) == 1
    assert pow_mod(3, 5, 7) == 5
    assert pow_mod(5, 100, 1) == 0


def test_inv_mod_examples():
    assert inv_mod(3, 7) == 5
    assert inv_mod(1, 97) == 1
    assert inv_mod(4, 9) == 7
    with pytest.raises(NotInvertible):
        inv_mod(6, 9)


def test_inv_mod_fuzz():
    rng = random.Random(0)
    for _ in range(500):
        m = rng.randrange(2, 10_000)
        x = rng.randrange(1, m)
        if math.gcd(x, m) != 1:
            continue
        assert inv_mod(x, m) * x % m == 1


def test_euler_property_fuzz():
    rng = random.Random(1)
    for _ in range(300):
        m = rng.randrange(2, 10_000)
        g = rng.randrange(1, m)
        if math.gcd(g, m) != 1:
            continue
        assert pow_mod(g, euler_phi(m), m) == 1


def test_primes_in():
    assert primes_in(2, 10) == [2, 3, 5, 7]
    assert primes_in(24, 28) == []
    assert primes_in(90, 100) == [97]
    # against trial division, including a segmented window
    assert primes_in(0, 200) == [n for n in range(201) if naive_is_prime(n)]
    assert primes_in(10_000, 10_100) == [
        n for n in range(10_000, 10_101) if naive_is_prime(n)
    ]


def test_is_prime_deterministic():
    for n in range(2000):
        assert is_prime(n) == naive_is_prime(n)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


def test_primitive_root():
    assert primitive_root(7, 1) == 3
    assert primitive_root(5, 1) == 2
    assert primitive_root(3, 2) == 2
    assert primitive_root(2, 1) == 1
    assert primitive_root(2, 2) == 3
    for p in [3, 5, 7, 11, 13, 101]:
        for power in (1, 2):
            g = primitive_root(p, power)
            m = p**power
            order = euler_phi(m)
            # order check by exhaustion over proper divisors
            assert pow(g, order, m) == 1
            assert all(
                pow(g, order // f, m) != 1 for f in factorize(order)
            )


def test_discrete_log():
    assert discrete_log(3, 1, 7, 6) == 0
    assert discrete_log(3, 5, 7, 6) == 5
    assert discrete_log(2, 7, 9, 6) == 4
    with pytest.raises(NotInGroup):
        discrete_log(4, 3, 7, 3)  # 4 generates {1, 4, 2} mod 7


def test_discrete_log_roundtrip_fuzz():
    rng = random.Random(2)
    for p in [5, 7, 11, 101, 499]:
        g = primitive_root(p, 1)
        for _ in range(20):
            e = rng.randrange(p - 1)
            assert discrete_log(g, pow(g, e, p), p, p - 1) == e


def test_tau_phi():
    assert tau(1) == 1 and euler_phi(1) == 1
    assert tau(105) == 8 and euler_phi(105) == 48
    assert euler_phi(49) == 7 * euler_phi(7) == 42
    # brute force cross-check
    for n in range(1, 300):
        assert tau(n) == sum(1 for d in range(1, n + 1) if n % d == 0)
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_mobius():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_rational_angle_reduction():
    a = RationalAngle(10, 15)
    assert (a.num, a.den) == (2, 3)
    assert RationalAngle(-1, 4) == RationalAngle(3, 4)
    assert RationalAngle(7, 7) == RationalAngle(0, 1)
    raw = RationalAngle(123456, 789)
    assert abs(raw.to_complex() - RationalAngle(123456 % 789, 789).to_complex()) < 1e-15


def test_rational_angle_arithmetic():
    assert RationalAngle(1, 3) + RationalAngle(1, 2) == RationalAngle(5, 6)
    assert RationalAngle(1, 3).scale(3) == RationalAngle(0, 1)
    assert -RationalAngle(1, 5) == RationalAngle(4, 5)
    assert abs(RationalAngle(1, 2).to_complex() + 1) < 1e-15
