import math
import random

import pytest

from sievelab.angles import RationalAngle
from sievelab.characters import (
    NotAUnit,
    SpecialCharacter,
    character_matrix,
    dirichlet_char_mod_p,
    enumerate_G_a,
    teichmuller_split,
    xi_eval,
)
from sievelab.modular import euler_phi


def units_mod(m):
    return [x for x in range(1, m) if math.gcd(x, m) == 1]


def test_teichmuller_examples():
    d = teichmuller_split(1, 7)
    assert (d.t, d.h) == (1, 1)
    d = teichmuller_split(2, 5)
    assert (d.t, d.h) == (7, 11)
    d = teichmuller_split(6, 5)
    assert (d.t, d.h) == (1, 6)
    with pytest.raises(NotAUnit):
        teichmuller_split(10, 5)


def test_teichmuller_invariants():
    for p in [2, 3, 5, 7, 11]:
        p2 = p * p
        for x in units_mod(p2):
            d = teichmuller_split(x, p)
            assert d.t * d.h % p2 == x
            assert pow(d.t, p - 1, p2) == 1
            assert d.h % p == 1


def test_xi_eval_examples():
    chi = SpecialCharacter(p=3, a=1, j=0, g=2)
    assert xi_eval(chi, 4).angle == RationalAngle(1, 3)
    assert xi_eval(chi, 2).angle == RationalAngle(2, 3)
    assert xi_eval(chi, 1).angle == RationalAngle(0, 1)
    assert xi_eval(chi, 3).zero
    chi5 = SpecialCharacter(p=5, a=1, j=0, g=2)
    assert xi_eval(chi5, 6).angle == RationalAngle(1, 5)
    # consistency: xi(2)^2 = xi(4)
    assert xi_eval(chi, 2).angle.scale(2) == xi_eval(chi, 4).angle


def test_value_table_p3():
    chi = enumerate_G_a(3, 1)[0]
    table = {n: xi_eval(chi, n).angle for n in [1, 2, 4, 5, 7, 8]}
    expect = {
        1: RationalAngle(0, 1),
        2: RationalAngle(2, 3),
        4: RationalAngle(1, 3),
        5: RationalAngle(1, 3),
        7: RationalAngle(2, 3),
        8: RationalAngle(0, 1),
    }
    assert table == expect


def test_p2_family():
    fam = enumerate_G_a(2, 1)
    assert len(fam) == 1
    v = xi_eval(fam[0], 3)
    assert v.angle == RationalAngle(1, 2)
    assert abs(v.to_complex() + 1) < 1e-15


def test_G0_is_lifted_dirichlet():
    for chi in enumerate_G_a(7, 0):
        for n in units_mod(49):
            assert xi_eval(chi, n).angle == dirichlet_char_mod_p(7, chi.j, n).angle


def test_family_sizes():
    for p in [2, 3, 5, 7, 11, 13]:
        for a in range(p):
            assert len(enumerate_G_a(p, a)) == euler_phi(p)


def test_family_members_distinct():
    for p in [3, 5, 7, 11]:
        fam = enumerate_G_a(p, 1)
        tables = [
            tuple(xi_eval(chi, n).angle for n in units_mod(p * p)) for chi in fam
        ]
        assert len(set(tables)) == len(fam)


def test_complete_multiplicativity_fuzz():
    rng = random.Random(3)
    for p in [2, 3, 5, 7, 13, 31]:
        for chi in enumerate_G_a(p, rng.randrange(p)):
            for _ in range(30):
                m = rng.randrange(1, 4 * p * p)
                n = rng.randrange(1, 4 * p * p)
                vm, vn, vmn = xi_eval(chi, m), xi_eval(chi, n), xi_eval(chi, m * n)
                if vm.zero or vn.zero:
                    assert vmn.zero
                else:
                    assert vmn.angle == vm.angle + vn.angle


def test_restriction_law():
    # every family member restricts on {x = 1 mod p} to e(a(x-1)/p^2), exactly
    for p in [2, 3, 5, 7, 11]:
        for a in range(min(p, 3)):
            for chi in enumerate_G_a(p, a):
                for x in range(1, p * p, p):
                    got = xi_eval(chi, x).angle
                    assert got == RationalAngle(a * (x - 1) // p, p)


def test_periodicity():
    chi = SpecialCharacter(p=7, a=2, j=3, g=3)
    for n in range(1, 120):
        a, b = xi_eval(chi, n), xi_eval(chi, n + 49)
        assert a.zero == b.zero
        if not a.zero:
            assert a.angle == b.angle


def test_dirichlet_char_examples():
    assert dirichlet_char_mod_p(7, 0, 10).angle == RationalAngle(0, 1)
    assert dirichlet_char_mod_p(3, 1, 2).angle == RationalAngle(1, 2)
    assert dirichlet_char_mod_p(5, 2, 4).angle == RationalAngle(0, 1)
    assert dirichlet_char_mod_p(5, 1, 10).zero


def test_character_matrix_agrees_with_xi_eval():
    for p, a, M, N in [(3, 1, 0, 20), (5, 2, 6, 30), (2, 1, 0, 8), (13, 1, 100, 40)]:
        W = character_matrix(p, a, M, N)
        fam = enumerate_G_a(p, a)
        assert W.shape == (len(fam), N)
        for j, chi in enumerate(fam):
            for i in range(N):
                assert abs(W[j, i] - xi_eval(chi, M + 1 + i).to_complex()) < 1e-12
