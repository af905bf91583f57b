"""Brute-force reference constructions, used only by tests and acceptance.

The full character table mod p**2 is built from a generator of the cyclic
unit group and discrete logs, deliberately not from the Teichmuller closed
form, so agreement with the characters module is evidence rather than a
tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .accum import rsum
from .angles import RationalAngle
from .modular import euler_phi, primes_in, primitive_root
from .sieve import CoefficientSequence, SizeCap

ORACLE_P_CAP = 31


@dataclass
class FullCharacterTable:
    """All phi(p**2) = p*(p-1) Dirichlet characters mod p**2, as exact angles."""

    p: int
    g2: int  # generator of the unit group mod p**2 (3 when p = 2)
    units: list[int]
    dlog: dict[int, int]
    rows: list[dict[int, RationalAngle]]  # one unit -> angle map per character

    @property
    def order(self) -> int:
        return self.p * euler_phi(self.p)


@lru_cache(maxsize=32)
def all_characters(p: int) -> FullCharacterTable:
    if p > ORACLE_P_CAP:
        raise SizeCap(f"oracle table capped at p <= {ORACLE_P_CAP}")
    p2 = p * p
    g2 = 3 if p == 2 else primitive_root(p, 2)
    order = p * euler_phi(p)
    dlog: dict[int, int] = {}
    cur = 1
    for m in range(order):
        dlog[cur] = m
        cur = cur * g2 % p2
    units = sorted(dlog)
    rows = []
    for k in range(order):
        rows.append({u: RationalAngle(k * dlog[u], order) for u in units})
    return FullCharacterTable(p=p, g2=g2, units=units, dlog=dlog, rows=rows)


def filter_G_a(table: FullCharacterTable, a: int) -> list[dict[int, RationalAngle]]:
    """Rows restricting on the subgroup {x = 1 mod p} to x -> e(a(x-1)/p**2),
    tested at its generator 1 + p (which is 3 when p = 2)."""
    p = table.p
    h_gen = 3 if p == 2 else 1 + p
    target = RationalAngle(a * (h_gen - 1) // p, p)
    return [row for row in table.rows if row[h_gen] == target]


def naive_lhs(Q: int, seq: CoefficientSequence, a: int = 1) -> float:
    """Character side of the sieve sum through the filtered oracle tables."""
    if Q > ORACLE_P_CAP:
        raise SizeCap(f"oracle lhs capped at Q <= {ORACLE_P_CAP}")
    totals = []
    for q in primes_in(2, Q):
        table = all_characters(q)
        rows = filter_G_a(table, a % q)
        q2 = q * q
        n_arr = np.arange(seq.M + 1, seq.M + 1 + seq.N)
        res = n_arr % q2
        acc = []
        for row in rows:
            vals = np.array(
                [row[r].to_complex() if math.gcd(r, q) == 1 else 0j for r in res]
            )
            acc.append(abs(np.sum(vals * seq.values)) ** 2)
        totals.append(q / euler_phi(q) * rsum(acc))
    return rsum(totals)
