"""Deterministic choice of the constants (m, p, q, k) from an order bound.

Given a nonnegative rational bound rho, set m = 2*(floor(rho) + 1) and
take the smallest primes p > m + 1 and q > 2*(m + 1), so k = p*q is
reproducible bit-for-bit.  Choosing the smallest admissible primes in
this order forces q > p, hence p != q and k odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    """Trial division; all parameters in play are tiny."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime_above(bound: int) -> int:
    n = bound + 1
    while not is_prime(n):
        n += 1
    return n


@dataclass(frozen=True)
class ParamSet:
    rho: Fraction
    m: int
    p: int
    q: int
    k: int

    def __post_init__(self):
        assert self.m == 2 * (math.floor(self.rho) + 1)
        assert is_prime(self.p) and self.p > self.m + 1
        assert is_prime(self.q) and self.q > 2 * (self.m + 1)
        assert self.p != self.q and self.k == self.p * self.q and self.k % 2 == 1


def select_params(rho: Fraction | int | str) -> ParamSet:
    """Smallest admissible (m, p, q, k) for the order bound rho."""
    rho = Fraction(rho)
    if rho < 0:
        raise ValueError("order bound must be nonnegative")
    m = 2 * (math.floor(rho) + 1)
    p = next_prime_above(m + 1)
    q = next_prime_above(2 * (m + 1))
    return ParamSet(rho=rho, m=m, p=p, q=q, k=p * q)
