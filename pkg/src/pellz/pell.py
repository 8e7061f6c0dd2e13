"""The solution family of X^2 - (z^2-1) Y^2 = 1 over Q[z].

The pairs (x_n, y_n) are generated by the first-order recurrence

    x_{j+1} = z*x_j + (z^2-1)*y_j,   y_{j+1} = x_j + z*y_j

from (x_0, y_0) = (1, 0), with x_{-n} = x_n and y_{-n} = -y_n.  The
solutions carry an abelian group law induced by multiplication of
x + y*w expressions (w^2 = z^2 - 1):

    (u, v) (+) (x, y) = (u*x + (z^2-1)*v*y, u*y + v*x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .polyring import Poly

_Z = Poly.z()
_Z2M1 = Poly((-1, 0, 1))

# Memoized prefix of the (x_n, y_n) sequence for n >= 0.
_xs: list[Poly] = [Poly.one(), _Z]
_ys: list[Poly] = [Poly.zero(), Poly.one()]


def _extend_to(n: int) -> None:
    while len(_xs) <= n:
        x, y = _xs[-1], _ys[-1]
        _xs.append(_Z * x + _Z2M1 * y)
        _ys.append(x + _Z * y)


def nth_solution_polys(n: int) -> tuple[Poly, Poly]:
    """Raw (x_n, y_n) without the pair-invariant recheck."""
    a = abs(n)
    _extend_to(a)
    if n >= 0:
        return _xs[a], _ys[a]
    return _xs[a], -_ys[a]


class NotPellSolutionError(ValueError):
    """The pair does not satisfy x^2 - (z^2-1) y^2 = 1."""


@dataclass(frozen=True)
class PellPair:
    """A solution (x, y); semantically the element x + y*w."""

    x: Poly
    y: Poly

    def __post_init__(self):
        if self.x * self.x - _Z2M1 * self.y * self.y != Poly.one():
            raise NotPellSolutionError("not a Pell solution")

    def inverse(self) -> "PellPair":
        return PellPair(self.x, -self.y)


@dataclass(frozen=True)
class PellIndex:
    n: int
    epsilon: int

    def __post_init__(self):
        assert self.epsilon in (1, -1)


def gen(n: int) -> PellPair:
    """The pair (x_n, y_n) of the power (z + w)^n."""
    x, y = nth_solution_polys(n)
    return PellPair(x, y)


def group_add(a: PellPair, b: PellPair) -> PellPair:
    f = a.x * b.x + _Z2M1 * a.y * b.y
    g = a.x * b.y + a.y * b.x
    return PellPair(f, g)


def group_pow(a: PellPair, k: int) -> PellPair:
    """k-fold group sum of a with itself (k >= 0), by doubling."""
    if k < 0:
        raise ValueError("group_pow expects k >= 0")
    result = IDENTITY
    base = a
    while k:
        if k & 1:
            result = group_add(result, base)
        base = group_add(base, base)
        k >>= 1
    return result


def recognize(a: PellPair) -> Optional[PellIndex]:
    """Identify a as (eps*x_n, y_n), or None when confirmation fails.

    The candidate index is read off as y(1); the sign from the leading
    behaviour of x; both are confirmed by exact comparison against the
    generated pair, with the degree(x) = |n| cross-check first.
    """
    n_val = a.y(1)
    if n_val != int(n_val):
        return None
    n = int(n_val)
    if a.x.degree != abs(n):
        return None
    x_n, y_n = nth_solution_polys(n)
    if a.y != y_n:
        return None
    if a.x == x_n:
        return PellIndex(n, 1)
    if a.x == -x_n:
        return PellIndex(n, -1)
    return None


@dataclass(frozen=True)
class DenefReport:
    n_max: int
    div_max: int
    ok: bool
    first_failure: Optional[str]


def check_denef_properties(n_max: int, div_max: Optional[int] = None) -> DenefReport:
    """Verify the classification properties of the family up to n_max.

    For |n| <= n_max: integral coefficients, degree(x_n) = |n|, and
    y_n(1) = n.  For 1 <= k, n <= div_max (default n_max): y_k | y_n
    iff k | n, with the divisibility decided by exact long division.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if div_max is None:
        div_max = n_max

    for n in range(-n_max, n_max + 1):
        x, y = nth_solution_polys(n)
        if not (x.is_integral and y.is_integral):
            return DenefReport(n_max, div_max, False, f"non-integer coefficients at n={n}")
        if x.degree != abs(n):
            return DenefReport(n_max, div_max, False, f"degree(x_{n}) = {x.degree} != |{n}|")
        if y(1) != n:
            return DenefReport(n_max, div_max, False, f"y_{n}(1) = {y(1)} != {n}")

    for kk in range(1, div_max + 1):
        y_k = nth_solution_polys(kk)[1]
        for nn in range(1, div_max + 1):
            y_n = nth_solution_polys(nn)[1]
            if y_k.divides(y_n) != (nn % kk == 0):
                return DenefReport(n_max, div_max, False,
                                   f"divisibility mismatch at k={kk}, n={nn}")

    return DenefReport(n_max, div_max, True, None)


IDENTITY = PellPair(Poly.one(), Poly.zero())
