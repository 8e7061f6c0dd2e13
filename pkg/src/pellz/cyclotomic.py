"""Exact arithmetic in Q(zeta_k) and its Galois action.

Elements are residues modulo the k-th cyclotomic polynomial, stored on
the power basis 1, zeta, ..., zeta^(phi(k)-1).  On this basis the
Galois action sigma_a is a monomial substitution zeta -> zeta^a and
"the value is rational" is simply "all non-constant coordinates are
zero", which turns rationality hypotheses into finite Q-linear
constraints.  Linear algebra over Q is fraction-free (integer rows,
cross-multiplication with gcd normalization); linear algebra over
Q(zeta_k) inverts pivots with the extended Euclidean algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from .params import is_prime
from .polyring import Poly, poly_xgcd


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> Poly:
    """The k-th cyclotomic polynomial, by recursive exact division."""
    if k < 1:
        raise ValueError("k must be >= 1")
    num = Poly((-1,) + (0,) * (k - 1) + (1,))  # z^k - 1
    for d in divisors(k):
        if d < k:
            num, rem = num.div_rem(cyclotomic_poly(d))
            assert not rem
    return num


class CycloElem:
    """Element of Q(zeta_k) as a residue modulo the k-th cyclotomic polynomial."""

    __slots__ = ("k", "coords")

    def __init__(self, k: int, coords):
        poly = coords if isinstance(coords, Poly) else Poly(coords)
        if poly.degree >= euler_phi(k):
            _, poly = poly.div_rem(cyclotomic_poly(k))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coords", poly)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    def _check(self, other) -> Optional["CycloElem"]:
        if isinstance(other, CycloElem):
            if other.k != self.k:
                raise ValueError("cyclotomic level mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.k, Poly.const(other))
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.k, self.coords + o.coords)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.k, -self.coords)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.k, self.coords - o.coords)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.k, self.coords * o.coords)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloElem(self.k, Poly.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse via extended Euclid modulo Phi_k."""
        if not self.coords:
            raise ZeroDivisionError("zero element of a cyclotomic field")
        g, s, _ = poly_xgcd(self.coords, cyclotomic_poly(self.k))
        assert g.degree == 0
        return CycloElem(self.k, s * _inv_scalar(g.constant_value()))

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if isinstance(other, CycloElem) and other.k != self.k:
            return False
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.k, self.coords))

    def __repr__(self):
        return f"CycloElem(k={self.k}, {self.coords!r})"

    def rational_value(self) -> Optional[Fraction]:
        """The element as a rational number, or None when irrational."""
        if self.coords.degree <= 0:
            return Fraction(self.coords.constant_value())
        return None


def _inv_scalar(c):
    return Fraction(1) / Fraction(c)


def zeta_elem(k: int, a: int = 1) -> CycloElem:
    """The power zeta^a of the primitive k-th root of unity."""
    return CycloElem(k, Poly.monomial(1, a % k))


def cos_elem(k: int, a: int) -> CycloElem:
    """cos(2*pi*a/k) = (zeta^a + zeta^-a)/2 as an exact field element."""
    if k < 3:
        raise ValueError("k must be >= 3")
    half = Fraction(1, 2)
    return half * (zeta_elem(k, a) + zeta_elem(k, -a))


def is_rational(e: CycloElem) -> tuple[bool, Optional[Fraction]]:
    v = e.rational_value()
    return (v is not None), v


def eval_poly_at_cos(f: Poly, k: int, a: int) -> CycloElem:
    """Exact Horner evaluation of f at cos(2*pi*a/k)."""
    if k < 3:
        raise ValueError("k must be >= 3")
    return _eval_at_elem(f, cos_elem(k, a))


def _eval_at_elem(f: Poly, point: CycloElem) -> CycloElem:
    acc = CycloElem(point.k, Poly.zero())
    for c in reversed(f.coeffs):
        acc = acc * point + c
    return acc


# -- Galois action ------------------------------------------------------

@dataclass(frozen=True)
class GaloisElement:
    """A class of (Z/kZ)^x / (+-1), acting by zeta -> zeta^a."""

    k: int
    a: int

    def __post_init__(self):
        if gcd(self.a, self.k) != 1:
            raise ValueError("a must be a unit modulo k")
        a = self.a % self.k
        object.__setattr__(self, "a", min(a, self.k - a))

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        if self.k != other.k:
            raise ValueError("group level mismatch")
        return GaloisElement(self.k, self.a * other.a % self.k)


def galois_apply(sigma: GaloisElement, e: CycloElem) -> CycloElem:
    """Substitute zeta -> zeta^a and reduce modulo Phi_k."""
    if sigma.k != e.k:
        raise ValueError("cyclotomic level mismatch")
    k = e.k
    vec = [0] * k
    for i, c in enumerate(e.coords.coeffs):
        if c != 0:
            j = (i * sigma.a) % k
            vec[j] = vec[j] + c
    return CycloElem(k, Poly(vec))


def galois_group(k: int) -> list[GaloisElement]:
    """Canonical representatives of (Z/kZ)^x / (+-1), for odd k >= 3."""
    return [GaloisElement(k, a) for a in range(1, k // 2 + 1) if gcd(a, k) == 1]


def galois_kernel(p: int, q: int) -> set[GaloisElement]:
    """Kernel of the reduction map G_pq -> G_q."""
    if p == q or not (is_prime(p) and is_prime(q)):
        raise ValueError("p and q must be distinct primes")
    k = p * q
    return {g for g in galois_group(k) if g.a % q in (1, q - 1)}


def embed(e: CycloElem, bigger_k: int) -> CycloElem:
    """Re-express an element of Q(zeta_k) inside Q(zeta_K) for k | K."""
    if bigger_k % e.k != 0:
        raise ValueError("target level must be a multiple of the source level")
    step = bigger_k // e.k
    vec = [0] * bigger_k
    for i, c in enumerate(e.coords.coeffs):
        if c != 0:
            vec[i * step] = c
    return CycloElem(bigger_k, Poly(vec))


# -- exact linear algebra ------------------------------------------------

def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    """Clear denominators and common factors row by row."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _row_echelon_int(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns).

    Row updates are cross-multiplications piv*r - r[col]*pivot_row with a
    gcd division afterwards, so entries stay integers of modest size.
    """
    work = [r[:] for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    ech: list[list[int]] = []
    piv_cols: list[int] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(work) if r[col] != 0), None)
        if idx is None:
            continue
        pivot = work.pop(idx)
        pv = pivot[col]
        nxt = []
        for r in work:
            if r[col] != 0:
                nr = [pv * r[j] - r[col] * pivot[j] for j in range(ncols)]
                g = 0
                for x in nr:
                    g = gcd(g, x)
                if g > 1:
                    nr = [x // g for x in nr]
                if any(nr):
                    nxt.append(nr)
            else:
                nxt.append(r)
        work = nxt
        ech.append(pivot)
        piv_cols.append(col)
        if not work:
            break
    return ech, piv_cols


def nullspace_q(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational nullspace of the given constraint rows."""
    if not rows:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    ech, piv_cols = _row_echelon_int(_integer_rows(rows))
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(reversed(ech), reversed(piv_cols)):
            s = sum((Fraction(row[j]) * vec[j] for j in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / row[pc]
        basis.append(vec)
    return basis


def _rank_cyclo(rows: list[list[CycloElem]]) -> int:
    """Rank over Q(zeta_k) by elimination with exact pivot inversion."""
    work = [r[:] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        idx = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if idx is None:
            continue
        work[rank], work[idx] = work[idx], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [inv * x for x in work[rank]]
        for i in range(rank + 1, len(work)):
            c = work[i][col]
            if c:
                work[i] = [work[i][j] - c * work[rank][j] for j in range(ncols)]
        rank += 1
        if rank == len(work):
            break
    return rank


def vandermonde_rank(q: int, m: int) -> int:
    """Exact rank of the matrix [cos^b(pi*a/q)] over Q(zeta_2q).

    Rows run over a = 1..(q-1)/2, columns over b = 0..m.  Requires
    q >= 2m + 3, which is what makes the rank maximal (m + 1).
    """
    if not is_prime(q):
        raise ValueError("q must be prime")
    if m < 0:
        raise ValueError("m must be >= 0")
    if q < 2 * m + 3:
        raise ValueError("q too small")
    rows = []
    for a in range(1, (q - 1) // 2 + 1):
        c = cos_elem(2 * q, a)  # cos(pi*a/q)
        one = CycloElem(2 * q, Poly.one())
        row = [one]
        for _ in range(m):
            row.append(row[-1] * c)
        rows.append(row)
    return _rank_cyclo(rows)


def rationality_nullspace(k: int, m: int) -> tuple[int, list[Poly]]:
    """All F of degree <= m with F(cos(2*pi*a/k)) rational for a = 1..k-1.

    Encodes "value is rational" as vanishing of the non-constant
    cyclotomic coordinates, assembles the resulting Q-linear system in
    the m+1 coefficients of F, and solves it exactly.  Returns the
    nullspace dimension and a basis of polynomials.
    """
    fac = factorize(k)
    if len(fac) != 2 or any(e != 1 for e in fac.values()):
        raise ValueError("k must be a product of two distinct primes")
    p, q = sorted(fac)
    if not (p > m + 1 and q > 2 * (m + 1)):
        raise ValueError("parameter bounds violated: need p > m+1 and q > 2(m+1)")

    phi_k = euler_phi(k)
    rows: list[list[Fraction]] = []
    power_cache: dict[int, list[CycloElem]] = {}
    for a in range(1, k):
        key = min(a, k - a)
        if key not in power_cache:
            c = cos_elem(k, a)
            powers = [CycloElem(k, Poly.one())]
            for _ in range(m):
                powers.append(powers[-1] * c)
            power_cache[key] = powers
        powers = power_cache[key]
        for j in range(1, phi_k):
            row = [Fraction(powers[b].coords.coeff(j)) for b in range(m + 1)]
            if any(row):
                rows.append(row)
    basis_vecs = nullspace_q(rows, m + 1)
    basis = [Poly(vec) for vec in basis_vecs]
    return len(basis), basis


def minimal_polynomial(e: CycloElem) -> Poly:
    """Monic minimal polynomial of e over Q, by incremental rank tests."""
    phi_k = euler_phi(e.k)
    powers = [CycloElem(e.k, Poly.one())]
    vectors: list[list[Fraction]] = [[Fraction(powers[0].coords.coeff(j)) for j in range(phi_k)]]
    while True:
        nxt = powers[-1] * e
        target = [Fraction(nxt.coords.coeff(j)) for j in range(phi_k)]
        combo = _solve_in_span(vectors, target)
        if combo is not None:
            return Poly([-c for c in combo] + [1])
        powers.append(nxt)
        vectors.append(target)


def _solve_in_span(vectors: list[list[Fraction]], target: list[Fraction]) -> Optional[list[Fraction]]:
    """Coefficients writing target as a combination of vectors, or None."""
    n = len(target)
    cols = len(vectors)
    aug = [[vectors[i][j] for i in range(cols)] + [target[j]] for j in range(n)]
    ech, piv_cols = _row_echelon_int(_integer_rows(aug))
    if cols in piv_cols:
        return None
    sol = [Fraction(0)] * cols
    for row, pc in zip(reversed(ech), reversed(piv_cols)):
        s = sum((Fraction(row[j]) * sol[j] for j in range(pc + 1, cols)), Fraction(0))
        sol[pc] = (Fraction(row[cols]) - s) / row[pc]
    return sol
