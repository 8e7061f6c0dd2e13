"""Exact dense univariate polynomial arithmetic over the rationals.

A polynomial is a tuple of coefficients in little-endian order: index i
holds the coefficient of z^i.  Coefficients are Python ints or
``fractions.Fraction`` values (always in lowest terms with positive
denominator; integral values are stored as plain ints so that equality
is structural and integer arithmetic stays fast).  The zero polynomial
is the empty tuple and has degree -1.

The module also provides the commutative quotient algebra
Q[x]/(x^5 - (t^2 - 1)) used to certify fifth-root witnesses exactly,
including the non-reduced cases t = 1, -1, 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class ZeroDivisorError(ZeroDivisionError):
    """Division by the zero polynomial."""


class AlgebraMismatchError(ValueError):
    """Operands live in quotient algebras with different parameters."""


def _norm_coeff(c):
    """Coerce integral Fractions to int; leave everything else alone."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator if isinstance(c.numerator, int) else int(c)
        return c
    return c


def _ratio(a, b):
    """Exact a / b for int/Fraction scalars, preferring int results."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm_coeff(Fraction(a) / Fraction(b))


class Poly:
    """Immutable dense univariate polynomial.

    Coefficients are exact scalars (int or Fraction).  For formula
    evaluation the coefficient slots may also carry :class:`QuintElem`
    values; all ring operations are coefficient-generic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def one() -> "Poly":
        return _ONE

    @staticmethod
    def z() -> "Poly":
        return _Z

    @staticmethod
    def const(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def monomial(coeff, power: int) -> "Poly":
        return Poly((0,) * power + (coeff,))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree with the convention degree(0) = -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisorError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def constant_value(self):
        """The scalar value of a constant polynomial (degree <= 0)."""
        if self.degree > 0:
            raise ValueError("not a constant polynomial")
        return self.coeffs[0] if self.coeffs else 0

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuintElem)):
            return Poly((other,))
        return None

    def __add__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return _ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by z^k."""
        if not self.coeffs:
            return _ZERO
        return Poly((0,) * k + self.coeffs)

    def __eq__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    # -- division ------------------------------------------------------

    def div_rem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Exact quotient and remainder with degree(r) < degree(divisor)."""
        if not divisor:
            raise ZeroDivisorError("zero divisor")
        if self.degree < divisor.degree:
            return _ZERO, self
        rem = list(self.coeffs)
        div = divisor.coeffs
        dlead = div[-1]
        dd = len(div) - 1
        quot = [0] * (len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            q = _ratio(c, dlead)
            quot[top - dd] = q
            rem[top] = 0
            for i in range(dd):
                rem[top - dd + i] = rem[top - dd + i] - q * div[i]
        return Poly(quot), Poly(rem)

    def divides(self, other: "Poly") -> bool:
        """True iff self divides other exactly (self must be nonzero)."""
        _, r = other.div_rem(self)
        return not r

    # -- evaluation ------------------------------------------------------

    def __call__(self, point):
        """Exact Horner evaluation; works for any commutative value."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        if acc is None:
            return 0 if isinstance(point, (int, Fraction)) else 0 * point
        return acc


_ZERO = Poly(())
_ONE = Poly((1,))
_Z = Poly((0, 1))


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_neg(a: Poly) -> Poly:
    return -a


def degree(p: Poly) -> int:
    return p.degree


def div_rem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    return a.div_rem(b)


def divides_exactly(b: Poly, a: Poly) -> bool:
    """True iff b | a in Q[z] (b nonzero)."""
    return b.divides(a)


def evaluate_at(p: Poly, c) -> Scalar:
    return p(c)


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid over Q[z]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = _ONE, _ZERO
    t0, t1 = _ZERO, _ONE
    while r1:
        q, r = r0.div_rem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


# -- text format -------------------------------------------------------

def parse_scalar(text: str) -> Scalar:
    return _norm_coeff(Fraction(text.strip()))


def format_scalar(c) -> str:
    return str(c)


def parse_poly(text: str) -> Poly:
    """Parse the bracketed coefficient list format, e.g. ``[1, -1/2, 3]``.

    Whitespace-insensitive; ``[]`` is the zero polynomial.
    """
    s = "".join(text.split())
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"malformed polynomial literal: {text!r}")
    body = s[1:-1]
    if not body:
        return _ZERO
    try:
        return Poly(parse_scalar(tok) for tok in body.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polynomial literal: {text!r}") from exc


def format_poly(p: Poly) -> str:
    return "[" + ", ".join(format_scalar(c) for c in p.coeffs) + "]"


# -- quintic quotient algebra -----------------------------------------

class QuintElem:
    """Element of Q[x]/(x^5 - (t^2 - 1)) for a fixed rational base t.

    The algebra is unital and commutative for every t, including
    t in {1, -1} (where x is nilpotent) and t = 0 (where x^5 = -1).
    """

    __slots__ = ("base", "coords")

    def __init__(self, base, coords):
        base = _norm_coeff(Fraction(base) if not isinstance(base, (int, Fraction)) else base)
        cs = tuple(_norm_coeff(c) for c in coords)
        if len(cs) != 5:
            raise ValueError("quintic element needs exactly 5 coordinates")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, name, value):
        raise AttributeError("QuintElem is immutable")

    @staticmethod
    def scalar(base, c) -> "QuintElem":
        return QuintElem(base, (c, 0, 0, 0, 0))

    @staticmethod
    def generator(base) -> "QuintElem":
        """The class of x, a fifth root of base^2 - 1."""
        return QuintElem(base, (0, 1, 0, 0, 0))

    def _coerce(self, other):
        if isinstance(other, QuintElem):
            if other.base != self.base:
                raise AlgebraMismatchError("algebra mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return QuintElem.scalar(self.base, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuintElem(self.base, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuintElem(self.base, tuple(-c for c in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        raw = [0] * 9
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                if b == 0:
                    continue
                raw[i + j] += a * b
        red = self.base * self.base - 1
        out = list(raw[:5])
        for i in range(5, 9):
            if raw[i] != 0:
                out[i - 5] = out[i - 5] + raw[i] * red
        return QuintElem(self.base, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power in quotient algebra")
        result = QuintElem.scalar(self.base, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuintElem):
            return self.base == other.base and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[1:] == (0, 0, 0, 0) and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.coords))

    def __repr__(self):
        return f"QuintElem({self.base}, {list(self.coords)})"


def quint_add(a: QuintElem, b: QuintElem) -> QuintElem:
    return a + b


def quint_mul(a: QuintElem, b: QuintElem) -> QuintElem:
    return a * b
