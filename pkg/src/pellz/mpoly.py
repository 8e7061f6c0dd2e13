"""Signed multivariate integer polynomials over named unknowns and z.

This is internal plumbing for the subtraction-free language: signed
identities (group-law equations, Pell identities, Diophantine inputs)
are assembled here with ordinary +/-/* and then sign-split into
positive atoms.  A monomial is a sorted tuple of (name, exponent)
pairs; the ring variable z is just the reserved name "z".
"""

from __future__ import annotations

from typing import Iterator

Monomial = tuple[tuple[str, int], ...]


class MPoly:
    """Multivariate polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        cleaned = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @staticmethod
    def const(c: int) -> "MPoly":
        return MPoly({(): c})

    @staticmethod
    def var(name: str, exp: int = 1) -> "MPoly":
        if exp == 0:
            return MPoly.const(1)
        return MPoly({((name, exp),): 1})

    @staticmethod
    def zvar(exp: int = 1) -> "MPoly":
        return MPoly.var("z", exp)

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other)
        return None

    def __add__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    @staticmethod
    def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
        exps: dict[str, int] = dict(a)
        for name, e in b:
            exps[name] = exps.get(name, 0) + e
        return tuple(sorted(exps.items()))

    def __mul__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                m = MPoly._mul_monomials(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def split_signs(self) -> tuple["MPoly", "MPoly"]:
        """Return (pos, neg) with self = pos - neg, both sign-free."""
        pos = {m: c for m, c in self.terms.items() if c > 0}
        neg = {m: -c for m, c in self.terms.items() if c < 0}
        return MPoly(pos), MPoly(neg)

    def sorted_terms(self) -> Iterator[tuple[Monomial, int]]:
        """Deterministic order: total degree, then lexicographic monomial."""
        def key(item):
            m, _ = item
            return (sum(e for _, e in m), m)
        return iter(sorted(self.terms.items(), key=key))

    def evaluate(self, assignment: dict):
        """Evaluate with exact values (ints, Fractions, Poly, ...)."""
        total = 0
        for m, c in self.terms.items():
            val = c
            for name, e in m:
                if name not in assignment:
                    raise KeyError(f"unbound variable: {name}")
                val = val * assignment[name] ** e
            total = val + total
        return total

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        parts = []
        for m, c in self.sorted_terms():
            factors = [str(c)] if (c != 1 or not m) else []
            factors += [f"{n}^{e}" if e > 1 else n for n, e in m]
            parts.append("*".join(factors))
        return "MPoly(" + " + ".join(parts) + ")"


class SignedExprError(ValueError):
    """Syntax error in the signed-expression mini-language."""


def parse_signed_expr(text: str) -> MPoly:
    """Parse an integer-coefficient polynomial expression.

    Grammar: identifiers, nonnegative integer literals, ``+ - * ^``,
    unary minus, and parentheses.  This is the mini-language of the
    reduction CLI where subtraction is still legal.
    """
    tokens = _tokenize_signed(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None:
            raise SignedExprError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise SignedExprError(f"expected {expected!r}, found {tok!r}")
        pos += 1
        return tok

    def parse_expr() -> MPoly:
        if peek() == "-":
            take()
            acc = -parse_term()
        else:
            acc = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def parse_term() -> MPoly:
        acc = parse_factor()
        while peek() == "*":
            take()
            acc = acc * parse_factor()
        return acc

    def parse_factor() -> MPoly:
        base = parse_atom()
        if peek() == "^":
            take()
            exp = take()
            if not exp.isdigit():
                raise SignedExprError("exponent must be a nonnegative integer")
            return base ** int(exp)
        return base

    def parse_atom() -> MPoly:
        tok = take()
        if tok == "(":
            inner = parse_expr()
            take(")")
            return inner
        if tok == "-":
            return -parse_atom()
        if tok.isdigit():
            return MPoly.const(int(tok))
        if tok.isidentifier():
            return MPoly.var(tok)
        raise SignedExprError(f"unexpected token {tok!r}")

    result = parse_expr()
    if pos != len(tokens):
        raise SignedExprError(f"trailing input at token {tokens[pos]!r}")
    return result


def parse_signed_identity(text: str) -> tuple[MPoly, MPoly]:
    """Parse ``lhs = rhs`` (rhs defaults to 0 when ``=`` is absent)."""
    if "=" in text:
        lhs, _, rhs = text.partition("=")
        return parse_signed_expr(lhs), parse_signed_expr(rhs)
    return parse_signed_expr(text), MPoly()


def _tokenize_signed(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise SignedExprError(f"illegal character {ch!r}")
    return tokens
