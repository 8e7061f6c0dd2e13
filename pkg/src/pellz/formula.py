"""Positive-existential formulas over the signature {0, 1, z, +, *, =}.

Terms and formulas are immutable trees on exactly that signature; there
is no subtraction, negation, or universal quantifier anywhere in the
AST.  The concrete grammar is

    formula := 'E' var '.' formula | disj
    disj    := conj ('|' conj)*
    conj    := atom ('&' atom)*
    atom    := term '=' term | '(' formula ')'
    term    := factor ('+' factor)*
    factor  := base ('*' base)*
    base    := '0' | '1' | 'z' | numeral | var | base '^' numeral | '(' term ')'

Numerals n >= 2 and powers are surface sugar: a numeral expands by
binary Horner (n = 2m + b becomes (1+1)*<m> + b, size O(log n)) and
t^e expands to e-fold multiplication, so the core AST never leaves the
signature.  Signed identities enter only through positive_rewrite,
which moves negative monomials across '=' (sign-splitting).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .mpoly import MPoly
from .polyring import AlgebraMismatchError, Poly, QuintElem, format_scalar, parse_poly, parse_scalar


# -- AST ----------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Z:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Zero, One, Z, Var, Add, Mul]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, And, Or, Exists]

ZERO = Zero()
ONE = One()
ZVAR = Z()


def conjoin(parts: list[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty list."""
    if not parts:
        raise ValueError("empty conjunction")
    acc = parts[0]
    for part in parts[1:]:
        acc = And(acc, part)
    return acc


def exists_many(names: list[str], body: Formula) -> Formula:
    for name in reversed(names):
        body = Exists(name, body)
    return body


def numeral(n: int) -> Term:
    """The constant n >= 0 as a term, by binary Horner expansion."""
    if n < 0:
        raise ValueError("numerals are nonnegative")
    if n == 0:
        return ZERO
    if n == 1:
        return ONE
    half = numeral(n // 2)
    doubled = Mul(Add(ONE, ONE), half)
    return Add(doubled, ONE) if n % 2 else doubled


def power(base: Term, e: int) -> Term:
    """e-fold multiplication; the empty product is 1."""
    if e < 0:
        raise ValueError("negative power")
    if e == 0:
        return ONE
    acc = base
    for _ in range(e - 1):
        acc = Mul(acc, base)
    return acc


def free_vars(f) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, (Zero, One, Z)):
        return set()
    if isinstance(f, (Add, Mul, Eq, And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Exists):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a term or formula: {f!r}")


def bound_vars(f) -> list[str]:
    """Existentially bound variables in prefix order."""
    if isinstance(f, Exists):
        return [f.var] + bound_vars(f.body)
    if isinstance(f, (And, Or)):
        return bound_vars(f.left) + bound_vars(f.right)
    return []


def audit_positive(f) -> bool:
    """Structural audit: the tree uses only the allowed constructors."""
    if isinstance(f, (Zero, One, Z, Var)):
        return True
    if isinstance(f, (Add, Mul, Eq, And, Or)):
        return audit_positive(f.left) and audit_positive(f.right)
    if isinstance(f, Exists):
        return audit_positive(f.body)
    return False


# -- parsing -------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


_REJECTED_CHARS = {"-", "!"}
_REJECTED_WORDS = {"forall", "not", "neg"}
_NOT_POSITIVE = "not in the positive existential language"


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'sym', 'num', 'ident', 'E', 'z', 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch in _REJECTED_CHARS:
            raise FormulaSyntaxError(_NOT_POSITIVE, line, col)
        elif ch in "+*^=&|().":
            toks.append(_Tok("sym", ch, line, col))
            col += 1
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("num", text[i:j], line, col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _REJECTED_WORDS:
                raise FormulaSyntaxError(_NOT_POSITIVE, line, col)
            kind = "E" if word == "E" else ("z" if word == "z" else "ident")
            toks.append(_Tok(kind, word, line, col))
            col += j - i
            i = j
        else:
            raise FormulaSyntaxError(f"illegal character {ch!r}", line, col)
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, tokens: list[_Tok]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.kind == "eof" or tok.text != text:
            raise FormulaSyntaxError(f"expected {text!r}", tok.line, tok.col)
        return self.take()

    def error(self, message: str):
        tok = self.peek()
        raise FormulaSyntaxError(message, tok.line, tok.col)

    # formula := 'E' var '.' formula | disj
    def formula(self) -> Formula:
        if self.peek().kind == "E":
            self.take()
            var = self.peek()
            if var.kind != "ident":
                self.error("expected a variable after 'E'")
            self.take()
            self.expect(".")
            return Exists(var.text, self.formula())
        return self.disj()

    def disj(self) -> Formula:
        acc = self.conj()
        while self.peek().text == "|":
            self.take()
            acc = Or(acc, self.conj())
        return acc

    def conj(self) -> Formula:
        acc = self.atom()
        while self.peek().text == "&":
            self.take()
            acc = And(acc, self.atom())
        return acc

    # atom := term '=' term | '(' formula ')'
    def atom(self) -> Formula:
        if self.peek().text == "(":
            # Could open a parenthesized formula or a parenthesized term;
            # try the term route first and fall back on failure.
            save = self.pos
            try:
                left = self.term()
                self.expect("=")
                return Eq(left, self.term())
            except FormulaSyntaxError:
                self.pos = save
            self.expect("(")
            inner = self.formula()
            self.expect(")")
            return inner
        left = self.term()
        self.expect("=")
        return Eq(left, self.term())

    def term(self) -> Term:
        acc = self.factor()
        while self.peek().text == "+":
            self.take()
            acc = Add(acc, self.factor())
        return acc

    def factor(self) -> Term:
        acc = self.base()
        while self.peek().text == "*":
            self.take()
            acc = Mul(acc, self.base())
        return acc

    def base(self) -> Term:
        tok = self.peek()
        if tok.text == "(":
            self.take()
            inner = self.term()
            self.expect(")")
            node = inner
        elif tok.kind == "num":
            self.take()
            node = numeral(int(tok.text))
        elif tok.kind == "z":
            self.take()
            node = ZVAR
        elif tok.kind == "ident":
            self.take()
            node = Var(tok.text)
        elif tok.kind == "E":
            self.error("'E' is reserved for the existential quantifier")
        else:
            self.error(f"unexpected {tok.text!r}" if tok.kind != "eof" else "unexpected end of input")
        while self.peek().text == "^":
            self.take()
            etok = self.peek()
            if etok.kind != "num":
                self.error("exponent must be a numeral")
            self.take()
            node = power(node, int(etok.text))
        return node


def parse(text: str) -> Formula:
    """Parse a positive-existential formula; raises FormulaSyntaxError."""
    parser = _Parser(_tokenize(text))
    result = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return result


# -- printing ------------------------------------------------------------

def _print_term(t, level: int) -> str:
    if isinstance(t, Zero):
        s, own = "0", 3
    elif isinstance(t, One):
        s, own = "1", 3
    elif isinstance(t, Z):
        s, own = "z", 3
    elif isinstance(t, Var):
        s, own = t.name, 3
    elif isinstance(t, Add):
        s, own = f"{_print_term(t.left, 1)} + {_print_term(t.right, 2)}", 1
    elif isinstance(t, Mul):
        s, own = f"{_print_term(t.left, 2)} * {_print_term(t.right, 3)}", 2
    else:
        raise TypeError(f"not a term: {t!r}")
    return f"({s})" if own < level else s


def _print_formula(f, level: int) -> str:
    if isinstance(f, Exists):
        s, own = f"E {f.var} . {_print_formula(f.body, 0)}", 0
    elif isinstance(f, Or):
        s, own = f"{_print_formula(f.left, 1)} | {_print_formula(f.right, 2)}", 1
    elif isinstance(f, And):
        s, own = f"{_print_formula(f.left, 2)} & {_print_formula(f.right, 3)}", 2
    elif isinstance(f, Eq):
        s, own = f"{_print_term(f.left, 0)} = {_print_term(f.right, 0)}", 3
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({s})" if own < level else s


def print_formula(f: Formula) -> str:
    """Canonical text; parse(print_formula(f)) reproduces f structurally."""
    return _print_formula(f, 0)


def print_term(t: Term) -> str:
    return _print_term(t, 0)


# -- ground evaluation -----------------------------------------------------

class FormulaEvalError(ValueError):
    pass


Value = Union[Poly, QuintElem, int, Fraction]
Assignment = dict[str, Value]


def _as_poly(v: Value) -> Poly:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (QuintElem, int, Fraction)):
        return Poly.const(v)
    raise FormulaEvalError(f"not a ring value: {v!r}")


def _quint_bases(p: Poly) -> set:
    return {c.base for c in p.coeffs if isinstance(c, QuintElem)}


def eval_term(t, assignment: Assignment) -> Poly:
    if isinstance(t, Zero):
        return Poly.zero()
    if isinstance(t, One):
        return Poly.one()
    if isinstance(t, Z):
        return Poly.z()
    if isinstance(t, Var):
        if t.name not in assignment:
            raise FormulaEvalError(f"unbound variable: {t.name}")
        return _as_poly(assignment[t.name])
    try:
        if isinstance(t, Add):
            return eval_term(t.left, assignment) + eval_term(t.right, assignment)
        if isinstance(t, Mul):
            return eval_term(t.left, assignment) * eval_term(t.right, assignment)
    except AlgebraMismatchError:
        raise FormulaEvalError("incomparable algebras") from None
    raise FormulaEvalError(f"not a term: {t!r}")


def eval_ground(f, assignment: Assignment) -> bool:
    """Exact truth value of a formula whose variables are all assigned.

    Quantified variables must be supplied by the assignment; atoms
    compare exact normalized ring elements.  An atom whose two sides
    involve quintic-algebra elements over different bases is rejected.
    """
    if isinstance(f, Eq):
        left = eval_term(f.left, assignment)
        right = eval_term(f.right, assignment)
        if len(_quint_bases(left) | _quint_bases(right)) > 1:
            raise FormulaEvalError("incomparable algebras")
        return left == right
    if isinstance(f, And):
        return eval_ground(f.left, assignment) and eval_ground(f.right, assignment)
    if isinstance(f, Or):
        return eval_ground(f.left, assignment) or eval_ground(f.right, assignment)
    if isinstance(f, Exists):
        if f.var not in assignment:
            raise FormulaEvalError(f"unbound variable: {f.var}")
        return eval_ground(f.body, assignment)
    raise FormulaEvalError(f"not a formula: {f!r}")


# -- sign-splitting ---------------------------------------------------------

def mpoly_to_term(p: MPoly) -> Term:
    """Deterministic subtraction-free term for a sign-free MPoly."""
    parts = []
    for mono, coeff in p.sorted_terms():
        if coeff < 0:
            raise ValueError("mpoly_to_term requires nonnegative coefficients")
        factors = []
        for name, e in mono:
            base = ZVAR if name == "z" else Var(name)
            factors.extend([base] * e)
        node = None
        if coeff != 1 or not factors:
            node = numeral(coeff)
        for fct in factors:
            node = fct if node is None else Mul(node, fct)
        parts.append(node)
    if not parts:
        return ZERO
    acc = parts[0]
    for part in parts[1:]:
        acc = Add(acc, part)
    return acc


def positive_rewrite(lhs: MPoly, rhs: MPoly | int = 0) -> Eq:
    """Sign-split the signed identity lhs = rhs into a positive atom.

    Negative monomials of lhs - rhs move across '=', so both sides of
    the resulting atom carry only nonnegative-coefficient monomials.
    """
    diff = lhs - rhs
    pos, neg = diff.split_signs()
    return Eq(mpoly_to_term(pos), mpoly_to_term(neg))


def term_to_mpoly(t) -> MPoly:
    """Audit helper: symbolic expansion of a term over its variables and z."""
    if isinstance(t, Zero):
        return MPoly()
    if isinstance(t, One):
        return MPoly.const(1)
    if isinstance(t, Z):
        return MPoly.zvar()
    if isinstance(t, Var):
        return MPoly.var(t.name)
    if isinstance(t, Add):
        return term_to_mpoly(t.left) + term_to_mpoly(t.right)
    if isinstance(t, Mul):
        return term_to_mpoly(t.left) * term_to_mpoly(t.right)
    raise TypeError(f"not a term: {t!r}")


# -- witness files -----------------------------------------------------------

def parse_witness_value(text: str) -> Value:
    """Parse a witness value: ``[c0, ...]`` or ``quint(t, [c0..c4])``."""
    s = text.strip()
    if s.startswith("quint"):
        inner = s[len("quint"):].strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ValueError(f"malformed quint literal: {text!r}")
        body = inner[1:-1]
        head, _, tail = body.partition(",")
        coeffs = parse_poly(tail.strip())
        coords = [coeffs.coeff(i) for i in range(5)]
        if coeffs.degree >= 5:
            raise ValueError("quint literal needs at most 5 coordinates")
        return QuintElem(parse_scalar(head), coords)
    return parse_poly(s)


def format_witness_value(v: Value) -> str:
    if isinstance(v, QuintElem):
        coords = "[" + ", ".join(format_scalar(c) for c in v.coords) + "]"
        return f"quint({format_scalar(v.base)}, {coords})"
    return "[" + ", ".join(format_scalar(c) for c in _as_poly(v).coeffs) + "]"


def parse_witness_file(text: str) -> Assignment:
    """One ``name = value`` line per variable; '#' starts a comment."""
    out: Assignment = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.partition("#")[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'name = value'")
        name = name.strip()
        if not name.isidentifier():
            raise ValueError(f"line {lineno}: bad variable name {name!r}")
        out[name] = parse_witness_value(value)
    return out


def format_witness_file(assignment: Assignment, notes: dict[str, str] | None = None) -> str:
    lines = []
    for name, value in assignment.items():
        note = f"  # {notes[name]}" if notes and name in notes else ""
        lines.append(f"{name} = {format_witness_value(value)}{note}")
    return "\n".join(lines) + "\n"
