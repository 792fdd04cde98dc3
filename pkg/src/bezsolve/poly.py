"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to Fraction coefficients,
together with the tuple of variable names the exponents refer to.  Three
variable sets appear throughout the solver: the input variables x1..xn, a
mirror set y1..yn used by the finite-difference construction, and their
concatenation (x1..xn, y1..yn).

Monomials are ordered by plain lexicographic comparison of exponent tuples
with x1 most significant (ascending for index families, descending when a
polynomial is printed), which keeps every table and fixture deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Exponent = tuple[int, ...]


class ParseError(ValueError):
    """Syntax or naming error in a polynomial expression, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SystemFormatError(ValueError):
    """Input text does not describe a square polynomial system."""


def x_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def y_names(n: int) -> tuple[str, ...]:
    return tuple(f"y{i + 1}" for i in range(n))


def joint_names(n: int) -> tuple[str, ...]:
    """Variable set for two-variable-set polynomials: x block then y block."""
    return x_names(n) + y_names(n)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one slot per variable in ``vars``) to
    nonzero Fractions.  Instances are never mutated after construction.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: dict[Exponent, Fraction] | None = None):
        self.vars = tuple(vars)
        nvars = len(self.vars)
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not match {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exp] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], value) -> "Poly":
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def variable(cls, vars: Sequence[str], index: int) -> "Poly":
        exp = [0] * len(vars)
        exp[index] = 1
        return cls(vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Exponent, coeff=1) -> "Poly":
        return cls(vars, {tuple(exp): Fraction(coeff)})

    # -- ring operations ----------------------------------------------

    def _check_same_vars(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.vars, other)
        self._check_same_vars(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check_same_vars(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.vars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    __hash__ = None  # mutable-looking container; compare by value only

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------

    def var_degree(self, index: int) -> int:
        """Largest exponent of variable ``index`` (0 for the zero polynomial)."""
        return max((e[index] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coeff(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def derivative(self, index: int) -> "Poly":
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e:
                key = exp[:index] + (e - 1,) + exp[index + 1:]
                out[key] = out.get(key, Fraction(0)) + c * e
        return Poly(self.vars, out)

    def embedded(self, new_vars: Sequence[str], positions: Sequence[int]) -> "Poly":
        """Reinterpret over a larger variable set.

        ``positions[i]`` is the slot of old variable i in ``new_vars``.
        """
        width = len(new_vars)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            key = [0] * width
            for i, e in enumerate(exp):
                key[positions[i]] = e
            out[tuple(key)] = c
        return Poly(new_vars, out)

    # -- evaluation ---------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Value at a numeric point, term by term; coefficients become floats here."""
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} coordinates, expected {len(self.vars)}")
        total = 0j
        for exp, c in self.terms.items():
            value = complex(c)
            for coord, e in zip(point, exp):
                if e:
                    value *= coord ** e
            total += value
        return total

    def evaluate_exact(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} coordinates, expected {len(self.vars)}")
        total = Fraction(0)
        for exp, c in self.terms.items():
            value = c
            for coord, e in zip(point, exp):
                if e:
                    value *= Fraction(coord) ** e
            total += value
        return total

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    """Canonical text form, leading term first; reparses to the same Poly."""
    if not p.terms:
        return "0"
    pieces = []
    for exp in sorted(p.terms, reverse=True):
        c = p.terms[exp]
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(p.vars, exp)
            if e
        ]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


# -- parser -----------------------------------------------------------

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z]\w*)|(?P<op>[-+*/^])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.length)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


def parse_poly(text: str, var_names: Sequence[str]) -> Poly:
    """Parse one polynomial.

    Grammar: terms joined by ``+``/``-``; a term is an optional rational
    (integer or a/b), an optional ``*``, then ``*``-separated factors of the
    form ``xK`` or ``xK^E``.  Whitespace is ignored.
    """
    var_names = tuple(var_names)
    index_of = {name: i for i, name in enumerate(var_names)}
    stream = _TokenStream(_tokenize(text), len(text))
    terms: dict[Exponent, Fraction] = {}

    def add_term(coeff: Fraction, exp: list[int]) -> None:
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff

    def parse_factor(exp: list[int]) -> None:
        kind, value, pos = stream.next()
        if kind != "name":
            raise ParseError("expected a variable name", pos)
        if value not in index_of:
            raise ParseError(f"unknown variable {value!r}", pos)
        power = 1
        if stream.peek()[:2] == ("op", "^"):
            stream.next()
            kind, value2, pos2 = stream.next()
            if kind != "num":
                raise ParseError("expected an integer exponent after '^'", pos2)
            power = int(value2)
            if power < 1:
                raise ParseError("exponent must be a positive integer", pos2)
        exp[index_of[value]] += power

    first = True
    while True:
        kind, value, pos = stream.peek()
        if kind is None:
            if first:
                raise ParseError("empty polynomial", pos)
            break
        sign = 1
        if kind == "op" and value in "+-":
            stream.next()
            sign = -1 if value == "-" else 1
            kind, value, pos = stream.peek()
        elif not first:
            raise ParseError("expected '+' or '-' between terms", pos)
        first = False

        coeff = Fraction(sign)
        exp = [0] * len(var_names)
        if kind == "num":
            stream.next()
            numerator = int(value)
            denominator = 1
            if stream.peek()[:2] == ("op", "/"):
                stream.next()
                kind2, value2, pos2 = stream.next()
                if kind2 != "num":
                    raise ParseError("expected an integer denominator after '/'", pos2)
                denominator = int(value2)
                if denominator == 0:
                    raise ParseError("zero denominator", pos2)
            coeff *= Fraction(numerator, denominator)
            if stream.peek()[:2] == ("op", "*"):
                stream.next()
                parse_factor(exp)
            elif stream.peek()[0] == "name":
                parse_factor(exp)
            else:
                add_term(coeff, exp)
                continue
        elif kind == "name":
            parse_factor(exp)
        else:
            raise ParseError("expected a term", pos)

        while stream.peek()[:2] == ("op", "*"):
            stream.next()
            parse_factor(exp)
        add_term(coeff, exp)

    return Poly(var_names, terms)


# -- systems ----------------------------------------------------------

@dataclass(frozen=True)
class PolySystem:
    """Square system: n polynomials over the variables x1..xn."""

    n: int
    polys: tuple[Poly, ...]

    def __post_init__(self):
        if self.n < 1:
            raise SystemFormatError("a system needs at least one polynomial")
        if len(self.polys) != self.n:
            raise SystemFormatError(
                f"non-square system: {len(self.polys)} polynomials in {self.n} variables"
            )
        names = x_names(self.n)
        for p in self.polys:
            if p.vars != names:
                raise SystemFormatError(f"polynomial over {p.vars}, expected {names}")


_VAR_INDEX = re.compile(r"^x([1-9]\d*)$")


def parse_system(text: str) -> PolySystem:
    """Parse one polynomial per non-comment line; n is the largest index used."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append(raw)
    if not lines:
        raise SystemFormatError("empty input: no polynomials found")

    n = 0
    for line in lines:
        for kind, value, pos in _tokenize(line):
            if kind == "name":
                m = _VAR_INDEX.match(value)
                if not m:
                    raise ParseError(f"unknown variable {value!r}", pos)
                n = max(n, int(m.group(1)))
    if len(lines) != n:
        raise SystemFormatError(
            f"non-square system: {len(lines)} polynomials but variables up to x{n}"
        )
    names = x_names(n)
    return PolySystem(n, tuple(parse_poly(line, names) for line in lines))


def multidegree(system: PolySystem) -> tuple[int, ...]:
    """Per-variable degree bound: d_j = max over i of deg_{x_j}(f_i)."""
    return tuple(
        max(p.var_degree(j) for p in system.polys) for j in range(system.n)
    )


def jacobian(system: PolySystem) -> list[list[Poly]]:
    """Matrix of partial derivatives, entry (i, j) = d f_i / d x_j."""
    return [[p.derivative(j) for j in range(system.n)] for p in system.polys]


def univariate_divmod(g: Poly, f: Poly) -> tuple[Poly, Poly]:
    """Exact division with remainder for one-variable polynomials.

    Returns (q, r) with g = q*f + r and deg r < deg f.
    """
    if len(g.vars) != 1 or len(f.vars) != 1 or g.vars != f.vars:
        raise ValueError("both polynomials must be univariate in the same variable")
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    df = max(e[0] for e in f.terms)
    fc = [Fraction(0)] * (df + 1)
    for (e,), c in f.terms.items():
        fc[e] = c
    rem = {e[0]: c for e, c in g.terms.items()}
    dg = max(rem, default=-1)
    q: dict[int, Fraction] = {}
    for e in range(dg, df - 1, -1):
        c = rem.get(e)
        if not c:
            continue
        factor = c / fc[df]
        q[e - df] = factor
        for i, fi in enumerate(fc):
            if fi:
                key = e - df + i
                rem[key] = rem.get(key, Fraction(0)) - factor * fi
        rem.pop(e, None)
    quotient = Poly(g.vars, {(e,): c for e, c in q.items()})
    remainder = Poly(g.vars, {(e,): c for e, c in rem.items()})
    return quotient, remainder
