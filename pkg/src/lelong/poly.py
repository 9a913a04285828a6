"""Sparse multivariate polynomials over exact rationals.

A polynomial is a mapping from exponent vectors (one non-negative integer
per variable) to nonzero Fraction coefficients.  The variable list is fixed
per value and every cross-module polynomial carries it, so variable
mismatches fail loudly instead of silently reindexing.

The expression grammar accepted by :func:`parse_poly` (the canonical input
format for all CLI polynomial arguments) is

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | primary ('^' INTEGER)?
    primary := INTEGER | VARIABLE | '(' expr ')'

``/`` requires a constant nonzero denominator; ``3/4`` is the common case.
Multiplication is always explicit (``3*y^2``, never ``3y^2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import sympy

Exponent = tuple[int, ...]


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class MultiPoly:
    """Immutable sparse polynomial with exact Fraction coefficients.

    Terms map exponent tuples (aligned with ``vars``) to nonzero
    coefficients; the zero polynomial has an empty term map.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponent, Fraction | int]):
        vs = tuple(vars)
        nv = len(vs)
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            key = tuple(int(e) for e in exp)
            if len(key) != nv:
                raise ValueError(f"exponent {key} has wrong arity for variables {vs}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            c = Fraction(coeff)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self.vars = vs
        self.terms = clean
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str]) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Iterable[str], value) -> "MultiPoly":
        vs = tuple(vars)
        return cls(vs, {(0,) * len(vs): Fraction(value)})

    @classmethod
    def var(cls, vars: Iterable[str], name: str) -> "MultiPoly":
        vs = tuple(vars)
        if name not in vs:
            raise ValueError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exp: Fraction(1)})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coeff(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_value(self) -> Fraction | None:
        """The value of a constant polynomial, or None if nonconstant."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            exp, c = next(iter(self.terms.items()))
            if not any(exp):
                return c
        return None

    # -- arithmetic ----------------------------------------------------

    def _check_same_vars(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_same_vars(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i]:
                key = exp[:i] + (exp[i] - 1,) + exp[i + 1 :]
                out[key] = out.get(key, Fraction(0)) + c * exp[i]
        return MultiPoly(self.vars, out)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numeric evaluation; every variable must be assigned."""
        idx = [values[v] for v in self.vars]
        total = 0j
        for exp, c in self.terms.items():
            term = complex(c)
            for base, e in zip(idx, exp):
                if e:
                    term *= base**e
            total += term
        return total

    def set_var(self, name: str, value) -> "MultiPoly":
        """Exact partial evaluation; the variable is removed from the list."""
        i = self.vars.index(name)
        val = Fraction(value)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            key = exp[:i] + exp[i + 1 :]
            out[key] = out.get(key, Fraction(0)) + c * val ** exp[i]
        return MultiPoly(rest, out)

    def shift_var(self, name: str, offset) -> "MultiPoly":
        """Exact substitution ``name -> name + offset`` (same variables)."""
        off = Fraction(offset)
        if not off:
            return self
        i = self.vars.index(name)
        out = MultiPoly.zero(self.vars)
        x = MultiPoly.var(self.vars, name) + MultiPoly.const(self.vars, off)
        for exp, c in self.terms.items():
            base = exp[:i] + (0,) + exp[i + 1 :]
            out = out + MultiPoly(self.vars, {base: c}) * x ** exp[i]
        return out

    def rename_vars(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms)

    def with_vars(self, vars: Iterable[str]) -> "MultiPoly":
        """Re-express over a superset (or reordering) of the variables."""
        vs = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vs:
                if self.degree_in(v) > 0:
                    raise ValueError(f"variable {v!r} missing from target list {vs}")
                pos.append(None)
            else:
                pos.append(vs.index(v))
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            key = [0] * len(vs)
            for p, e in zip(pos, exp):
                if p is not None:
                    key[p] = e
            out[tuple(key)] = out.get(tuple(key), Fraction(0)) + c
        return MultiPoly(vs, out)

    # -- ordering, printing, hashing -------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Lexicographically descending in the declared variable order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, c in self.sorted_terms():
            factors = []
            for v, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars}, {self.pretty()!r})"

    # -- sympy bridge ----------------------------------------------------

    def to_sympy(self) -> sympy.Expr:
        syms = sympy.symbols(self.vars) if self.vars else ()
        expr = sympy.Integer(0)
        for exp, c in self.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for s, e in zip(syms, exp):
                term *= s**e
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr: sympy.Expr, vars: Iterable[str]) -> "MultiPoly":
        vs = tuple(vars)
        syms = sympy.symbols(vs)
        poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
        terms: dict[Exponent, Fraction] = {}
        for exp, c in poly.terms():
            terms[tuple(int(e) for e in exp)] = Fraction(int(c.numerator), int(c.denominator))
        return cls(vs, terms)


class HomogPoly(MultiPoly):
    """A MultiPoly all of whose terms share the same total degree."""

    __slots__ = ()

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponent, Fraction | int]):
        super().__init__(vars, terms)
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degrees)}")

    def dehomogenize(self, name: str) -> MultiPoly:
        """Set the named variable to 1."""
        return MultiPoly(self.vars, self.terms).set_var(name, 1)


# -- parsing -----------------------------------------------------------


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.pos = 0

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> MultiPoly:
        result = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        return result

    def parse_expr(self) -> MultiPoly:
        if self.peek() == "+":
            self.pos += 1
        result = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                result = result + self.parse_term()
            elif ch == "-":
                self.pos += 1
                result = result - self.parse_term()
            else:
                return result

    def parse_term(self) -> MultiPoly:
        result = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                result = result * self.parse_factor()
            elif ch == "/":
                self.pos += 1
                at = self.pos
                denom = self.parse_factor().constant_value()
                if denom is None:
                    self.pos = at
                    raise self.error("denominator must be a nonzero constant")
                if denom == 0:
                    self.pos = at
                    raise self.error("division by zero")
                result = result.scale(Fraction(1) / denom)
            else:
                return result

    def parse_factor(self) -> MultiPoly:
        if self.peek() == "-":
            self.pos += 1
            return -self.parse_factor()
        base = self.parse_primary()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                raise self.error("expected a non-negative integer exponent")
            return base ** int(self.text[start : self.pos])
        return base

    def parse_primary(self) -> MultiPoly:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return MultiPoly.const(self.vars, int(self.text[start : self.pos]))
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.vars:
                self.pos = start
                raise self.error(f"unknown variable {name!r}")
            return MultiPoly.var(self.vars, name)
        raise self.error(f"unexpected character {ch!r}")


def parse_poly(text: str, vars: Iterable[str]) -> MultiPoly:
    """Parse an expression into its exact expanded form."""
    return _Parser(text, tuple(vars)).parse()


# -- module operations ---------------------------------------------------


def homogenize(p: MultiPoly, t: str = "t") -> HomogPoly:
    """Homogenize to total degree deg(p) with the new variable listed first."""
    if p.is_zero:
        raise ValueError("cannot homogenize the zero polynomial")
    if t in p.vars:
        raise ValueError(f"variable {t!r} already in use")
    d = p.total_degree()
    terms = {(d - sum(exp),) + exp: c for exp, c in p.terms.items()}
    return HomogPoly((t,) + p.vars, terms)


def substitute(p: MultiPoly, assignment: Mapping[str, MultiPoly]) -> MultiPoly:
    """Exact composition; every variable of ``p`` must be assigned.

    All assigned polynomials must share one variable list, which becomes the
    variable list of the result.
    """
    missing = [v for v in p.vars if v not in assignment]
    if missing:
        raise ValueError(f"unassigned variables: {missing}")
    images = [assignment[v] for v in p.vars]
    target = images[0].vars if images else ()
    for im in images:
        if im.vars != target:
            raise ValueError("assigned polynomials disagree on variables")
    result = MultiPoly.zero(target)
    for exp, c in p.terms.items():
        term = MultiPoly.const(target, c)
        for im, e in zip(images, exp):
            if e:
                term = term * im**e
        result = result + term
    return result


def _as_univariate(u: MultiPoly, name: str = "y") -> dict[int, Fraction]:
    """Coefficients of a polynomial that must be univariate in ``name``."""
    if name not in u.vars:
        raise ValueError(f"expected a polynomial in {name!r}, got variables {u.vars}")
    i = u.vars.index(name)
    out: dict[int, Fraction] = {}
    for exp, c in u.terms.items():
        if any(e for k, e in enumerate(exp) if k != i):
            raise ValueError(f"not univariate in {name!r}: {u.pretty()}")
        out[exp[i]] = c
    return out


def reduce_mod_relation(u: MultiPoly, e: int) -> MultiPoly:
    """Rewrite a univariate polynomial in y by sending y^e to x.

    Each monomial ``y^j`` maps to ``x^(j//e) * y^(j% e)``, so the result has
    y-degree < e and substituting ``x -> y^e`` back recovers the input.
    """
    if e < 1:
        raise ValueError("the relation exponent must be a positive integer")
    coeffs = _as_univariate(u)
    terms: dict[Exponent, Fraction] = {}
    for j, c in coeffs.items():
        key = (j // e, j % e)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(("x", "y"), terms)


@dataclass(frozen=True)
class InterpResult:
    """Outcome of a degree-bounded interpolation through y^e = x.

    Either a witness polynomial Q with Q(y^e, y) equal to the target and
    total degree within the bound, or the exponent of a target monomial
    y^s that no admissible monomial x^j * y^l (j*e + l = s, j + l <= d)
    can produce.
    """

    feasible: bool
    witness: MultiPoly | None
    certificate_exponent: int | None

    @property
    def certificate_monomial(self) -> str | None:
        if self.certificate_exponent is None:
            return None
        return f"y^{self.certificate_exponent}"


def interp_exists(target: MultiPoly, e: int, d: int) -> InterpResult:
    """Decide whether some Q of total degree <= d satisfies Q(y^e, y) = target.

    The substitution sends x^j * y^l to y^(j*e + l), so the constraints split
    per target exponent s: s is reachable within degree d exactly when the
    minimal-degree preimage x^(s//e) * y^(s% e) fits.  The canonical witness
    is therefore the y^e -> x rewriting itself; if some needed exponent is
    unreachable it is returned as the certificate.
    """
    if e < 1:
        raise ValueError("the relation exponent must be a positive integer")
    if d < 0:
        raise ValueError("the degree bound must be non-negative")
    coeffs = _as_univariate(target)
    infeasible = [s for s in coeffs if (s // e) + (s % e) > d]
    if infeasible:
        return InterpResult(False, None, max(infeasible))
    witness = reduce_mod_relation(target, e)
    return InterpResult(True, witness, None)
