"""Exact algebraic number support shared by the branch machinery.

Numbers are carried as exact sympy expressions (rationals, radicals,
``CRootOf`` objects and arithmetic combinations thereof).  Arithmetic stays
on the exact representation; comparisons go through certified numeric
enclosures, refined on demand, with a minimal-polynomial fallback for exact
zero tests.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

_ZERO_TEST_SYMBOL = sympy.Symbol("_z0")


def from_fraction(q: Fraction) -> sympy.Rational:
    return sympy.Rational(q.numerator, q.denominator)


def as_fraction(expr: sympy.Expr) -> Fraction | None:
    """The exact rational value of an expression, or None."""
    simplified = sympy.nsimplify(expr, rational=False) if expr.free_symbols else expr
    if simplified.is_Rational:
        return Fraction(int(simplified.p), int(simplified.q))
    return None


def is_zero(expr: sympy.Expr) -> bool:
    """Exact zero test for an algebraic expression.

    Tries the cheap structural routes first; falls back to the minimal
    polynomial, which decides the question for any algebraic input.
    """
    if expr.free_symbols:
        raise ValueError(f"not a number: {expr}")
    flag = expr.is_zero
    if flag is not None:
        return bool(flag)
    expanded = sympy.expand(expr)
    flag = expanded.is_zero
    if flag is not None:
        return bool(flag)
    expanded = sympy.radsimp(expanded)
    flag = expanded.is_zero
    if flag is not None:
        return bool(flag)
    # quick numeric screen: a nonzero value far from zero needs no exact proof
    approx = sympy.Abs(expanded).evalf(30)
    if approx.is_Float and approx > sympy.Float("1e-10", 30):
        return False
    minpoly = sympy.minimal_polynomial(expanded, _ZERO_TEST_SYMBOL)
    return minpoly == _ZERO_TEST_SYMBOL


def eq(a: sympy.Expr, b: sympy.Expr) -> bool:
    return is_zero(sympy.expand(a - b))


def abs_squared(expr: sympy.Expr) -> sympy.Expr:
    """|expr|^2 as an exact real algebraic expression."""
    return sympy.expand(expr * sympy.conjugate(expr))


def complex_box(expr: sympy.Expr, digits: int = 30) -> tuple[complex, float]:
    """(center, radius) enclosure of an exact complex number.

    The radius reflects the requested evalf precision with a safety margin;
    increase ``digits`` to refine.
    """
    val = expr.evalf(digits)
    center = complex(val)
    scale = max(1.0, abs(center))
    return center, scale * 10.0 ** (4 - digits)


def real_enclosure(expr: sympy.Expr, digits: int = 30) -> tuple[float, float]:
    """(lo, hi) enclosure of an exact real number."""
    val = expr.evalf(digits)
    mid = float(val)
    margin = max(1.0, abs(mid)) * 10.0 ** (4 - digits)
    return mid - margin, mid + margin


def roots_exact(poly: sympy.Poly) -> list[tuple[sympy.Expr, int]]:
    """All complex roots of a univariate polynomial with multiplicity.

    Rational coefficients always succeed (irrational roots come back as
    ``CRootOf``).  Algebraic coefficients succeed when sympy can express the
    roots in radicals; otherwise a ValueError reports the stuck factor and
    its degree, so callers can surface the required field growth.
    """
    gen = poly.gen
    found: list[tuple[sympy.Expr, int]] = []
    if poly.domain.is_QQ or poly.domain.is_ZZ:
        _, factors = poly.factor_list()
        for fac, mult in factors:
            if fac.degree() == 0:
                continue
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                found.append((sympy.Rational(-b, a), int(mult)))
            else:
                for i in range(fac.degree()):
                    found.append((sympy.CRootOf(fac, i), int(mult)))
        return found
    # algebraic coefficients: ask for a radical solution
    expr = poly.as_expr()
    try:
        sols = sympy.roots(expr, gen, multiple=False)
    except (sympy.PolynomialError, NotImplementedError):
        sols = {}
    total = sum(sols.values()) if sols else 0
    if total == poly.degree():
        return [(sympy.simplify(r), int(m)) for r, m in sols.items()]
    raise ValueError(
        f"cannot isolate roots of degree-{poly.degree()} polynomial over its "
        f"coefficient field (solved {total} of {poly.degree()})"
    )
