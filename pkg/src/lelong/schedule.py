"""Certified growth schedules for psh extension with growth factor below c.

A schedule is a pair of sequences (m_j, gamma_j) coupled by the exact
recurrence

    gamma_j * (m_j - m_{j-1}) = gamma_{j-1} * (m_j - m_{j-2}) + 1,

with m_{-1} = m_0 = 0 and gamma_0 = 1.  Choosing the step m_j - m_{j-1}
large enough that a_j = (m_{j-1} - m_{j-2} + 1) / (m_j - m_{j-1}) stays
below log(c) / 2^j forces sup_j gamma_j < c; the certificate below checks
the built prefix exactly and bounds the unbuilt tail analytically by
gamma_J * c^(1/2^J).

All schedule arithmetic is exact.  The only transcendental ingredient,
log(c), enters through a certified rational lower bound with outward
rounding, so certified comparisons never depend on floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "GrowthSchedule",
    "ScheduleCertificate",
    "CertificateError",
    "DominationError",
    "build_schedule",
    "certify_sup",
    "rho_j",
    "envelope",
    "verify_rho_domination",
    "log_lower_bound",
    "root_upper_bound",
]


class CertificateError(ValueError):
    """A schedule certificate check failed; carries the failing index."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class DominationError(ValueError):
    """rho_j(u) >= u failed on the grid; carries the witness (j, u)."""

    def __init__(self, j: int, u):
        super().__init__(f"rho_{j}({u}) < {u}")
        self.witness = (j, u)


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def log_lower_bound(c: Fraction, terms: int = 64) -> Fraction:
    """Rational lower bound on log(c) for c > 1, by truncating
    2*atanh((c-1)/(c+1)); all dropped terms are positive, so the partial
    sum rounds outward (down)."""
    if c <= 1:
        raise ValueError("log lower bound requires c > 1")
    x = (c - 1) / (c + 1)
    x2 = x * x
    total = Fraction(0)
    power = x
    for k in range(terms):
        total += 2 * power / (2 * k + 1)
        power *= x2
    return total


def root_upper_bound(c: Fraction, halvings: int, digits: int = 60) -> Fraction:
    """Rational upper bound on c^(1/2^halvings) via repeated outward-rounded
    square roots at fixed decimal scale."""
    if c <= 0:
        raise ValueError("positive base required")
    from math import isqrt

    scale = 10**digits
    # integer upper bound for c at the working scale
    num = c.numerator * scale
    val = -((-num) // c.denominator)  # ceil(c * scale)
    for _ in range(halvings):
        # sqrt(val/scale) <= ceil(sqrt(val*scale))/scale
        s = isqrt(val * scale)
        if s * s < val * scale:
            s += 1
        val = s
    return Fraction(val, scale)


@dataclass(frozen=True)
class GrowthSchedule:
    """Sequences m_j, gamma_j, a_j for 0 <= j <= length, with target c.

    ``m[j]`` and ``gamma[j]`` are indexed directly; ``a[j]`` is defined for
    j >= 1 and ``a[0]`` is unused (kept as None for alignment).
    """

    c: Fraction
    m: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    a: tuple[Fraction | None, ...]

    @property
    def length(self) -> int:
        return len(self.m) - 1

    def m_at(self, j: int) -> Fraction:
        """m_j with the convention m_{-1} = m_0 = 0."""
        if j < -1 or j > self.length:
            raise IndexError(f"index {j} outside schedule of length {self.length}")
        return self.m[j] if j >= 0 else Fraction(0)

    def x_at(self, j: int) -> Fraction:
        """x_j = (gamma_j - 1) m_j - gamma_j m_{j-1} - j, nonnegative and
        nondecreasing; its positivity is what makes rho_j dominate u."""
        g = self.gamma[j]
        return (g - 1) * self.m_at(j) - g * self.m_at(j - 1) - j

    def table_rows(self) -> list[dict]:
        rows = []
        for j in range(self.length + 1):
            rows.append(
                {
                    "j": j,
                    "m": str(self.m[j]),
                    "gamma": str(self.gamma[j]),
                    "gamma_decimal": f"{float(self.gamma[j]):.12g}",
                    "a": str(self.a[j]) if self.a[j] is not None else None,
                    "x": str(self.x_at(j)),
                }
            )
        return rows


def build_schedule(c: Fraction | int | str, length: int) -> GrowthSchedule:
    """Build the schedule of the given length for target c > 1.

    Each m_j is the least integer above m_{j-1} satisfying the certified
    bound a_j <= log(c)/2^j, where the log estimate rounds down; gamma_j
    then solves the coupling recurrence exactly.
    """
    c = Fraction(c)
    if c <= 1:
        raise ValueError("the growth target c must exceed 1")
    if length < 1:
        raise ValueError("schedule length must be at least 1")
    log_c = log_lower_bound(c)
    m: list[Fraction] = [Fraction(0)]
    gamma: list[Fraction] = [Fraction(1)]
    a: list[Fraction | None] = [None]
    for j in range(1, length + 1):
        m_prev = m[j - 1]
        m_prev2 = m[j - 2] if j >= 2 else Fraction(0)
        numer = m_prev - m_prev2 + 1
        bound = log_c / 2**j
        step = max(_ceil(numer / bound), 1)
        m_j = m_prev + step
        gamma_j = (gamma[j - 1] * (m_j - m_prev2) + 1) / (m_j - m_prev)
        m.append(m_j)
        gamma.append(gamma_j)
        a.append(numer / (m_j - m_prev))
    return GrowthSchedule(c=c, m=tuple(m), gamma=tuple(gamma), a=tuple(a))


@dataclass(frozen=True)
class ScheduleCertificate:
    """Proof data that sup_j gamma_j < c.

    ``gamma_tail_bound`` is a rational upper bound on gamma_J * c^(1/2^J),
    which dominates every gamma_j with j > J.
    """

    c: Fraction
    length: int
    gamma_last: Fraction
    gamma_tail_bound: Fraction

    def to_dict(self) -> dict:
        return {
            "c": str(self.c),
            "length": self.length,
            "gamma_last": str(self.gamma_last),
            "gamma_last_lt_c": True,
            "gamma_tail_bound": f"{float(self.gamma_tail_bound):.15g}",
            "tail_lt_c": True,
        }


def certify_sup(s: GrowthSchedule) -> ScheduleCertificate:
    """Certify sup_j gamma_j < c, raising CertificateError on failure.

    Checks exactly: the coupling recurrence at every index, strict growth of
    gamma, the per-step bound gamma_j <= gamma_{j-1} (1 + a_j), a_j within
    its certified budget, and gamma_J < c.  The infinite tail is covered by
    gamma_J * c^(1/2^J) < c with outward rounding.
    """
    J = s.length
    log_c = log_lower_bound(s.c)
    for j in range(1, J + 1):
        lhs = s.gamma[j] * (s.m[j] - s.m[j - 1])
        rhs = s.gamma[j - 1] * (s.m[j] - s.m_at(j - 2)) + 1
        if lhs != rhs:
            raise CertificateError(f"coupling recurrence fails at j={j}", j)
        if s.gamma[j] <= s.gamma[j - 1]:
            raise CertificateError(f"gamma not strictly increasing at j={j}", j)
        if s.gamma[j] > s.gamma[j - 1] * (1 + s.a[j]):
            raise CertificateError(f"per-step product bound fails at j={j}", j)
        if s.a[j] > log_c / 2**j:
            raise CertificateError(f"a_j budget exceeded at j={j}", j)
    if s.gamma[J] >= s.c:
        raise CertificateError(f"gamma_{J} = {s.gamma[J]} is not below c = {s.c}", J)
    tail = s.gamma[J] * root_upper_bound(s.c, J)
    if tail >= s.c:
        raise CertificateError(f"tail bound {float(tail)} is not below c = {s.c}", J)
    return ScheduleCertificate(c=s.c, length=J, gamma_last=s.gamma[J], gamma_tail_bound=tail)


def rho_j(u, j: int, s: GrowthSchedule):
    """The piecewise potential gamma_j * max(u - m_{j-1}, 0) - j.

    Exact when ``u`` is rational; matches rho_{j-1} at u = m_j by the
    coupling recurrence.
    """
    if j < 0 or j > s.length:
        raise IndexError(f"index {j} outside schedule of length {s.length}")
    m_prev = s.m_at(j - 1)
    if isinstance(u, (int, Fraction)):
        shifted = Fraction(u) - m_prev
        return s.gamma[j] * max(shifted, Fraction(0)) - j
    return float(s.gamma[j]) * max(u - float(m_prev), 0.0) - j


def envelope(u, s: GrowthSchedule):
    """The piecewise growth bound: gamma_1 * max(u, 0) for u <= m_1 and
    gamma_j * u on each band m_{j-1} < u <= m_j.  Stays below c * max(u, 0),
    strictly for u > 0."""
    exact = isinstance(u, (int, Fraction))
    uu = Fraction(u) if exact else u
    if uu > (s.m[s.length] if exact else float(s.m[s.length])):
        raise ValueError(
            f"u = {u} beyond schedule range m_{s.length} = {s.m[s.length]}; build a longer schedule"
        )
    if uu <= (s.m[1] if exact else float(s.m[1])):
        g = s.gamma[1] if exact else float(s.gamma[1])
        zero = Fraction(0) if exact else 0.0
        return g * max(uu, zero)
    for j in range(2, s.length + 1):
        if uu <= (s.m[j] if exact else float(s.m[j])):
            return (s.gamma[j] if exact else float(s.gamma[j])) * uu
    raise AssertionError("unreachable: range checked above")


@dataclass(frozen=True)
class DominationReport:
    checks: int
    boundary_equalities: int


def verify_rho_domination(s: GrowthSchedule, grid: Sequence) -> DominationReport:
    """Check rho_j(u) >= u for every grid value u >= m_j and every j.

    Exact for rational grid values; raises DominationError with the witness
    pair on violation.
    """
    checks = 0
    equalities = 0
    for j in range(s.length + 1):
        m_j = s.m[j]
        for u in grid:
            exact = isinstance(u, (int, Fraction))
            if (Fraction(u) if exact else u) < (m_j if exact else float(m_j)):
                continue
            value = rho_j(u, j, s)
            target = Fraction(u) if exact else u
            if value < target:
                raise DominationError(j, u)
            if value == target:
                equalities += 1
            checks += 1
    return DominationReport(checks=checks, boundary_equalities=equalities)
