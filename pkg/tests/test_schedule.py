from fractions import Fraction

import pytest

from lelong.schedule import (
    CertificateError,
    DominationError,
    build_schedule,
    certify_sup,
    envelope,
    log_lower_bound,
    rho_j,
    root_upper_bound,
    verify_rho_domination,
)


def test_build_target_two_first_steps():
    s = build_schedule(2, 2)
    assert s.m == (Fraction(0), Fraction(3), Fraction(27))
    assert s.gamma == (Fraction(1), Fraction(4, 3), Fraction(37, 24))
    assert s.a[1] == Fraction(1, 3)
    assert s.a[2] == Fraction(1, 6)


def test_base_case_conventions():
    for c in (Fraction(11, 10), Fraction(2), Fraction(10)):
        s = build_schedule(c, 3)
        assert s.gamma[0] == 1
        assert s.m[0] == 0
        assert s.m_at(-1) == 0


def test_x_values_target_two():
    s = build_schedule(2, 2)
    assert s.x_at(0) == 0
    assert s.x_at(1) == 0
    assert s.x_at(2) == 8


def test_coupling_recurrence_exact():
    for c in (Fraction(11, 10), Fraction(2), Fraction(10)):
        s = build_schedule(c, 12)
        for j in range(1, 13):
            lhs = s.gamma[j] * (s.m[j] - s.m[j - 1])
            rhs = s.gamma[j - 1] * (s.m[j] - s.m_at(j - 2)) + 1
            assert lhs == rhs


def test_gamma_strictly_increasing_and_above_one():
    s = build_schedule(Fraction(3, 2), 10)
    for j in range(1, 11):
        assert s.gamma[j] > s.gamma[j - 1]
        assert s.gamma[j] > 1


def test_x_nondecreasing():
    for c in (Fraction(11, 10), 2, 10):
        s = build_schedule(c, 10)
        xs = [s.x_at(j) for j in range(11)]
        assert xs[0] == 0
        assert all(b >= a for a, b in zip(xs, xs[1:]))


def test_certificate_target_two():
    s = build_schedule(2, 2)
    cert = certify_sup(s)
    assert cert.gamma_last == Fraction(37, 24)
    assert cert.gamma_last < 2
    # per-step product bound holds with slack: gamma_1 (1 + a_2) >= gamma_2
    assert s.gamma[1] * (1 + s.a[2]) == Fraction(14, 9)
    assert Fraction(14, 9) >= Fraction(37, 24)


def test_certificate_close_target_long_tail():
    s = build_schedule(Fraction(11, 10), 20)
    cert = certify_sup(s)
    assert cert.gamma_tail_bound < Fraction(11, 10)


def test_certificate_degenerate_length_one():
    s = build_schedule(Fraction(11, 10), 1)
    assert s.gamma[1] == 1 + Fraction(1, s.m[1])
    certify_sup(s)


def test_certificate_rejects_tampering():
    s = build_schedule(2, 3)
    bad = type(s)(c=s.c, m=s.m, gamma=s.gamma[:-1] + (Fraction(5),), a=s.a)
    with pytest.raises(CertificateError):
        certify_sup(bad)


def test_rho_continuity_at_band_edges():
    for c in (Fraction(11, 10), 2, 10):
        s = build_schedule(c, 8)
        for j in range(1, 9):
            assert rho_j(s.m[j], j, s) == rho_j(s.m[j], j - 1, s)


def test_rho_clamps_below_band():
    s = build_schedule(2, 2)
    assert rho_j(Fraction(1), 2, s) == -2
    assert rho_j(s.m[1], 1, s) == 3
    assert rho_j(s.m[1], 0, s) == 3


def test_envelope_pieces():
    s = build_schedule(2, 2)
    assert envelope(Fraction(-4), s) == 0
    assert envelope(Fraction(2), s) == Fraction(8, 3)
    assert envelope(Fraction(10), s) == Fraction(370, 24)
    assert envelope(Fraction(10), s) == s.gamma[2] * 10


def test_envelope_below_target_growth():
    s = build_schedule(2, 6)
    for u in (Fraction(-3), Fraction(0), Fraction(1), Fraction(2), Fraction(50), s.m[6]):
        bound = s.c * max(u, Fraction(0))
        assert envelope(u, s) <= bound
        if u > 0:
            assert envelope(u, s) < bound


def test_envelope_out_of_range():
    s = build_schedule(2, 2)
    with pytest.raises(ValueError):
        envelope(s.m[2] + 1, s)


def test_domination_exact_on_grid():
    s = build_schedule(2, 2)
    grid = [Fraction(k) for k in range(-5, 40)] + [s.m[1], s.m[2]]
    report = verify_rho_domination(s, grid)
    assert report.checks > 0
    # boundary case: rho_1(m_1) = m_1 since x_1 = 0
    assert rho_j(s.m[1], 1, s) == s.m[1]
    assert rho_j(s.m[2], 2, s) == Fraction(35)
    assert Fraction(35) >= s.m[2]


def test_domination_detects_violation():
    s = build_schedule(2, 2)
    bad = type(s)(c=s.c, m=s.m, gamma=(Fraction(1), Fraction(1, 2), Fraction(1, 2)), a=s.a)
    with pytest.raises(DominationError) as err:
        verify_rho_domination(bad, [Fraction(10)])
    assert err.value.witness[1] == Fraction(10)


def test_log_lower_bound_is_lower_and_tight():
    import math

    for c in (Fraction(11, 10), Fraction(2), Fraction(10)):
        lo = log_lower_bound(c)
        assert float(lo) <= math.log(float(c))
        assert math.log(float(c)) - float(lo) < 1e-12


def test_root_upper_bound_is_upper():
    import math

    for c, j in ((Fraction(2), 5), (Fraction(11, 10), 20), (Fraction(10), 3)):
        up = root_upper_bound(c, j)
        assert float(up) >= float(c) ** (2.0**-j) * (1 - 1e-12)


def test_build_rejects_bad_target():
    with pytest.raises(ValueError):
        build_schedule(1, 3)
    with pytest.raises(ValueError):
        build_schedule(Fraction(9, 10), 3)
