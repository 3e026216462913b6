import math
from fractions import Fraction

import pytest

from sinekernel.asymptotics import (BUILTIN_C, CoefficientTable, Quantity,
                                    derive_a_coefficients, eval_series, evaluate,
                                    match_report)
from sinekernel.resolvent import richardson_derivative


def test_builtin_c_values():
    assert BUILTIN_C == (Fraction(-1, 4), Fraction(-5, 2))


def test_a_recursion_exact_values():
    a = derive_a_coefficients(BUILTIN_C, 4)
    assert a == [Fraction(1, 2), Fraction(-1, 4), Fraction(-13, 16), Fraction(-413, 32)]


def test_a_recursion_reproducible():
    a1 = derive_a_coefficients(BUILTIN_C, 4)
    a2 = derive_a_coefficients(BUILTIN_C, 4)
    assert a1 == a2
    assert all(isinstance(v, Fraction) for v in a1)


def test_a_recursion_needs_enough_c():
    with pytest.raises(ValueError):
        derive_a_coefficients(BUILTIN_C, 5)
    with pytest.raises(ValueError):
        derive_a_coefficients(BUILTIN_C, 0)


def test_square_of_a_series_reproduces_defining_expansion():
    # (sum a_{2n} v^n)^2 truncated must equal 1/4 - v/4 + sum (2n+1) c_{2n} v^{n+1}
    table = CoefficientTable.default()
    a = table.a
    prod = [Fraction(0)] * 4
    for m in range(4):
        for k in range(m + 1):
            if k < len(a) and m - k < len(a):
                prod[m] += a[k] * a[m - k]
    assert prod[0] == Fraction(1, 4)
    assert prod[1] == Fraction(-1, 4)
    assert prod[2] == 3 * table.c[0]
    assert prod[3] == 5 * table.c[1]


def test_q_anti_leading_term():
    assert eval_series(Quantity.Q_ANTI, 1e6, 0) == pytest.approx(math.pi / 2, rel=1e-15)


def test_q_diag_partial_sum_arithmetic():
    got = eval_series(Quantity.Q_DIAG, 10.0, 2)
    expected = math.pi * (2.5 + 0.025 + 0.00025 + 2.5 / 10 ** 5)
    assert got == pytest.approx(expected, rel=1e-15)


def test_truncation_difference_equals_dropped_term():
    table = CoefficientTable.default()
    u = 9.0
    for n in (1, 2, 3):
        diff = eval_series(Quantity.Q_ANTI, u, n) - eval_series(Quantity.Q_ANTI, u, n - 1)
        term = math.pi * float(table.a[n]) / u ** (2 * n)
        assert diff == pytest.approx(term, rel=1e-12)
    for n in (1, 2):
        diff = eval_series(Quantity.Q_DIAG, u, n) - eval_series(Quantity.Q_DIAG, u, n - 1)
        term = -math.pi * float(table.c[n - 1]) / u ** (2 * n + 1)
        assert diff == pytest.approx(term, rel=1e-12)


def test_r_sq_and_q_sq_structure():
    u = 11.0
    r_sq = eval_series(Quantity.R_SQ, u, 3)
    q_sq = eval_series(Quantity.Q_SQ, u, 3)
    assert isinstance(r_sq, complex) and isinstance(q_sq, complex)
    # leading imaginary part is pi a0 u
    assert r_sq.imag == pytest.approx(math.pi * u / 2, rel=2e-3)
    # the oscillatory factor e^{iu} carries r_sq into q_sq
    assert q_sq == pytest.approx(complex(math.cos(u), math.sin(u)) * r_sq, rel=1e-15)


def test_abs_of_r_sq_series_consistency():
    # | |r^2 series| - |r|^2 series | / value scales like u^-(2N+2)
    n = 2
    rels = {}
    for u in (10.0, 40.0):
        diff = abs(abs(eval_series(Quantity.R_SQ, u, n)) - eval_series(Quantity.ABS_R_SQ, u, n))
        rels[u] = diff / eval_series(Quantity.ABS_R_SQ, u, n)
    scaled_10 = rels[10.0] * 10.0 ** (2 * n + 2)
    scaled_40 = rels[40.0] * 40.0 ** (2 * n + 2)
    assert scaled_10 == pytest.approx(scaled_40, rel=0.05)
    assert scaled_10 < 30.0


def test_derivative_consistency_with_real_part():
    # d/dzeta [zeta * q_anti series] equals the real part of the r^2 series
    n = 3
    for u in (8.0, 12.0):
        zeta = u / (2.0 * math.pi)
        deriv = richardson_derivative(
            lambda t: t * eval_series(Quantity.Q_ANTI, 2.0 * math.pi * t, n), zeta, 1e-4)
        assert deriv == pytest.approx(eval_series(Quantity.R_SQ, u, n).real, abs=1e-10)


def test_eval_series_validation():
    with pytest.raises(ValueError):
        eval_series(Quantity.Q_DIAG, -1.0, 1)
    with pytest.raises(ValueError):
        eval_series(Quantity.Q_DIAG, 10.0, 3)   # only c2, c4 built in
    with pytest.raises(ValueError):
        eval_series(Quantity.Q_ANTI, 10.0, 4)   # a-table stops at a6
    with pytest.raises(ValueError):
        eval_series(Quantity.Q_ANTI, 10.0, -1)


def test_extra_c_extends_the_tables():
    table = CoefficientTable.default(extra_c=[Fraction(-61, 2)])
    assert len(table.a) == 5
    val = eval_series(Quantity.Q_DIAG, 10.0, 3, table)
    assert val == pytest.approx(eval_series(Quantity.Q_DIAG, 10.0, 2)
                                - math.pi * float(table.c[2]) / 10.0 ** 7, rel=1e-15)


def test_evaluate_wrapper():
    ev = evaluate(Quantity.Q_ANTI, 12.0, 2)
    assert ev.u == 12.0 and ev.truncation == 2
    assert ev.value == eval_series(Quantity.Q_ANTI, 12.0, 2)


def test_match_report_decreasing_errors():
    rep = match_report(Quantity.Q_DIAG, (8.0, 10.0, 12.0, 15.0), 2)
    assert rep.errors_decreasing
    assert rep.rows[-1].rel_err < 1e-3
    assert [row.u for row in rep.rows] == [8.0, 10.0, 12.0, 15.0]
