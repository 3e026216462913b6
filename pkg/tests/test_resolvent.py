import cmath
import math

import numpy as np
import pytest
from scipy.special import sici

from sinekernel.errors import ValidityWindowError
from sinekernel.resolvent import (RESOLVENT_ZETA_MAX, jmms_residuals, q1_at, q_at,
                                  quadratic_forms, sample, sinc_integral,
                                  sinc_integral_complement, verify_operator_identities)


@pytest.mark.parametrize("zeta", [0.5, 1.0, 2.0])
def test_sample_invariants(zeta):
    s = sample(zeta)
    assert s.u == pytest.approx(2.0 * math.pi * zeta, rel=1e-15)
    assert s.q_diag > 0.0
    assert s.q_anti > 0.0
    assert abs(abs(s.q_2zeta) - abs(s.r)) < 1e-8
    r_sq = s.r * s.r
    assert abs(2.0 * math.pi * zeta * s.q_anti - r_sq.imag) < 1e-7


def test_r_tends_to_one_for_tiny_interval():
    s = sample(1e-4)
    assert abs(s.r - 1.0) < 1e-3


def test_cross_path_identity_at_2():
    s = sample(2.0)
    assert abs(s.q_2zeta - cmath.exp(1j * 2.0 * math.pi) * s.r) < 1e-7


def test_abs_r_squared_against_truncated_expansion():
    # u = 4 pi; leading terms with the built-in expansion coefficients
    s = sample(2.0)
    u = 4.0 * math.pi
    series = math.pi * (u / 2.0 + 2 * (-0.25) / u ** 3 + 4 * (-2.5) / u ** 5)
    assert abs(abs(s.r) ** 2 - series) / series < 1e-3


def test_q_diag_against_truncated_expansion():
    s = sample(2.0)
    u = 4.0 * math.pi
    series = math.pi * (u / 4.0 + 1.0 / (4 * u) + 0.25 / u ** 3 + 2.5 / u ** 5)
    assert abs(s.q_diag - series) / series < 1e-3


def test_q_anti_deviation_shrinks_with_u():
    # approach to the limit pi/2 has no 1/u term, so the deviation is monotone
    devs = []
    for u in np.linspace(8.0, 15.5, 7):
        devs.append(abs(sample(float(u) / (2.0 * math.pi)).q_anti / math.pi - 0.5))
    assert all(b < a for a, b in zip(devs, devs[1:]))


@pytest.mark.parametrize("zeta", [0.25, 1.0])
def test_jmms_residuals_small(zeta):
    res = jmms_residuals(zeta, 1e-3)
    for (label, lhs, rhs) in res.relations:
        assert abs(lhs - rhs) < 1e-5 * (1.0 + abs(lhs)), label


def test_jmms_algebraic_relation_tight():
    res = jmms_residuals(1.0, 1e-3)
    label, lhs, rhs = res.relations[1]
    assert "2*pi*zeta" in label
    assert abs(lhs - rhs) < 1e-7


def test_jmms_step_validation():
    with pytest.raises(ValueError):
        jmms_residuals(1.0, -1e-3)
    with pytest.raises(ValueError):
        jmms_residuals(0.25, 0.5)
    with pytest.raises(ValidityWindowError):
        jmms_residuals(RESOLVENT_ZETA_MAX, 1e-3)


def test_quadratic_forms_small_interval():
    zeta = 1e-3
    qf = quadratic_forms(zeta)
    assert abs(qf.exp_form - zeta) / zeta < 2e-3
    assert abs(qf.one_form - zeta) / zeta < 2e-3


def test_exp_form_growth_at_2():
    qf = quadratic_forms(2.0)
    target = math.pi ** 2 * 4.0 / 4.0
    assert abs(qf.exp_form - target) / target < 0.10


def test_quadratic_form_routes_agree():
    qf = quadratic_forms(1.5)
    assert qf.exp_form_deviation < 1e-10
    assert qf.one_form_deviation < 1e-10


def test_one_form_log_converges():
    vals = [math.log(quadratic_forms(z).one_form) - math.pi * z for z in (1.5, 2.0, 2.5)]
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0])


def test_forms_positive_and_increasing():
    forms = [quadratic_forms(z) for z in (0.5, 1.0, 1.5, 2.0)]
    exps = [f.exp_form for f in forms]
    ones = [f.one_form for f in forms]
    assert all(v > 0 for v in exps + ones)
    assert all(b > a for a, b in zip(exps, exps[1:]))
    assert all(b > a for a, b in zip(ones, ones[1:]))


def test_operator_identities_report():
    rep = verify_operator_identities(0.5)
    assert rep.passed
    by_check = {c.params["check"]: c for c in rep.cases}
    assert by_check["multiplication-commutator"].lhs < 1e-6
    assert by_check["integration-commutator"].lhs < 1e-6
    assert by_check["multiplication-rhs-rank<=2"].lhs < 1e-10
    assert by_check["integration-rhs-rank<=2"].lhs < 1e-10


def test_sinc_integral_complement_at_zero():
    assert sinc_integral_complement(0.0) == 0.5


@pytest.mark.parametrize("x", [0.3, 1.0, 2.7])
def test_sinc_integral_against_scipy(x):
    si, _ = sici(math.pi * x)
    assert sinc_integral(x) == pytest.approx(si / math.pi, rel=1e-12)
    assert sinc_integral_complement(x) == pytest.approx(0.5 - si / math.pi, rel=1e-12)


def test_endpoint_solvers_window():
    with pytest.raises(ValidityWindowError):
        sample(RESOLVENT_ZETA_MAX + 0.1)
    with pytest.raises(ValidityWindowError):
        sample(0.0)
    with pytest.raises(ValidityWindowError):
        q_at(2.0 * RESOLVENT_ZETA_MAX + 0.1)
    with pytest.raises(ValidityWindowError):
        q1_at(0.0)


def test_sample_is_cached():
    assert sample(1.25) is sample(1.25)
