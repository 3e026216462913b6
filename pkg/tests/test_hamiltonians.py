import cmath
import math

import numpy as np
import pytest

from sinekernel.errors import ValidityWindowError
from sinekernel.hamiltonians import (beta_estimate, expected_det_w, hamiltonian_at,
                                     solve_canonical)
from sinekernel.resolvent import sample


def test_small_x_limits():
    h = hamiltonian_at(1e-3)
    assert abs(h.q1_sq - 1.0) < 5e-3
    assert abs(h.q2_sq - 0.25) < 5e-3
    assert h.h2[0, 0] == pytest.approx(1.0 / (2 * math.pi), rel=5e-3)
    assert h.h2[1, 1] == pytest.approx(0.25 / (2 * math.pi), rel=5e-3)
    assert abs(h.q - 1.0) < 5e-3


def test_krein_routes_agree():
    h = hamiltonian_at(2.0)
    assert h.krein_deviation < 1e-4


def test_log_q1_sq_minus_pi_x_stabilizes():
    vals = [hamiltonian_at(x).beta_partial for x in (3.0, 4.0, 5.0)]
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0])


def test_h1_rank_one_hermitian():
    h = hamiltonian_at(1.5)
    h1 = h.h1
    assert np.max(np.abs(h1 - h1.conj().T)) < 1e-15
    assert np.trace(h1).real == pytest.approx(abs(h.q) ** 2 / math.pi, rel=1e-14)
    norm = np.linalg.norm(h1)
    assert abs(np.linalg.det(h1)) < 1e-12 * norm ** 2
    eig = np.linalg.eigvalsh(h1)
    assert eig.min() > -1e-15


def test_h2_exact_construction():
    h = hamiltonian_at(0.75)
    assert h.h2[0, 1] == 0.5 / (2.0 * math.pi)
    assert h.h2[1, 0] == h.h2[0, 1]
    assert h.q2_sq == 0.25 / h.q1_sq
    assert h.q1_sq * h.q2_sq == pytest.approx(0.25, rel=1e-14)


def test_q2_sq_asymptotic_trend():
    # log(q2^2) + pi x + beta should settle toward -2 log 2
    beta = beta_estimate(5.0).beta
    devs = []
    for x in (3.0, 4.0, 5.0):
        h = hamiltonian_at(x)
        devs.append(abs(math.log(h.q2_sq) + math.pi * x + beta + 2.0 * math.log(2.0)))
    assert devs[2] < devs[0]


def test_beta_integrand_limits():
    # shrinking interval: resolvent tends to the kernel diagonal, integrand to 2 - pi
    t = 1e-3
    integrand = 2.0 * sample(t / 2.0).q_anti - math.pi
    assert integrand == pytest.approx(2.0 - math.pi, abs=1e-2)
    # large t: integrand decays toward 0
    assert abs(2.0 * sample(2.4).q_anti - math.pi) < 1e-2


def test_beta_checkpoint_convergence():
    est = beta_estimate(5.0)
    partial = dict(est.checkpoints)
    assert abs(partial[4.0] - partial[3.0]) > abs(partial[5.0] - partial[4.0])
    assert est.beta == pytest.approx(est.integral + est.tail, rel=1e-15)
    # tail estimate keeps shrinking with the cutoff
    assert abs(beta_estimate(5.0).tail) < abs(beta_estimate(3.0).tail)


def test_canonical_system1_det_invariant():
    sol = solve_canonical(1, 2j, 1.0, steps=400)
    assert abs(sol.det_w - 1.0) < 1e-6
    assert sol.step_count == 400


def test_canonical_system2_det_invariant():
    sol = solve_canonical(2, 1.0, 1.0, steps=400)
    expected = expected_det_w(2, 1.0, 1.0)
    assert expected == pytest.approx(cmath.exp(1j / (2.0 * math.pi)), rel=1e-15)
    assert abs(sol.det_w - expected) < 1e-6


def test_rk4_step_halving():
    w400 = solve_canonical(1, 2j, 1.0, steps=400).w
    w800 = solve_canonical(1, 2j, 1.0, steps=800).w
    assert np.max(np.abs(w400 - w800)) < 1e-8
    w100 = solve_canonical(1, 2j, 1.0, steps=100).w
    w200 = solve_canonical(1, 2j, 1.0, steps=200).w
    ratio = np.max(np.abs(w100 - w200)) / np.max(np.abs(w200 - w400))
    assert 12.0 <= ratio <= 20.0


def test_system2_short_range_linearization():
    # over a short range W is I + i z x <J2 H2> to second order
    x_max = 0.02
    sol = solve_canonical(2, 1.0, x_max, steps=100)
    j2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    h2_zero = (1.0 / (2.0 * math.pi)) * np.array([[1.0, 0.5], [0.5, 0.25]])
    avg = 0.5 * (j2 @ h2_zero + j2 @ hamiltonian_at(x_max).h2)
    approx = np.eye(2) + 1j * 1.0 * x_max * avg
    assert np.max(np.abs(sol.w - approx)) < 2e-4


def test_solve_canonical_validation():
    with pytest.raises(ValueError):
        solve_canonical(3, 1.0, 1.0)
    with pytest.raises(ValueError):
        solve_canonical(1, 1.0, 1.0, steps=50)
    with pytest.raises(ValueError):
        solve_canonical(1, 0.5, 1.0)        # real z on the path
    solve_canonical(1, 2.0, 1.0, steps=100)  # real z off the path is fine
    with pytest.raises(ValidityWindowError):
        solve_canonical(2, 1.0, 6.0)


def test_hamiltonian_window():
    with pytest.raises(ValidityWindowError):
        hamiltonian_at(0.0)
    with pytest.raises(ValidityWindowError):
        hamiltonian_at(5.5)
    with pytest.raises(ValidityWindowError):
        beta_estimate(6.0)
