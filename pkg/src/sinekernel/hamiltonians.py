"""Canonical-system Hamiltonians built from the endpoint solver data.

Two 2x2 Hamiltonians are assembled at each x:

  * a rank-one Hermitian matrix from the complex endpoint function q(x)
    (trace |q|^2 / pi, determinant 0), driving the system with the moving
    real-axis singularity, and
  * a symmetric matrix with diagonal (q1^2, q2^2)/(2 pi) and off-diagonal
    exactly 1/(4 pi), with q1^2 * q2^2 = 1/4 by construction, driving the
    spectral-parameter-linear system.

q1^2 is produced by the exponential (Krein-type) formula
q1^2(x) = exp[2 * integral_0^x Q_{t/2}(-t/2, t/2) dt], which needs only the
scalar q_anti sweep; the direct endpoint solve is computed alongside and the
relative deviation of the two routes is recorded on the sample.  The constant
beta = lim_{x->inf} [log q1^2(x) - pi x] is estimated from the integral with a
series tail bound and checkpoint convergence evidence.

Both canonical systems are integrated with classical RK4 over Hamiltonian
samples precomputed on a uniform grid (spacing 0.02) with linear interpolation
in between.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .asymptotics import CoefficientTable
from .errors import ValidityWindowError
from .quadrature import composite_gauss_legendre
from .resolvent import PANEL_POINTS, PANEL_WIDTH, q1_at, q_at, sample

X_WINDOW_MAX = 5.0
GRID_SPACING = 0.02

J1 = np.diag([1.0, -1.0]).astype(complex)
J2 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
J1.setflags(write=False)
J2.setflags(write=False)


@dataclass(frozen=True)
class HamiltonianSample:
    x: float
    h1: np.ndarray          # rank-one Hermitian, trace |q|^2 / pi
    h2: np.ndarray          # symmetric, off-diagonal exactly 1/(4 pi)
    q: complex
    q1_sq: float            # exponential-formula route (canonical value)
    q2_sq: float            # 1 / (4 q1_sq) by construction
    beta_partial: float     # log(q1_sq) - pi x, the running beta integral
    q1_sq_direct: float     # squared endpoint solve, recorded for cross-checking

    @property
    def krein_deviation(self) -> float:
        """Relative disagreement of the two q1^2 routes."""
        return abs(self.q1_sq - self.q1_sq_direct) / abs(self.q1_sq)


@dataclass(frozen=True)
class CanonicalSolution:
    system_id: int
    z: complex
    x_max: float
    w: np.ndarray           # fundamental matrix W(x_max, z), W(0, z) = I
    step_count: int

    @property
    def det_w(self) -> complex:
        return complex(np.linalg.det(self.w))


@dataclass(frozen=True)
class BetaEstimate:
    beta: float                                   # integral + series tail
    integral: float                               # finite part up to x_max
    tail: float                                   # estimated remainder
    checkpoints: tuple[tuple[float, float], ...]  # (x, partial value) pairs


@lru_cache(maxsize=None)
def _krein_log(x: float, order: int | None) -> float:
    """2 * integral_0^x Q_{t/2}(-t/2, t/2) dt by Gauss-Legendre panels."""
    panel = composite_gauss_legendre(0.0, x, PANEL_POINTS, PANEL_WIDTH)
    acc = 0.0
    for t, wt in zip(panel.nodes, panel.weights):
        acc += wt * sample(t / 2.0, order).q_anti
    return 2.0 * acc


def _build_sample(x: float, q: complex, q1_sq: float, q1_sq_direct: float) -> HamiltonianSample:
    q2_sq = 0.25 / q1_sq
    qq = q * q
    h1 = (1.0 / (2.0 * math.pi)) * np.array(
        [[abs(q) ** 2, qq], [np.conj(qq), abs(q) ** 2]], dtype=complex)
    h2 = (1.0 / (2.0 * math.pi)) * np.array(
        [[q1_sq, 0.5], [0.5, q2_sq]], dtype=float)
    h1.setflags(write=False)
    h2.setflags(write=False)
    return HamiltonianSample(x=x, h1=h1, h2=h2, q=q, q1_sq=q1_sq, q2_sq=q2_sq,
                             beta_partial=math.log(q1_sq) - math.pi * x,
                             q1_sq_direct=q1_sq_direct)


def _limit_sample_at_zero() -> HamiltonianSample:
    # interval shrinks to a point: the inverse operator tends to the identity
    return _build_sample(0.0, 1.0 + 0.0j, 1.0, 1.0)


def hamiltonian_at(x: float, order: int | None = None) -> HamiltonianSample:
    """Hamiltonian data at x, with both q1^2 routes evaluated and compared."""
    x = float(x)
    if not 0.0 < x <= X_WINDOW_MAX:
        raise ValidityWindowError(f"x={x} outside the Hamiltonian window (0, {X_WINDOW_MAX}]")
    q = q_at(x, order)
    q1_sq = math.exp(_krein_log(x, order))
    q1_sq_direct = q1_at(x, order) ** 2
    return _build_sample(x, q, q1_sq, q1_sq_direct)


def beta_estimate(x_max: float, order: int | None = None,
                  table: CoefficientTable | None = None) -> BetaEstimate:
    """Estimate beta = lim [log q1^2(x) - pi x] with a series tail bound.

    The integrand 2 Q_{t/2}(-t/2, t/2) - pi decays like 1/t^2, so the finite
    integral converges; the tail from x_max to infinity is estimated from the
    a-coefficient series.  Checkpoint partial values exhibit the convergence.
    """
    x_max = float(x_max)
    if not 0.0 < x_max <= X_WINDOW_MAX:
        raise ValidityWindowError(f"x_max={x_max} outside (0, {X_WINDOW_MAX}]")
    if table is None:
        table = CoefficientTable.default()
    integral = _krein_log(x_max, order) - math.pi * x_max
    a = [float(v) for v in table.a]
    # integrand tail 2 pi sum_{n>=1} a_{2n} / (pi t)^{2n}, integrated from x_max
    tail = 0.0
    for n in range(1, len(a)):
        tail += 2.0 * math.pi * a[n] / ((2 * n - 1) * math.pi ** (2 * n) * x_max ** (2 * n - 1))
    checkpoints = []
    x_grid = [float(k) for k in range(1, int(math.floor(x_max)) + 1)]
    if not x_grid or x_grid[-1] != x_max:
        x_grid.append(x_max)
    for xc in x_grid:
        checkpoints.append((xc, _krein_log(xc, order) - math.pi * xc))
    return BetaEstimate(beta=integral + tail, integral=integral, tail=tail,
                        checkpoints=tuple(checkpoints))


def _hamiltonian_grid(x_max: float, order: int | None):
    m = max(1, int(math.ceil(x_max / GRID_SPACING - 1e-9)))
    xs = np.linspace(0.0, x_max, m + 1)
    samples = [_limit_sample_at_zero()]
    samples += [hamiltonian_at(float(t), order) for t in xs[1:]]
    return xs, samples


def solve_canonical(system_id: int, z: complex, x_max: float,
                    steps: int = 400, order: int | None = None) -> CanonicalSolution:
    """Integrate one of the two canonical 2x2 systems from 0 to x_max.

    System 1: dW/dx = -i J1 H1(x) / (x - z) W, so z must stay off [0, x_max].
    System 2: dW/dx = i z J2 H2(x) W.
    Classical RK4 over the precomputed Hamiltonian grid, W(0, z) = I.
    """
    if system_id not in (1, 2):
        raise ValueError(f"system_id must be 1 or 2, got {system_id}")
    if steps < 100:
        raise ValueError(f"steps must be >= 100, got {steps}")
    x_max = float(x_max)
    if not 0.0 < x_max <= X_WINDOW_MAX:
        raise ValidityWindowError(f"x_max={x_max} outside (0, {X_WINDOW_MAX}]")
    z = complex(z)
    if system_id == 1 and z.imag == 0.0 and 0.0 <= z.real <= x_max:
        raise ValueError(f"z={z} lies on the integration path [0, {x_max}]")

    xs, samples = _hamiltonian_grid(x_max, order)
    spacing = xs[1] - xs[0]
    hams = [s.h1 for s in samples] if system_id == 1 else [s.h2.astype(complex) for s in samples]

    def coefficient(x: float) -> np.ndarray:
        i = min(int(x / spacing), len(hams) - 2)
        theta = (x - xs[i]) / spacing
        return (1.0 - theta) * hams[i] + theta * hams[i + 1]

    if system_id == 1:
        def rhs(x, w):
            return (-1j / (x - z)) * (J1 @ coefficient(x)) @ w
    else:
        def rhs(x, w):
            return (1j * z) * (J2 @ coefficient(x)) @ w

    h = x_max / steps
    w = np.eye(2, dtype=complex)
    x = 0.0
    for _ in range(steps):
        k1 = rhs(x, w)
        k2 = rhs(x + 0.5 * h, w + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h, w + 0.5 * h * k2)
        k4 = rhs(x + h, w + h * k3)
        w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x += h
    w.setflags(write=False)
    return CanonicalSolution(system_id=system_id, z=z, x_max=x_max, w=w, step_count=steps)


def expected_det_w(system_id: int, z: complex, x_max: float) -> complex:
    """Liouville value of det W: 1 for system 1, e^{i z x / (2 pi)} for system 2."""
    if system_id == 1:
        return 1.0 + 0.0j
    return cmath.exp(1j * complex(z) * x_max / (2.0 * math.pi))
