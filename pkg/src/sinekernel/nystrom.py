"""Nystrom discretization of I - lambda*K: log-determinants, solves, extension.

The kernel matrix is weighted symmetrically (sqrt(w) k sqrt(w)), which keeps
the discretized operator symmetric positive definite for lambda in (0, 1] and
turns the positivity of the LU pivots into a built-in sanity check.  Operators
are immutable after construction; the factorization is computed once under a
lock, after which concurrent solves are safe.

Everything is plain double precision.  For the unit sine kernel at lambda = 1
the smallest eigenvalue of the operator decays exponentially with the interval
half-length, which bounds the usable window (see resolvent.RESOLVENT_ZETA_MAX).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from .errors import OperatorNotInvertibleError, OperatorNotPositiveError
from .kernels import KernelFamily, KernelSpec, kernel_values
from .quadrature import QuadratureRule, gauss_legendre, map_to_interval

LOG_DET_CEILING = 1e-12


def default_order(interval: tuple[float, float]) -> int:
    """Quadrature order giving ~1e-12 spectral convergence for these kernels."""
    a, b = interval
    return max(48, int(math.ceil(20.0 * (b - a))))


class DiscretizedOperator:
    """Dense symmetric representation of I - lambda*K on a quadrature rule."""

    def __init__(self, kernel: KernelSpec, nodes, weights, interval, lam: float):
        lam = float(lam)
        if not 0.0 < lam <= 1.0:
            raise ValueError(f"lambda must be in (0, 1], got {lam}")
        nodes = np.asarray(nodes, dtype=float)
        weights = np.asarray(weights, dtype=float)
        self.kernel = kernel
        self.lam = lam
        self.interval = (float(interval[0]), float(interval[1]))
        self._nodes = nodes
        self._weights = weights
        self._sqrt_w = np.sqrt(weights)
        k = kernel_values(kernel, nodes[:, None], nodes[None, :])
        if not np.all(np.isfinite(k)):
            raise RuntimeError("kernel evaluation produced non-finite values")
        self.matrix = np.eye(nodes.size) - lam * (self._sqrt_w[:, None] * k * self._sqrt_w[None, :])
        self._lu = None
        self._lock = threading.Lock()

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def order(self) -> int:
        return self._nodes.size

    @property
    def factorization(self):
        """Pivoted LU of ``matrix``, computed on first use."""
        if self._lu is None:
            with self._lock:
                if self._lu is None:
                    try:
                        self._lu = lu_factor(self.matrix)
                    except LinAlgError as exc:
                        raise OperatorNotInvertibleError(str(exc)) from exc
        return self._lu

    def kernel_at(self, x, y):
        return kernel_values(self.kernel, x, y)


@dataclass(frozen=True)
class ResolventColumn:
    """Resolvent kernel values Q(., y) at the rule nodes of one operator."""

    y: float
    node_values: np.ndarray
    operator: DiscretizedOperator


def discretize(kernel: KernelSpec, interval: tuple[float, float], order: int | None, lam: float) -> DiscretizedOperator:
    """Discretize I - lambda*K on ``interval`` with a Gauss-Legendre rule."""
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    if order is None:
        order = default_order((a, b))
    if order < 4:
        raise ValueError(f"order must be >= 4, got {order}")
    rule = map_to_interval(gauss_legendre(order), a, b)
    return DiscretizedOperator(kernel, rule.nodes, rule.weights, (a, b), lam)


def log_det(op: DiscretizedOperator) -> float:
    """log det(I - lambda*K) as the sum of log LU pivots.

    All pivots must be positive and the permutation even (determinant sign +1);
    anything else signals lambda outside the valid range or severe
    ill-conditioning and raises OperatorNotPositiveError.
    """
    lu, piv = op.factorization
    diag = np.diag(lu)
    if np.any(diag <= 0.0):
        raise OperatorNotPositiveError("operator not positive: non-positive LU pivot")
    if np.count_nonzero(piv != np.arange(piv.size)) % 2 != 0:
        raise OperatorNotPositiveError("operator not positive: negative determinant sign")
    value = float(np.sum(np.log(diag)))
    if not value <= LOG_DET_CEILING:
        raise OperatorNotPositiveError(f"log-determinant {value} above round-off ceiling")
    return value


def solve(op: DiscretizedOperator, rhs) -> np.ndarray:
    """Solve (I - lambda*K) f = rhs for node values f (rhs sampled at the nodes)."""
    rhs = np.asarray(rhs)
    if rhs.shape != (op.order,):
        raise ValueError(f"rhs must have shape ({op.order},), got {rhs.shape}")
    if not np.all(np.isfinite(rhs)):
        raise ValueError("rhs must be finite at all nodes")
    lu = op.factorization
    b = op._sqrt_w * rhs
    if np.iscomplexobj(rhs):
        u = lu_solve(lu, b.real) + 1j * lu_solve(lu, b.imag)
    else:
        u = lu_solve(lu, b)
    return u / op._sqrt_w


def nystrom_extend(op: DiscretizedOperator, node_solution, rhs_fn, x: float):
    """Evaluate the continuous solution at x via the integral equation itself.

    f(x) = rhs(x) + lambda * sum_j w_j k(x, t_j) f(t_j); reproduces the node
    solution when x is one of the nodes.
    """
    a, b = op.interval
    x = float(x)
    if not a <= x <= b:
        raise ValueError(f"x={x} outside closed interval [{a}, {b}]")
    kx = op.kernel_at(x, op.nodes)
    return rhs_fn(x) + op.lam * np.sum(op.weights * kx * np.asarray(node_solution))


def resolvent_column(op: DiscretizedOperator, y: float) -> ResolventColumn:
    """Solve for the resolvent kernel column Q(., y) at the rule nodes."""
    rhs = op.lam * op.kernel_at(op.nodes, float(y))
    return ResolventColumn(float(y), solve(op, rhs), op)


def resolvent_value(op: DiscretizedOperator, x: float, y: float) -> float:
    """Resolvent kernel Q(x, y): symmetric in (x, y), even under (x, y) -> (-x, -y)."""
    col = resolvent_column(op, y)
    return float(nystrom_extend(op, col.node_values, lambda t: op.lam * op.kernel_at(t, col.y), x))


def projector_block_residual(zeta: float, lam: float, order: int | None = None) -> float:
    """Max-norm residual of the discretized even/odd resolvent split identity.

    On the symmetric rule the parity projectors (I +/- J)/2 are realized
    exactly by node reflection, so (I - lam K_pm)^{-1} K_pm must equal
    (I +/- J)/2 (I - lam K)^{-1} K at the matrix level.  Returns the worse
    of the two signs.
    """
    if order is None:
        order = default_order((-1.0, 1.0))
    rule = gauss_legendre(order)
    x, w = rule.nodes, rule.weights
    n = order
    full = kernel_values(KernelSpec(KernelFamily.SCALED, zeta), x[:, None], x[None, :]) * w[None, :]
    eye = np.eye(n)
    flip = eye[::-1]
    resolvent_full = np.linalg.solve(eye - lam * full, full)
    worst = 0.0
    for family, sign in ((KernelFamily.SYMMETRIZED_PLUS, 1.0), (KernelFamily.SYMMETRIZED_MINUS, -1.0)):
        split = kernel_values(KernelSpec(family, zeta), x[:, None], x[None, :]) * w[None, :]
        lhs = np.linalg.solve(eye - lam * split, split)
        rhs = 0.5 * (eye + sign * flip) @ resolvent_full
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst
