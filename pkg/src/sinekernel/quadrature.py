"""Gauss-Legendre quadrature rules and interval transforms.

Every discretization and every scalar integral in the package runs through the
rules produced here.  Nodes are computed by Newton iteration on the Legendre
polynomials (asymptotic cosine initial guesses, residual pushed to 1e-15), so
the rules are deterministic, dependency-free and spectrally accurate.  Rules
are cached per order; all values are immutable after construction and safe to
share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 2000
NEWTON_TOL = 1e-15


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights of a quadrature rule on an open interval.

    Invariants: nodes strictly increasing and interior to ``interval``;
    weights positive with sum equal to the interval length.
    """

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", _readonly(self.nodes))
        object.__setattr__(self, "weights", _readonly(self.weights))
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"invalid interval {self.interval!r}")
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if self.nodes.size == 0:
            raise ValueError("empty rule")
        if np.any(self.weights <= 0.0):
            raise ValueError("weights must be positive")
        if np.any(np.diff(self.nodes) <= 0.0) or self.nodes[0] <= a or self.nodes[-1] >= b:
            raise ValueError("nodes must be strictly increasing inside the interval")

    @property
    def order(self) -> int:
        return int(self.nodes.size)


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate P_n and P_n' by the three-term recurrence (vectorized in x)."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=None)
def _gauss_legendre_cached(order: int) -> QuadratureRule:
    if order == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]), (-1.0, 1.0))
    k = np.arange(1, order + 1, dtype=float)
    x = np.cos(np.pi * (k - 0.25) / (order + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(order, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < NEWTON_TOL:
            break
    x = np.sort(x)
    # enforce exact symmetry about 0 (needed for bit-exact node reflection)
    x = 0.5 * (x - x[::-1])
    if order % 2 == 1:
        x[order // 2] = 0.0
    _, dp = _legendre_and_derivative(order, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(x, w, (-1.0, 1.0))


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order on (-1, 1).

    Exact for polynomials of degree <= 2*order - 1; nodes symmetric about 0.
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise ValueError(f"order must be an integer, got {order!r}")
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")
    return _gauss_legendre_cached(int(order))


def map_to_interval(rule: QuadratureRule, a: float, b: float) -> QuadratureRule:
    """Affine image of a rule on (a, b); weights rescale so their sum is b - a."""
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("interval endpoints must be finite")
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    ra, rb = rule.interval
    scale = (b - a) / (rb - ra)
    nodes = 0.5 * (a + b) + scale * (rule.nodes - 0.5 * (ra + rb))
    return QuadratureRule(nodes, rule.weights * scale, (a, b))


def composite_gauss_legendre(a: float, b: float, points: int, max_panel_width: float) -> QuadratureRule:
    """Uniform Gauss-Legendre panels over (a, b), each of width <= max_panel_width."""
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if max_panel_width <= 0:
        raise ValueError("max_panel_width must be positive")
    n_panels = max(1, int(math.ceil((b - a) / max_panel_width - 1e-12)))
    edges = np.linspace(a, b, n_panels + 1)
    base = gauss_legendre(points)
    nodes = []
    weights = []
    for i in range(n_panels):
        panel = map_to_interval(base, edges[i], edges[i + 1])
        nodes.append(panel.nodes)
        weights.append(panel.weights)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights), (a, b))


def clenshaw_curtis(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Clenshaw-Curtis nodes/weights on [-1, 1] (cross-check rule only).

    Includes the endpoints, so it is returned as a plain array pair rather
    than a QuadratureRule.  Used solely as an independent quadrature oracle
    against the Gauss-Legendre discretizations.
    """
    if order < 2:
        raise ValueError("clenshaw_curtis needs order >= 2")
    n = order - 1
    k = np.arange(order)
    theta = np.pi * k / n
    j = np.arange(1, n // 2 + 1)
    b = np.where(2 * j == n, 1.0, 2.0)
    # w_k = (c_k / n) * (1 - sum_j b_j cos(2 j theta_k) / (4 j^2 - 1))
    cosjk = np.cos(2.0 * np.outer(theta, j))
    s = cosjk @ (b / (4.0 * j * j - 1.0))
    c = np.where((k == 0) | (k == n), 1.0, 2.0)
    w = (c / n) * (1.0 - s)
    return np.cos(theta)[::-1].copy(), w[::-1].copy()


def cumulative_integration_matrix(rule: QuadratureRule) -> np.ndarray:
    """Matrix T with (T f)_i ~= integral of the interpolant of f from a to node i.

    Row i holds the cumulative weights of the rule: the node values are lifted
    to the degree n-1 interpolant through a Legendre expansion (exact, since
    the rule integrates degree 2n-2 products exactly) and the antiderivative
    is evaluated at node i.  Exact for polynomials of degree <= n-1.
    """
    a, b = rule.interval
    n = rule.order
    half = 0.5 * (b - a)
    s = (rule.nodes - 0.5 * (a + b)) / half
    w_ref = rule.weights / half
    # P[k, j] = P_k(s_j) for k = 0..n
    p = np.zeros((n + 1, n))
    p[0] = 1.0
    if n > 1 or True:
        p[1] = s
    for k in range(2, n + 1):
        p[k] = ((2 * k - 1) * s * p[k - 1] - (k - 1) * p[k - 2]) / k
    # node values -> Legendre coefficients (degree <= n-1 exact)
    analysis = ((2.0 * np.arange(n) + 1.0)[:, None] / 2.0) * (w_ref[None, :] * p[:n])
    # antiderivatives over (-1, s]: integral of P_0 is s+1, of P_k is (P_{k+1}-P_{k-1})/(2k+1)
    anti = np.zeros((n, n))
    anti[:, 0] = s + 1.0
    for k in range(1, n):
        anti[:, k] = (p[k + 1] - p[k - 1]) / (2 * k + 1)
    return half * (anti @ analysis)
