"""Sine-kernel evaluation: centered, scaled, and the even/odd symmetrized splits.

All kernels are real and symmetric; the removable singularity on the diagonal
is handled by a short Taylor series so there is no cancellation near x = t.
Pure functions, safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# below this |argument| the sinc is evaluated by its series (4 terms, enough
# to keep the crossover smooth to well below 1e-15)
SERIES_CUTOFF = 1e-4


class KernelFamily(Enum):
    CENTERED_UNIT = "centered_unit"
    SCALED = "scaled"
    SYMMETRIZED_PLUS = "symmetrized_plus"
    SYMMETRIZED_MINUS = "symmetrized_minus"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus its scale parameter (ignored for CENTERED_UNIT)."""

    family: KernelFamily
    zeta: float = 1.0

    def __post_init__(self) -> None:
        if self.family is not KernelFamily.CENTERED_UNIT:
            if not (math.isfinite(self.zeta) and self.zeta > 0.0):
                raise ValueError(f"zeta must be positive, got {self.zeta}")


def _sinc_pi(z):
    """sin(pi z) / (pi z) with the limit 1 at z = 0."""
    arr = np.asarray(z, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_CUTOFF
    y = (np.pi * arr[small]) ** 2
    out[small] = 1.0 - y / 6.0 + y * y / 120.0 - y * y * y / 5040.0
    big = arr[~small]
    out[~small] = np.sin(np.pi * big) / (np.pi * big)
    if scalar:
        return float(out[0])
    return out


def eval_centered(s, t):
    """sin(pi (s - t)) / (pi (s - t)), even in s - t, equal to 1 on the diagonal."""
    return _sinc_pi(np.subtract(s, t))


def eval_scaled(x, t, zeta: float):
    """sin(zeta pi (x - t)) / (pi (x - t)); the diagonal value is zeta."""
    if not zeta > 0.0:
        raise ValueError(f"zeta must be positive, got {zeta}")
    return zeta * _sinc_pi(zeta * np.subtract(x, t))


def eval_symmetrized(x, t, zeta: float, sign: int):
    """[scaled(x, t) +/- scaled(x, -t)] / 2 with both diagonal limits handled."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return 0.5 * (eval_scaled(x, t, zeta) + sign * eval_scaled(x, np.negative(t), zeta))


def kernel_values(spec: KernelSpec, x, y):
    """Evaluate the kernel of ``spec`` at broadcastable point arrays x, y."""
    if spec.family is KernelFamily.CENTERED_UNIT:
        return eval_centered(x, y)
    if spec.family is KernelFamily.SCALED:
        return eval_scaled(x, y, spec.zeta)
    sign = 1 if spec.family is KernelFamily.SYMMETRIZED_PLUS else -1
    return eval_symmetrized(x, y, spec.zeta, sign)
