"""Large-argument expansions of the endpoint resolvent quantities.

The coefficient tables are exact rationals: the c-coefficients c_2 = -1/4 and
c_4 = -5/2 are the only ones shipped (higher ones must be supplied by the
caller), and the a-coefficients follow from the triangular recursion

    a_0 = 1/2,  2 a_0 a_2 = -1/4,
    sum_{k=0..m} a_{2k} a_{2(m-k)} = (2m - 1) c_{2(m-2)+2}   for m >= 2,

obtained by squaring the a-series and matching it against the known expansion
of Q(-zeta, zeta)^2.  Conversion to floating point happens only at evaluation
time.  Series are asymptotic: partial sums are taken to an explicit truncation
order N, never "to convergence".
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from . import resolvent

A0 = Fraction(1, 2)
BUILTIN_C = (Fraction(-1, 4), Fraction(-5, 2))  # c_2, c_4


def _to_fraction(v) -> Fraction:
    if isinstance(v, Rational):
        return Fraction(v)
    return Fraction(v)  # floats convert exactly (binary value)


def derive_a_coefficients(c: Sequence, count: int) -> list[Fraction]:
    """First ``count`` a-coefficients (a_0, a_2, ...) from the c-table, exactly.

    ``c`` lists c_2, c_4, ... in order.  a_{2m} for m >= 2 consumes c_{2(m-1)},
    so at most len(c) + 2 coefficients are determined.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > len(c) + 2:
        raise ValueError(f"count={count} needs {count - 2} c-coefficients, got {len(c)}")
    cf = [_to_fraction(v) for v in c]
    a = [A0]
    if count >= 2:
        a.append(Fraction(-1, 4) / (2 * A0))
    for m in range(2, count):
        cross = sum(a[k] * a[m - k] for k in range(1, m))
        a.append(((2 * m - 1) * cf[m - 2] - cross) / (2 * A0))
    return a


@dataclass(frozen=True)
class CoefficientTable:
    """c-coefficients (given) and a-coefficients (derived), as exact rationals."""

    c: tuple[Fraction, ...]
    a: tuple[Fraction, ...]

    @property
    def a0(self) -> Fraction:
        return self.a[0]

    @classmethod
    def default(cls, extra_c: Sequence = ()) -> "CoefficientTable":
        c = BUILTIN_C + tuple(_to_fraction(v) for v in extra_c)
        return cls(c=c, a=tuple(derive_a_coefficients(c, len(c) + 2)))


class Quantity(Enum):
    """Expandable quantities; values double as the CLI spellings."""

    Q_DIAG = "qdiag"        # Q(zeta, zeta)
    Q_ANTI = "qanti"        # Q(-zeta, zeta)
    ABS_R_SQ = "abs-rsq"    # |r|^2
    R_SQ = "rsq"            # r^2
    Q_SQ = "qsq"            # q(2 zeta)^2


@dataclass(frozen=True)
class SeriesEval:
    quantity: Quantity
    truncation: int
    u: float
    value: complex | float


def _max_truncation(quantity: Quantity, table: CoefficientTable) -> int:
    if quantity in (Quantity.Q_DIAG, Quantity.ABS_R_SQ):
        return len(table.c)
    return len(table.a) - 1


def eval_series(quantity: Quantity, u: float, n_terms: int,
                table: CoefficientTable | None = None):
    """Partial sum of the expansion of ``quantity`` in powers of 1/u.

    ``n_terms`` is the highest index kept: c-series keep c_2..c_{2N}, a-series
    keep a_0..a_{2N}.  R_SQ and Q_SQ return complex values.
    """
    if table is None:
        table = CoefficientTable.default()
    u = float(u)
    if not u > 0.0:
        raise ValueError(f"u must be positive, got {u}")
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    if n_terms > _max_truncation(quantity, table):
        raise ValueError(
            f"n_terms={n_terms} beyond available coefficients "
            f"(max {_max_truncation(quantity, table)} for {quantity.value})")
    c = [float(v) for v in table.c]
    a = [float(v) for v in table.a]

    if quantity is Quantity.Q_DIAG:
        tail = sum(c[n - 1] / u ** (2 * n + 1) for n in range(1, n_terms + 1))
        return math.pi * (u / 4.0 + 1.0 / (4.0 * u) - tail)
    if quantity is Quantity.ABS_R_SQ:
        tail = sum(2 * n * c[n - 1] / u ** (2 * n + 1) for n in range(1, n_terms + 1))
        return math.pi * (u / 2.0 + tail)
    if quantity is Quantity.Q_ANTI:
        return math.pi * sum(a[n] / u ** (2 * n) for n in range(n_terms + 1))
    if quantity is Quantity.R_SQ:
        re = math.pi * sum(a[n] * (1 - 2 * n) / u ** (2 * n) for n in range(n_terms + 1))
        im = math.pi * sum(a[n] / u ** (2 * n - 1) for n in range(n_terms + 1))
        return complex(re, im)
    if quantity is Quantity.Q_SQ:
        return cmath.exp(1j * u) * eval_series(Quantity.R_SQ, u, n_terms, table)
    raise ValueError(f"unknown quantity {quantity!r}")


def evaluate(quantity: Quantity, u: float, n_terms: int,
             table: CoefficientTable | None = None) -> SeriesEval:
    return SeriesEval(quantity=quantity, truncation=n_terms, u=u,
                      value=eval_series(quantity, u, n_terms, table))


def numeric_value(quantity: Quantity, u: float, order: int | None = None):
    """Solver-side value of ``quantity`` at u = 2 pi zeta (resolvent window applies)."""
    s = resolvent.sample(u / (2.0 * math.pi), order)
    if quantity is Quantity.Q_DIAG:
        return s.q_diag
    if quantity is Quantity.Q_ANTI:
        return s.q_anti
    if quantity is Quantity.ABS_R_SQ:
        return abs(s.r) ** 2
    if quantity is Quantity.R_SQ:
        return s.r * s.r
    if quantity is Quantity.Q_SQ:
        return s.q_2zeta * s.q_2zeta
    raise ValueError(f"unknown quantity {quantity!r}")


@dataclass(frozen=True)
class MatchRow:
    u: float
    numeric: complex | float
    series: complex | float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class MatchReport:
    """Numeric-vs-series table over a u grid, sorted by ascending u."""

    quantity: Quantity
    truncation: int
    rows: tuple[MatchRow, ...]

    @property
    def errors_decreasing(self) -> bool:
        errs = [row.rel_err for row in self.rows]
        return all(b < a for a, b in zip(errs, errs[1:]))


def match_report(quantity: Quantity, u_grid: Sequence[float], n_terms: int,
                 order: int | None = None, table: CoefficientTable | None = None) -> MatchReport:
    rows = []
    for u in sorted(float(v) for v in u_grid):
        num = numeric_value(quantity, u, order)
        ser = eval_series(quantity, u, n_terms, table)
        abs_err = abs(num - ser)
        rows.append(MatchRow(u=u, numeric=num, series=ser, abs_err=float(abs_err),
                             rel_err=float(abs_err / abs(ser))))
    return MatchReport(quantity=quantity, truncation=n_terms, rows=tuple(rows))
