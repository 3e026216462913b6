"""Named verification suites: each one checks a single identity end to end.

Every suite returns a VerificationReport; defaults reproduce the standard
grids, and a single zeta (plus tolerance/order overrides) can be injected from
the CLI.  Randomized checks use fixed seeds so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import math

import numpy as np

from . import determinants, hamiltonians, resolvent
from .nystrom import projector_block_residual, resolvent_column
from .report import VerificationReport, make_case

SYMMETRY_ZETAS = (0.5, 1.0, 2.0)
LEMMA32_ZETAS = (0.25, 0.5, 1.0, 1.5, 2.0, 2.5)
JMMS_ZETAS = (0.25, 0.5, 1.0, 1.5, 2.0)
DERIVATIVE_GRID = tuple((z, lam) for z in (0.8, 1.5) for lam in (0.5, 1.0))
THM45_ZETAS = (0.5, 1.0, 1.5, 2.0)
SUMRULE_ZETAS = (0.4, 0.8, 1.2, 1.6, 2.0, 2.4)
PMGAP_ZETAS = (1.0, 1.5, 2.0, 2.5)
KREIN_XS = (0.5, 1.0, 2.0, 3.0)
SYMMETRY_PAIRS = 100
SYMMETRY_SEED = 20240601


def _zetas(zeta, default):
    return (float(zeta),) if zeta is not None else default


def suite_symmetry(zeta=None, tol=None, order=None) -> VerificationReport:
    """Max |Q(-x, -y) - Q(x, y)| over random node pairs, per zeta."""
    tol = 1e-10 if tol is None else tol
    rng = np.random.default_rng(SYMMETRY_SEED)
    cases = []
    for z in _zetas(zeta, SYMMETRY_ZETAS):
        op = resolvent.centered_operator(z, order)
        n = op.order
        columns: dict[int, np.ndarray] = {}

        def column(j: int) -> np.ndarray:
            if j not in columns:
                columns[j] = resolvent_column(op, float(op.nodes[j])).node_values
            return columns[j]

        pairs = rng.integers(0, n, size=(SYMMETRY_PAIRS, 2))
        worst = 0.0
        for i, j in pairs:
            direct = column(int(j))[int(i)]
            reflected = column(n - 1 - int(j))[n - 1 - int(i)]
            worst = max(worst, abs(direct - reflected))
        cases.append(make_case({"zeta": z, "pairs": SYMMETRY_PAIRS}, worst, 0.0, tol))
    return VerificationReport(suite="symmetry", cases=cases)


def suite_lemma32(zeta=None, tol=None, order=None) -> VerificationReport:
    """|q(2 zeta) - e^{i zeta pi} r(zeta)| across independent solver paths."""
    tol = 1e-7 if tol is None else tol
    cases = []
    for z in _zetas(zeta, LEMMA32_ZETAS):
        s = resolvent.sample(z, order)
        predicted = np.exp(1j * z * np.pi) * s.r
        cases.append(make_case({"zeta": z}, abs(s.q_2zeta - predicted), 0.0, tol))
    return VerificationReport(suite="lemma32", cases=cases)


def suite_jmms(zeta=None, tol=None, order=None) -> VerificationReport:
    """Residuals of the coupled derivative system, scaled by 1 + |lhs|."""
    tol = 1e-5 if tol is None else tol
    cases = []
    for z in _zetas(zeta, JMMS_ZETAS):
        res = resolvent.jmms_residuals(z, 1e-3, order)
        for label, lhs, rhs in res.relations:
            scaled = abs(lhs - rhs) / (1.0 + abs(lhs))
            cases.append(make_case({"zeta": z, "relation": label}, scaled, 0.0, tol))
    return VerificationReport(suite="jmms", cases=cases)


def suite_identities(zeta=None, tol=None, order=None) -> VerificationReport:
    """Finite-rank commutator identities of I - K on (0, zeta)."""
    z = 0.5 if zeta is None else float(zeta)
    return resolvent.verify_operator_identities(z, order, tol=1e-6 if tol is None else tol)


def suite_lemma41(zeta=None, tol=None, order=None) -> VerificationReport:
    """Discrete parity-projector resolvent split at the matrix level."""
    tol = 1e-10 if tol is None else tol
    z = 0.8 if zeta is None else float(zeta)
    n = 60 if order is None else order
    residual = projector_block_residual(z, 0.9, n)
    return VerificationReport(suite="lemma41", cases=[
        make_case({"zeta": z, "lambda": 0.9, "order": n}, residual, 0.0, tol),
    ])


def _derivative_grid(zeta):
    if zeta is None:
        return DERIVATIVE_GRID
    return tuple((float(zeta), lam) for lam in (0.5, 1.0))


def suite_lemma42(zeta=None, tol=None, order=None) -> VerificationReport:
    """Scaled-picture derivative formula for log P_pm (FD vs analytic)."""
    cases = []
    for z, lam in _derivative_grid(zeta):
        rep = determinants.verify_lemma42(z, lam, order, tol=1e-6 if tol is None else tol)
        cases.extend(rep.cases)
    return VerificationReport(suite="lemma42", cases=cases)


def suite_lemma43(zeta=None, tol=None, order=None) -> VerificationReport:
    """Centered-picture sigma_pm: analytic trace formula vs finite differences."""
    tol = 1e-6 if tol is None else tol
    cases = []
    for z, lam in _derivative_grid(zeta):
        sig = determinants.sigma_sample(z, lam, order)
        cases.append(make_case({"zeta": z, "lambda": lam, "sign": "plus"},
                               sig.sigma_plus_fd, sig.sigma_plus, tol))
        cases.append(make_case({"zeta": z, "lambda": lam, "sign": "minus"},
                               sig.sigma_minus_fd, sig.sigma_minus, tol))
    return VerificationReport(suite="lemma43", cases=cases)


def suite_thm45(zeta=None, tol=None, order=None) -> VerificationReport:
    cases = []
    for z in _zetas(zeta, THM45_ZETAS):
        rep = determinants.verify_thm45(z, order, tol=1e-6 if tol is None else tol)
        cases.extend(rep.cases)
    return VerificationReport(suite="thm45", cases=cases)


def suite_corollary47(zeta=None, tol=None, order=None) -> VerificationReport:
    cases = []
    for z in _zetas(zeta, THM45_ZETAS):
        rep = determinants.verify_corollary47(z, order, tol=1e-6 if tol is None else tol)
        cases.extend(rep.cases)
    return VerificationReport(suite="corollary47", cases=cases)


def suite_sumrule(zeta=None, tol=None, order=None) -> VerificationReport:
    """sigma_plus + sigma_minus = sigma and log P_plus + log P_minus = log P."""
    sigma_tol = 1e-8 if tol is None else tol
    det_tol = 1e-10 if tol is None else tol
    cases = []
    for z in _zetas(zeta, SUMRULE_ZETAS):
        for lam in (0.5, 1.0):
            sig = determinants.sigma_sample(z, lam, order)
            cases.append(make_case({"zeta": z, "lambda": lam, "check": "sigma-sum"},
                                   sig.sigma_plus + sig.sigma_minus, sig.sigma, sigma_tol))
            ds = determinants.det_sample(z, lam, order)
            cases.append(make_case({"zeta": z, "lambda": lam, "check": "logdet-sum"},
                                   ds.log_p_plus + ds.log_p_minus, ds.log_p, det_tol))
    return VerificationReport(suite="sumrule", cases=cases)


def suite_pmgap(zeta=None, tol=None, order=None) -> VerificationReport:
    """Parity-determinant gap: ratio to -pi zeta and the empirical half constant."""
    grid = PMGAP_ZETAS if zeta is None else tuple(sorted(set(PMGAP_ZETAS) | {float(zeta)}))
    table = determinants.pm_gap(grid, order)
    last = table.rows[-1]
    ratio_tol = 0.05 if tol is None else tol
    cases = [
        make_case({"zeta": last.zeta, "check": "ratio-to-minus-pi-zeta"}, last.ratio, 1.0, ratio_tol),
        make_case({"zeta": last.zeta, "check": "empirical-a0"}, last.a0_empirical, 0.5,
                  0.04 if tol is None else tol),
    ]
    violations = sum(
        1 for a, b in zip(table.rows, table.rows[1:])
        if abs(b.a0_empirical - 0.5) >= abs(a.a0_empirical - 0.5))
    cases.append(make_case({"check": "deviation-shrinks", "grid": ",".join(str(r.zeta) for r in table.rows)},
                           float(violations), 0.0, 0.5))
    return VerificationReport(suite="pmgap", cases=cases)


def suite_krein(zeta=None, tol=None, order=None) -> VerificationReport:
    """q1^2 route agreement plus the exact construction checks on H2."""
    tol = 1e-4 if tol is None else tol
    xs = (float(zeta),) if zeta is not None else KREIN_XS
    cases = []
    for x in xs:
        h = hamiltonians.hamiltonian_at(x, order)
        cases.append(make_case({"x": x, "check": "exponential-vs-direct"},
                               h.q1_sq_direct, h.q1_sq, tol))
        cases.append(make_case({"x": x, "check": "offdiag-exact"},
                               float(h.h2[0, 1]), 0.5 / (2.0 * math.pi), 0.0))
        cases.append(make_case({"x": x, "check": "q2sq-construction"},
                               h.q2_sq, 0.25 / h.q1_sq, 0.0))
        cases.append(make_case({"x": x, "check": "q1sq-q2sq-product"},
                               h.q1_sq * h.q2_sq, 0.25, 1e-14))
    return VerificationReport(suite="krein", cases=cases)


def suite_canon(zeta=None, tol=None, order=None) -> VerificationReport:
    """Determinant invariants of both canonical systems plus RK4 order check."""
    tol = 1e-6 if tol is None else tol
    cases = []
    sol1 = hamiltonians.solve_canonical(1, 2j, 1.0, steps=400, order=order)
    cases.append(make_case({"system": 1, "z": "2j", "x_max": 1.0, "check": "det-w"},
                           sol1.det_w, hamiltonians.expected_det_w(1, 2j, 1.0), tol))
    sol2 = hamiltonians.solve_canonical(2, 1.0, 1.0, steps=400, order=order)
    cases.append(make_case({"system": 2, "z": "1", "x_max": 1.0, "check": "det-w"},
                           sol2.det_w, hamiltonians.expected_det_w(2, 1.0, 1.0), tol))
    w100 = hamiltonians.solve_canonical(1, 2j, 1.0, steps=100, order=order).w
    w200 = hamiltonians.solve_canonical(1, 2j, 1.0, steps=200, order=order).w
    w400 = sol1.w
    ratio = float(np.max(np.abs(w100 - w200)) / np.max(np.abs(w200 - w400)))
    cases.append(make_case({"system": 1, "check": "rk4-halving-ratio"}, ratio, 16.0, 0.25))
    return VerificationReport(suite="canon-invariants", cases=cases)


SUITES = {
    "symmetry": suite_symmetry,
    "lemma32": suite_lemma32,
    "jmms": suite_jmms,
    "identities": suite_identities,
    "lemma41": suite_lemma41,
    "lemma42": suite_lemma42,
    "lemma43": suite_lemma43,
    "thm45": suite_thm45,
    "corollary47": suite_corollary47,
    "sumrule": suite_sumrule,
    "pmgap": suite_pmgap,
    "krein": suite_krein,
    "canon-invariants": suite_canon,
}


def run_suite(name: str, zeta=None, tol=None, order=None) -> VerificationReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](zeta=zeta, tol=tol, order=order)


def run_all(zeta=None, tol=None, order=None) -> list[VerificationReport]:
    return [fn(zeta=zeta, tol=tol, order=order) for fn in SUITES.values()]
