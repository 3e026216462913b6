"""Sine-kernel integral operator numerics.

Gauss-Legendre discretizations of I - lambda K for the sine kernel and its
parity splits: Fredholm log-determinants, resolvent kernels, endpoint boundary
functions, canonical-system Hamiltonians, asymptotic expansions, and the
verification suites that certify every identity tying them together.
"""

from .asymptotics import (CoefficientTable, MatchReport, Quantity, SeriesEval,
                          derive_a_coefficients, eval_series, match_report)
from .determinants import (DetSample, PmGapTable, SigmaSample, det_sample, pm_gap,
                           sigma_sample, verify_corollary47, verify_lemma42, verify_thm45)
from .errors import (OperatorNotInvertibleError, OperatorNotPositiveError,
                     ValidityWindowError)
from .hamiltonians import (BetaEstimate, CanonicalSolution, HamiltonianSample,
                           beta_estimate, hamiltonian_at, solve_canonical)
from .kernels import (KernelFamily, KernelSpec, eval_centered, eval_scaled,
                      eval_symmetrized, kernel_values)
from .nystrom import (DiscretizedOperator, ResolventColumn, default_order, discretize,
                      log_det, nystrom_extend, projector_block_residual,
                      resolvent_column, resolvent_value, solve)
from .quadrature import (QuadratureRule, clenshaw_curtis, composite_gauss_legendre,
                         cumulative_integration_matrix, gauss_legendre, map_to_interval)
from .report import VerificationCase, VerificationReport, make_case
from .resolvent import (JmmsResiduals, QuadraticForms, ResolventSample,
                        RESOLVENT_ZETA_MAX, jmms_residuals, q1_at, q_at,
                        quadratic_forms, sample, verify_operator_identities)
from .suites import SUITES, run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable", "MatchReport", "Quantity", "SeriesEval",
    "derive_a_coefficients", "eval_series", "match_report",
    "DetSample", "PmGapTable", "SigmaSample", "det_sample", "pm_gap",
    "sigma_sample", "verify_corollary47", "verify_lemma42", "verify_thm45",
    "OperatorNotInvertibleError", "OperatorNotPositiveError", "ValidityWindowError",
    "BetaEstimate", "CanonicalSolution", "HamiltonianSample",
    "beta_estimate", "hamiltonian_at", "solve_canonical",
    "KernelFamily", "KernelSpec", "eval_centered", "eval_scaled",
    "eval_symmetrized", "kernel_values",
    "DiscretizedOperator", "ResolventColumn", "default_order", "discretize",
    "log_det", "nystrom_extend", "projector_block_residual",
    "resolvent_column", "resolvent_value", "solve",
    "QuadratureRule", "clenshaw_curtis", "composite_gauss_legendre",
    "cumulative_integration_matrix", "gauss_legendre", "map_to_interval",
    "VerificationCase", "VerificationReport", "make_case",
    "JmmsResiduals", "QuadraticForms", "ResolventSample", "RESOLVENT_ZETA_MAX",
    "jmms_residuals", "q1_at", "q_at", "quadratic_forms", "sample",
    "verify_operator_identities",
    "SUITES", "run_all", "run_suite",
    "__version__",
]
