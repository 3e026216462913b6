"""Structured pass/fail records shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


def _as_float_or_pair(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return float(v)


@dataclass(frozen=True)
class VerificationCase:
    """One lhs-vs-rhs comparison with its tolerance verdict.

    Pass rule: rel_err <= tol, except that abs_err <= tol decides when
    |rhs| < tol (near-zero reference).
    """

    params: dict
    lhs: complex | float
    rhs: complex | float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "params": dict(self.params),
            "lhs": _as_float_or_pair(self.lhs),
            "rhs": _as_float_or_pair(self.rhs),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "pass": self.passed,
        }


def make_case(params: dict, lhs, rhs, tol: float) -> VerificationCase:
    abs_err = abs(lhs - rhs)
    scale = abs(rhs)
    rel_err = abs_err / scale if scale > 0.0 else float("inf")
    passed = (abs_err <= tol) if scale < tol else (rel_err <= tol)
    return VerificationCase(params=params, lhs=lhs, rhs=rhs, abs_err=float(abs_err),
                            rel_err=float(rel_err), tol=float(tol), passed=bool(passed))


@dataclass(frozen=True)
class VerificationReport:
    """All cases of one named suite; passes only if every case passes."""

    suite: str
    cases: list[VerificationCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [c.to_dict() for c in self.cases],
            "passed": self.passed,
        }
