"""Command-line front end: computations and verification suites as CSV/JSON.

Output is deterministic: floats are printed with 17 significant digits, rows
are ordered by ascending parameter, and randomized suites run from fixed
seeds.  Exit codes: 0 on success / all-pass, 1 on any verification failure,
2 on usage errors (including domain/window violations).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import asymptotics, determinants, hamiltonians, resolvent
from .errors import ValidityWindowError
from .suites import SUITES, run_all, run_suite

ENV_ORDER = "SINEKERNEL_ORDER"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, complex):
        re = format(value.real, ".17g")
        im = format(abs(value.imag), ".17g")
        return f"{re}{'+' if value.imag >= 0 else '-'}{im}j"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be a:b:n, got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("grid needs n >= 1 points")
    if a > b:
        raise argparse.ArgumentTypeError("grid needs a <= b")
    if n == 1:
        return [a]
    return [float(v) for v in np.linspace(a, b, n)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinekernel",
        description="Sine-kernel determinants, resolvent quantities, Hamiltonians, "
                    "and identity verification suites.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=None,
                        help="output format (default csv; verify defaults to json)")
    common.add_argument("--order", type=int, default=None,
                        help=f"quadrature order override (or ${ENV_ORDER})")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    sub = parser.add_subparsers(dest="command", required=True)

    det = sub.add_parser("det", parents=[common], help="log-determinants of I - lambda K")
    grp = det.add_mutually_exclusive_group(required=True)
    grp.add_argument("--zeta", type=float)
    grp.add_argument("--zeta-grid", type=_grid, metavar="A:B:N")
    det.add_argument("--lambda", dest="lam", type=float, required=True)
    det.add_argument("--variant", choices=["full", "plus", "minus", "all"], default="all")

    res = sub.add_parser("resolvent", parents=[common],
                         help="endpoint resolvent values, r, and q(2 zeta)")
    grp = res.add_mutually_exclusive_group(required=True)
    grp.add_argument("--zeta", type=float)
    grp.add_argument("--zeta-grid", type=_grid, metavar="A:B:N")

    asym = sub.add_parser("asym", parents=[common], help="numeric vs asymptotic series")
    asym.add_argument("--quantity", required=True,
                      choices=[q.value for q in asymptotics.Quantity])
    asym.add_argument("--u-min", type=float, required=True)
    asym.add_argument("--u-max", type=float, required=True)
    asym.add_argument("--points", type=int, default=5)
    asym.add_argument("--terms", type=int, required=True)

    ham = sub.add_parser("hamiltonian", parents=[common], help="Hamiltonian samples on an x grid")
    ham.add_argument("--x-grid", type=_grid, required=True, metavar="A:B:N")

    canon = sub.add_parser("canon", parents=[common], help="integrate a canonical system")
    canon.add_argument("--system", type=int, choices=[1, 2], required=True)
    canon.add_argument("--z-re", type=float, required=True)
    canon.add_argument("--z-im", type=float, default=0.0)
    canon.add_argument("--x-max", type=float, required=True)
    canon.add_argument("--steps", type=int, default=400)

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    ver.add_argument("--zeta", type=float, default=None)

    return parser


def _resolve_order(args) -> int | None:
    if args.order is not None:
        return args.order
    env = os.environ.get(ENV_ORDER)
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"${ENV_ORDER} must be an integer, got {env!r}") from None


def _emit(kind: str, fmt: str, header: list[str], rows: list[list]) -> None:
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    else:
        payload = {
            "schema": 1,
            "command": kind,
            "rows": [
                {key: ([v.real, v.imag] if isinstance(v, complex) else v)
                 for key, v in zip(header, row)}
                for row in rows
            ],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _cmd_det(args, order) -> int:
    zetas = args.zeta_grid if args.zeta_grid is not None else [args.zeta]
    variant = args.variant
    header = {"full": ["zeta", "lambda", "log_p"],
              "plus": ["zeta", "lambda", "log_p_plus"],
              "minus": ["zeta", "lambda", "log_p_minus"],
              "all": ["zeta", "lambda", "log_p", "log_p_plus", "log_p_minus"]}[variant]
    rows = []
    for z in sorted(zetas):
        ds = determinants.det_sample(z, args.lam, order)
        values = {"log_p": ds.log_p, "log_p_plus": ds.log_p_plus, "log_p_minus": ds.log_p_minus}
        rows.append([z, args.lam] + [values[c] for c in header[2:]])
    _emit("det", args.format or "csv", header, rows)
    return 0


def _cmd_resolvent(args, order) -> int:
    zetas = args.zeta_grid if args.zeta_grid is not None else [args.zeta]
    header = ["zeta", "u", "q_diag", "q_anti", "r_re", "r_im", "q2zeta_re", "q2zeta_im"]
    rows = []
    for z in sorted(zetas):
        s = resolvent.sample(z, order)
        rows.append([s.zeta, s.u, s.q_diag, s.q_anti, s.r.real, s.r.imag,
                     s.q_2zeta.real, s.q_2zeta.imag])
    _emit("resolvent", args.format or "csv", header, rows)
    return 0


def _cmd_asym(args, order) -> int:
    if args.points < 1:
        raise ValueError("--points must be >= 1")
    if args.u_max < args.u_min:
        raise ValueError("--u-max must be >= --u-min")
    quantity = asymptotics.Quantity(args.quantity)
    grid = [args.u_min] if args.points == 1 else [
        float(v) for v in np.linspace(args.u_min, args.u_max, args.points)]
    report = asymptotics.match_report(quantity, grid, args.terms, order)
    header = ["u", "numeric", "series", "abs_err", "rel_err"]
    rows = [[row.u, row.numeric, row.series, row.abs_err, row.rel_err]
            for row in report.rows]
    _emit("asym", args.format or "csv", header, rows)
    return 0


def _cmd_hamiltonian(args, order) -> int:
    header = ["x", "q_re", "q_im", "q1_sq", "q2_sq", "beta_partial"]
    rows = []
    for x in sorted(args.x_grid):
        h = hamiltonians.hamiltonian_at(x, order)
        rows.append([h.x, h.q.real, h.q.imag, h.q1_sq, h.q2_sq, h.beta_partial])
    _emit("hamiltonian", args.format or "csv", header, rows)
    return 0


def _cmd_canon(args, order) -> int:
    z = complex(args.z_re, args.z_im)
    sol = hamiltonians.solve_canonical(args.system, z, args.x_max, args.steps, order)
    w = sol.w
    det_w = sol.det_w
    header = ["system", "z_re", "z_im", "x_max", "steps",
              "w11_re", "w11_im", "w12_re", "w12_im",
              "w21_re", "w21_im", "w22_re", "w22_im", "det_re", "det_im"]
    rows = [[sol.system_id, z.real, z.imag, sol.x_max, sol.step_count,
             w[0, 0].real, w[0, 0].imag, w[0, 1].real, w[0, 1].imag,
             w[1, 0].real, w[1, 0].imag, w[1, 1].real, w[1, 1].imag,
             det_w.real, det_w.imag]]
    _emit("canon", args.format or "csv", header, rows)
    return 0


def _cmd_verify(args, order) -> int:
    if args.suite == "all":
        reports = run_all(zeta=args.zeta, tol=args.tol, order=order)
    else:
        reports = [run_suite(args.suite, zeta=args.zeta, tol=args.tol, order=order)]
    fmt = args.format or "json"
    if fmt == "json":
        payload = {
            "schema": 1,
            "reports": [rep.to_dict() for rep in reports],
            "passed": all(rep.passed for rep in reports),
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\r\n")
        writer.writerow(["suite", "case", "lhs", "rhs", "abs_err", "rel_err", "pass"])
        for rep in reports:
            for case in rep.cases:
                label = ";".join(f"{k}={v}" for k, v in case.params.items())
                writer.writerow([rep.suite, label, _fmt(case.lhs), _fmt(case.rhs),
                                 _fmt(case.abs_err), _fmt(case.rel_err),
                                 _fmt(case.passed)])
    return 0 if all(rep.passed for rep in reports) else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    handlers = {
        "det": _cmd_det,
        "resolvent": _cmd_resolvent,
        "asym": _cmd_asym,
        "hamiltonian": _cmd_hamiltonian,
        "canon": _cmd_canon,
        "verify": _cmd_verify,
    }
    try:
        order = _resolve_order(args)
        return handlers[args.command](args, order)
    except (ValueError, ValidityWindowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
