"""Command-line interface.

Subcommands:
  verify <inequality> ...    check one inequality on matrices from JSON files
  campaign --config FILE     run a seeded verification campaign
  bounds constants ...       print the constants entering the remainder bounds
  repr check --f ID          integral-representation fidelity of a function

Exit codes: 0 pass, 1 inequality violation, 2 input error, 3 divergent entropy.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds
from .campaign import parse_config, parse_dims, run_campaign
from .errors import DivergentEntropy, QREError
from .functions import from_id, loewner_quadrature
from .linalg import FactorizedSpace, load_matrix
from .reports import BoundReport

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_DIVERGENT = 3

VERIFY_CHOICES = (
    "pinsker", "monotonicity", "monotonicity_bound", "thm42", "ssa",
    "operator_ssa_thm62", "operator_ssa_thm63", "operator_ssa_cor64",
    "operator_ssa_cor65", "cauchy_schwarz", "classical_reduction",
)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qre", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one inequality instance")
    v.add_argument("inequality", choices=VERIFY_CHOICES)
    v.add_argument("--f", dest="fid", default="neg_log", help="function id")
    v.add_argument("--beta", type=float, default=0.5)
    v.add_argument("--rho", required=True, help="JSON matrix file")
    v.add_argument("--sigma", help="JSON matrix file")
    v.add_argument("--k", help="JSON matrix file (K, or K_1 on the kept factor)")
    v.add_argument("--v", dest="vfile", help="JSON matrix file (unitary on the traced factor)")
    v.add_argument("--dims", help="factor dims, e.g. 2,2 or 2x2x2")
    v.add_argument("--json", action="store_true", help="emit the report as JSON")

    c = sub.add_parser("campaign", help="run a campaign from a config file")
    c.add_argument("--config", required=True)
    c.add_argument("--output", help="override the config output path")

    b = sub.add_parser("bounds", help="bound constants")
    bsub = b.add_subparsers(dest="bounds_command", required=True)
    bc = bsub.add_parser("constants", help="print alpha1 alpha2 alpha C c N")
    bc.add_argument("--f", dest="fid", required=True)
    bc.add_argument("--beta", type=float, required=True)
    bc.add_argument("--p", type=float, help="override the power parameter")
    bc.add_argument("--knorm", type=float, default=1.0)
    bc.add_argument("--dd", type=float, default=1.0, help="modular-operator norm D")

    r = sub.add_parser("repr", help="integral representation checks")
    rsub = r.add_subparsers(dest="repr_command", required=True)
    rc = rsub.add_parser("check", help="quadrature fidelity on a log grid")
    rc.add_argument("--f", dest="fid", required=True)
    rc.add_argument("--tol", type=float, default=1e-6)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "campaign":
            return _cmd_campaign(args)
        if args.command == "bounds":
            return _cmd_constants(args)
        if args.command == "repr":
            return _cmd_repr(args)
    except DivergentEntropy as exc:
        print(f"divergent entropy: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except (QREError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


def _space_for(args, matrix, default_bipartite=True):
    if args.dims:
        return FactorizedSpace(parse_dims(args.dims))
    n = matrix.shape[0]
    half = int(np.sqrt(n))
    if default_bipartite and half * half == n:
        return FactorizedSpace((half, half))
    raise QREError(f"cannot infer factor dims for size {n}; pass --dims")


def _cmd_verify(args) -> int:
    f = from_id(args.fid)
    rho = load_matrix(args.rho)
    report: BoundReport
    if args.inequality == "pinsker":
        sigma = _require(args.sigma, "--sigma")
        u = load_matrix(args.k) if args.k else np.eye(rho.shape[0])
        report = bounds.pinsker_check(f, u, rho, load_matrix(sigma))
    elif args.inequality == "classical_reduction":
        sigma = _require(args.sigma, "--sigma")
        report = bounds.verify_classical_reduction(f, rho, load_matrix(sigma))
    elif args.inequality in ("monotonicity", "monotonicity_bound", "thm42"):
        sigma = load_matrix(_require(args.sigma, "--sigma"))
        space = _space_for(args, rho)
        k1 = load_matrix(args.k) if args.k else np.eye(space.dims[0])
        v = load_matrix(args.vfile) if args.vfile else np.eye(space.dims[1])
        if args.inequality == "monotonicity":
            report = bounds.verify_monotonicity(f, k1, v, rho, sigma, space)
        elif args.inequality == "thm42":
            report = bounds.verify_thm42_grid(f, k1, v, rho, sigma, args.beta, space)
        else:
            report = bounds.verify_monotonicity_bound(f, k1, v, rho, sigma,
                                                      args.beta, space)
    elif args.inequality == "ssa":
        space = FactorizedSpace(parse_dims(_require(args.dims, "--dims")))
        report = bounds.verify_ssa(rho, args.beta, space)
    elif args.inequality.startswith("operator_ssa_"):
        space = FactorizedSpace(parse_dims(_require(args.dims, "--dims")))
        sigma_ab = load_matrix(_require(args.sigma, "--sigma"))
        variant = args.inequality.rsplit("_", 1)[1]
        report = bounds.verify_operator_ssa(f, rho, sigma_ab, args.beta, variant, space)
    elif args.inequality == "cauchy_schwarz":
        space = FactorizedSpace(parse_dims(_require(args.dims, "--dims")))
        sigma_ab = load_matrix(_require(args.sigma, "--sigma"))
        report = bounds.verify_cauchy_schwarz(rho, sigma_ab, args.beta, space)
    else:  # pragma: no cover
        raise QREError(f"unhandled inequality {args.inequality}")
    if args.json:
        print(report.to_json())
    else:
        print(f"{report.inequality_id}: lhs={report.lhs:.9g} rhs={report.rhs:.9g} "
              f"margin={report.gap:.3e} passed={report.passed}")
    return EXIT_PASS if report.passed else EXIT_VIOLATION


def _require(value, flag):
    if not value:
        raise QREError(f"{flag} is required for this inequality")
    return value


def _cmd_campaign(args) -> int:
    with open(args.config) as fh:
        config = parse_config(fh.read())
    if args.output:
        config = type(config)(**{**config.__dict__, "output_path": args.output})
    summary = run_campaign(config)
    print(summary.line())
    for ineq, stats in summary.per_inequality.items():
        print(f"  {ineq}: reports={stats['reports']} passes={stats['passes']} "
              f"divergent={stats['divergent']} worst_margin={stats['worst_margin']:.6g}")
    if summary.failures:
        print("failing trials (replay with run_single):", file=sys.stderr)
        for line in summary.failing[:20]:
            print(f"  {line}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_PASS


def _cmd_constants(args) -> int:
    f = from_id(args.fid)
    beta = args.beta
    if f.name == "neg_log":
        kind, p = "log", None
    elif f.name.startswith("f_p:") or f.name.startswith("neg_power:"):
        kind, p = "power", float(f.name.split(":", 1)[1])
    else:
        raise QREError(f"no closed-form constants for {f.name}")
    if args.p is not None:
        kind, p = "power", args.p
    c = f.power_law_c(beta) if f.regular else (
        p / 2.0 if beta <= 0.5 else p * (1.0 - beta) / (2.0 * beta))
    alpha = bounds.alpha_exponent(beta, c)
    n = bounds.explicit_N(kind, beta, p, args.knorm, args.dd)
    big_c = f.power_law_C() if f.regular else float("nan")
    for name, value in (("alpha1", bounds.alpha1(beta)), ("alpha2", bounds.alpha2(beta)),
                        ("alpha", alpha), ("C", big_c), ("c", c), ("N", n)):
        print(f"{name}={value!r}")
    return EXIT_PASS


def _cmd_repr(args) -> int:
    f = from_id(args.fid)
    xs = np.geomspace(0.1, 10.0, 21)
    worst = 0.0
    for x in xs:
        err = abs(loewner_quadrature(f, float(x)) - float(f(x)))
        worst = max(worst, err)
    print(f"max |quadrature - eval| over x in [0.1, 10]: {worst:.3e}")
    return EXIT_PASS if worst < args.tol else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
