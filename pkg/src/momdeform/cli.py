"""Command-line surface: grid evaluation, figure datasets, verification
suites and a small spectral report.

Exit codes: 0 success, 1 failed verification, 2 rejected deformation
parameter, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import figures, oracle, susy, verify
from .susy import Family, GammaStatus, ZeroMode

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_GAMMA = 2
EXIT_IO = 3

QUANTITIES = ("W", "V", "dV", "psi", "psin")


class GammaRejected(Exception):
    pass


def _family(arg):
    return Family.FAMILY1 if str(arg) == "1" else Family.FAMILY2


def _check_gammas(family, gammas):
    for g in gammas:
        dp = susy.validate_gamma(family, g)
        if dp.status is GammaStatus.VALID:
            continue
        if family is Family.FAMILY1:
            raise GammaRejected(
                f"gamma={g:g} rejected for family 1: the deformation "
                f"parameter must lie outside the interval [-1, 0] "
                f"(non-normalizable zero mode; the subinterval "
                f"[-0.7452, 0] additionally yields a singular potential)")
        raise GammaRejected(
            f"gamma={g:g} rejected for family 2: the deformation parameter "
            f"must be strictly negative")


def _evaluate_quantity(quantity, family, gamma, p):
    if quantity == "W":
        return susy.w_deformed(family, gamma, p)
    if quantity == "V":
        return susy.potential_deformed(family, gamma, p)
    if quantity == "dV":
        return susy.delta_potential(family, gamma, p)
    if quantity == "psi":
        return susy.zeromode(ZeroMode(family=family, gamma=gamma), p)
    if quantity == "psin":
        return susy.zeromode(ZeroMode(family=family, gamma=gamma,
                                      normalized=True), p)
    raise ValueError(f"unknown quantity {quantity!r}")


def cmd_eval(args):
    family = _family(args.family)
    gammas = [float(x) for x in args.gamma.split(",") if x.strip()]
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    for q in quantities:
        if q not in QUANTITIES:
            raise ValueError(f"unknown quantity {q!r}; choose from {QUANTITIES}")
    if not (args.pmin >= 0 and args.pmax > args.pmin and args.n >= 2):
        raise ValueError("need 0 <= pmin < pmax and n >= 2")
    _check_gammas(family, gammas)
    p = np.linspace(args.pmin, args.pmax, args.n)
    header = ["p"]
    columns = [p]
    for g in gammas:
        for q in quantities:
            header.append(f"{q}[gamma={g:g}]")
            columns.append(np.asarray(_evaluate_quantity(q, family, g, p)))
    if args.format == "csv":
        figures.write_csv(args.out, header, columns)
    else:
        payload = {name: [figures.format_value(v) for v in col]
                   for name, col in zip(header, columns)}
        with open(args.out, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    return EXIT_OK


def cmd_figure(args):
    os.makedirs(args.out, exist_ok=True)
    fn = figures.FIGURES[args.which]
    kwargs = {}
    if args.pmin is not None:
        kwargs["pmin"] = args.pmin
    if args.pmax is not None:
        kwargs["pmax"] = args.pmax
    if args.n is not None:
        kwargs["n"] = args.n
    fn(args.out, **kwargs)
    return EXIT_OK


def cmd_verify(args):
    report = verify.run_suite(args.suite, tol=args.tol)
    payload = verify.report_to_dict(args.suite, report)
    text = json.dumps(payload, indent=1) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        print(f"[{status}] {check.name}: residual {check.residual:.3e} "
              f"(tol {check.tolerance:.3e})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_spectrum(args):
    family = _family(args.family)
    _check_gammas(family, [args.gamma])
    h, P = args.h, args.P
    grid = h * np.arange(1, int(round(P / h)) + 1)
    V = susy.GridFunction(grid, susy.potential_deformed(family, args.gamma, grid))
    if family is Family.FAMILY1:
        # the deformed zero mode satisfies psi'(0) = -psi(0)/gamma
        bc = oracle.BoundarySpec(oracle.BoundaryKind.ROBIN, -1.0 / args.gamma)
    else:
        bc = oracle.BoundarySpec(oracle.BoundaryKind.DIRICHLET)
    lam = oracle.lowest_eigenvalue(V, bc, origin_singular_coeff=-0.5)
    payload = {"family": args.family, "gamma": args.gamma, "h": h, "P": P,
               "boundary": bc.kind.value, "lowest_eigenvalue": lam}
    text = json.dumps(payload, indent=1) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read_config(path):
    """key=value lines; '#' starts a comment."""
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


_CONFIG_TYPES = {
    "family": str, "gamma": str, "pmin": float, "pmax": float, "n": int,
    "tol": float, "quantities": str, "format": str, "out": str,
    "suite": str, "h": float, "P": float, "which": str,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="momdeform",
        description="One-parameter supersymmetric deformations of the "
                    "momentum-space linear-potential pair: grid evaluation, "
                    "figure datasets and verification suites.")
    parser.add_argument("--config", help="optional key=value config file; "
                        "command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate quantities on a grid")
    p_eval.add_argument("--family", choices=("1", "2"), required=True)
    p_eval.add_argument("--gamma", required=True,
                        help="comma-separated deformation parameters")
    p_eval.add_argument("--pmin", type=float, default=0.01)
    p_eval.add_argument("--pmax", type=float, default=10.0)
    p_eval.add_argument("--n", type=int, default=1000)
    p_eval.add_argument("--quantities", default="W,V",
                        help=f"comma-separated subset of {','.join(QUANTITIES)}")
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.add_argument("--out", required=True)
    p_eval.set_defaults(fn=cmd_eval)

    p_fig = sub.add_parser("figure", help="emit figure datasets and plots")
    p_fig.add_argument("which", choices=sorted(figures.FIGURES))
    p_fig.add_argument("--out", required=True, help="output directory")
    p_fig.add_argument("--pmin", type=float, default=None)
    p_fig.add_argument("--pmax", type=float, default=None)
    p_fig.add_argument("--n", type=int, default=None)
    p_fig.set_defaults(fn=cmd_figure)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", default="all",
                       choices=sorted(verify.SUITES) + ["all"])
    p_ver.add_argument("--tol", type=float, default=None,
                       help="override every check tolerance")
    p_ver.add_argument("--out", default=None, help="JSON report path")
    p_ver.set_defaults(fn=cmd_verify)

    p_spec = sub.add_parser("spectrum",
                            help="lowest eigenvalue of a deformed Hamiltonian")
    p_spec.add_argument("--family", choices=("1", "2"), required=True)
    p_spec.add_argument("--gamma", type=float, required=True)
    p_spec.add_argument("--h", type=float, default=1e-3)
    p_spec.add_argument("--P", type=float, default=20.0)
    p_spec.add_argument("--out", default=None)
    p_spec.set_defaults(fn=cmd_spectrum)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        # apply config-file defaults before the real parse so flags win
        if "--config" in argv:
            idx = argv.index("--config")
            config = _read_config(argv[idx + 1])
            typed = {k: _CONFIG_TYPES[k](v) for k, v in config.items()
                     if k in _CONFIG_TYPES}
            for action in parser._subparsers._group_actions:
                for sp in action.choices.values():
                    sp.set_defaults(**{k: v for k, v in typed.items()
                                       if any(a.dest == k for a in sp._actions)})
        args = parser.parse_args(argv)
        return args.fn(args)
    except GammaRejected as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_GAMMA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
