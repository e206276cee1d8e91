"""Command-line interface.

Exit codes: 0 success (or the checked property holds), 1 the checked
property is false, 2 bad usage, unreadable input or a failed precondition.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bounds, construct, dual, example_d2, family, welch
from .hermitian import is_psd, lambda_min
from .io import (
    FormatError,
    dumps,
    family_from_json,
    family_to_json,
    load_json,
    load_operator,
    weights_from_json,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family_summary(fam: family.SymmetricFamily, tol: float) -> dict:
    return {
        "N": fam.N,
        "d": fam.d,
        "a_fit": fam.a_fit,
        "b_fit": fam.b_fit,
        "b_defined": fam.b_defined,
        "max_dev": fam.max_dev,
        "symmetric": fam.is_symmetric(tol),
    }


def _load_family(path: str, t_spec: str | None):
    members, T = family_from_json(load_json(path))
    if t_spec is not None:
        T = load_operator(t_spec)
    return members, T


def cmd_verify(args) -> int:
    members, T = _load_family(args.family, args.T)
    fam = family.fit_parameters(members)
    out = {"family": _family_summary(fam, args.tol), "decomposition": None}
    ok = fam.is_symmetric(args.tol)
    if T is not None:
        rep = family.verify_decomposition(fam, T, args.tol)
        out["decomposition"] = rep
        ok = ok and rep.decomposes
    _emit(dumps(out), None)
    return EXIT_OK if ok else EXIT_FALSE


def _parse_seed(text: str):
    if text == "canonical":
        return text
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"seed must be an integer or 'canonical', got {text!r}") from exc


def cmd_construct(args) -> int:
    T = load_operator(args.T)
    basis = construct.build_basis(T, args.N, _parse_seed(args.seed))
    positive_definite = lambda_min(T) > 0
    window = construct.psd_window(basis) if positive_definite else None
    if args.x is not None:
        x = args.x
    elif window is None:
        raise UsageError("--x-mode needs a positive definite T; pass --x instead")
    else:
        x = window.x_sufficient if args.x_mode == "suf" else window.x_exact
    fam = construct.build_family(basis, x)
    payload = family_to_json(
        fam.members,
        basis.T,
        x=x,
        parameters={"a": construct.a_from_x(x, basis.t2, basis.N), "b": construct.b_from_x(x, basis.t2, basis.N)},
        fit=_family_summary(fam, args.tol),
        window=window,
        basis=construct.basis_to_json_dict(basis),
    )
    _emit(dumps(payload), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    T = load_operator(args.T)
    fam = None
    if args.family:
        members, _ = family_from_json(load_json(args.family))
        fam = family.fit_parameters(members)
    _emit(dumps(bounds.a_bounds(T, args.N, fam, args.tol)), None)
    return EXIT_OK


def cmd_dual(args) -> int:
    members, T = _load_family(args.family, args.T)
    fam = family.fit_parameters(members)
    if args.normalized:
        if T is None:
            raise UsageError("--normalized needs T (in the family file or via --T)")
        result = dual.normalized_dual(fam, T, args.tol)
    elif T is not None:
        result = dual.dual_of_decomposition(fam, T, args.tol)
    else:
        result = dual.dual_family(fam, args.tol)
    t2 = None if T is None else float(np.vdot(T, T).real)
    params = dual.dual_parameters(fam.a_fit, fam.b_fit, fam.N, t2)
    payload = family_to_json(
        result.members,
        T,
        fit=_family_summary(result, args.tol),
        dual_parameters=params,
        biorthogonality_error=dual.biorthogonality_error(fam, result) if not args.normalized else None,
        member_is_psd=[is_psd(m, args.tol) for m in result.members],
    )
    _emit(dumps(payload), args.output)
    return EXIT_OK


def cmd_welch(args) -> int:
    members, _ = family_from_json(load_json(args.family))
    weights = weights_from_json(load_json(args.weights)) if args.weights else None
    kw = {"auto_normalize": args.auto_normalize}
    if args.min_angle:
        report = welch.min_angle_bound(members, weights, **kw)
        ok = report.holds() and report.extra["flat_dominates"]
    elif args.p is not None:
        report = welch.holder_welch(members, weights, args.p, **kw)
        ok = report.holds()
    elif weights is not None:
        report = welch.weighted_welch(members, weights, **kw)
        ok = report.holds()
    else:
        report = welch.simplex_bound(members)
        ok = report.holds()
    _emit(dumps(report), None)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_phi(args) -> int:
    try:
        b = [float(s) for s in args.spectrum.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"bad spectrum {args.spectrum!r}") from exc
    out = {"spectrum": b, "phi": bounds.phi_closed_form(b)}
    if args.oracle:
        res = bounds.phi_oracle(b, args.trials, seed=args.seed)
        out["oracle"] = {
            "value": res.value,
            "witness": res.witness,
            "witness_orthogonality": res.witness_orthogonality,
            "witness_norm": res.witness_norm,
            "sampled_min": res.sampled_min,
            "violations": res.violations,
            "trials": res.trials,
        }
    _emit(dumps(out), None)
    if args.oracle and (out["oracle"]["violations"] or abs(res.value - out["phi"]) > 1e-7):
        return EXIT_FALSE
    return EXIT_OK


def cmd_example_u(args) -> int:
    rows = example_d2.sweep(args.u_min, args.u_max, args.steps)
    _emit(example_d2.sweep_csv(rows), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symdec", description="Symmetric decompositions of positive operators.")
    sub = p.add_subparsers(dest="command", required=True)

    def tol_arg(sp):
        sp.add_argument("--tol", type=float, default=family.DEFAULT_TOL, help="absolute tolerance (default 1e-8)")

    sp = sub.add_parser("verify", help="fit (a, b) and check a decomposition")
    sp.add_argument("family")
    sp.add_argument("--T", help="operator file or identity:d")
    tol_arg(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build a symmetric decomposition of T")
    sp.add_argument("--T", required=True)
    sp.add_argument("--N", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", type=float)
    g.add_argument("--x-mode", choices=["suf", "exact"])
    sp.add_argument("--seed", default="canonical")
    sp.add_argument("-o", "--output")
    tol_arg(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("bounds", help="bounds on the symmetry parameter a")
    sp.add_argument("--T", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--family")
    tol_arg(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("dual", help="dual or normalized dual family")
    sp.add_argument("family")
    sp.add_argument("--T")
    sp.add_argument("--normalized", action="store_true")
    sp.add_argument("-o", "--output")
    tol_arg(sp)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("welch", help="Welch-type inequalities")
    sp.add_argument("family")
    sp.add_argument("--weights")
    sp.add_argument("--p", type=float)
    sp.add_argument("--min-angle", action="store_true")
    sp.add_argument("--auto-normalize", action="store_true")
    tol_arg(sp)
    sp.set_defaults(func=cmd_welch)

    sp = sub.add_parser("phi", help="optimal value phi(b)")
    sp.add_argument("--spectrum", required=True, help="comma-separated positive values")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("example-u", help="CSV sweep of the d=2 example over u")
    sp.add_argument("--u-min", type=float, default=1.0)
    sp.add_argument("--u-max", type=float, default=3.0)
    sp.add_argument("--steps", type=int, default=201)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_example_u)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        print("symdec: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, OSError, RuntimeError) as exc:
        print(f"symdec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
