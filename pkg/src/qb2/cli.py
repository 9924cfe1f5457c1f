"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 when a claim fails, 2 for
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import claims, gwa, quotient, strata
from .coeff import render
from .errors import ClaimViolation, DomainError
from .parsing import ContextError, ParseError, eval_nf, evaluate_scalar, parse_ideal
from .sparse import IncompatibleAlgebraError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (
    ParseError,
    ContextError,
    strata.SpecError,
    DomainError,
    IncompatibleAlgebraError,
    ZeroDivisionError,
)


def cmd_nf(args) -> int:
    print(eval_nf(args.expr, args.context))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        reports = claims.verify(args.selector, jobs=args.jobs)
    except KeyError:
        print(f"unknown claim id {args.selector!r}; known: {', '.join(sorted(claims.CLAIMS))}",
              file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.line())
        passed = sum(r.status == "pass" for r in reports)
        print(f"{passed}/{len(reports)} claims pass")
    return EXIT_OK if all(r.status == "pass" for r in reports) else EXIT_FAIL


def cmd_classify(args) -> int:
    spec = parse_ideal(args.spec)
    print(f"ideal:     {spec}")
    print(strata.classify(spec).render())
    return EXIT_OK


def cmd_units(args) -> int:
    alpha, beta = evaluate_scalar(args.alpha), evaluate_scalar(args.beta)
    if not alpha and not beta:
        raise DomainError("A(0,0) is not one of the simple quotients")
    gens = quotient.AElement.gens(alpha, beta)
    status = EXIT_OK
    for name in ("e1", "e3"):
        try:
            cert = quotient.certify_non_unit(gens[name], args.bound)
        except ClaimViolation as exc:
            print(f"{name}: unexpected inverse: {exc}")
            status = EXIT_FAIL
            continue
        if cert.feasible:
            print(f"{name}: unit, inverse {cert.witness}")
        else:
            print(
                f"{name}: no inverse with i, j <= {cert.bound} "
                f"(unknowns {cert.unknowns}, equations {cert.equations}, "
                f"rank {cert.rank}, augmented rank {cert.augmented_rank})"
            )
    if not alpha or not beta:
        u, v = claims.unit_pair_0beta(beta) if not alpha else claims.unit_pair_alpha0(alpha)
        ok = quotient.verify_unit(u, v)
        print(f"explicit unit {u}: {'verified' if ok else 'FAILED'}")
        print(f"  inverse {v}")
        status = status if ok else EXIT_FAIL
    return status


def _print_residuals(residuals: dict) -> None:
    for name, r in residuals.items():
        print(f"  {name}: {r}")


def cmd_gwa_check(args) -> int:
    try:
        if args.which == "0beta":
            rep = gwa.check_theta_0beta(evaluate_scalar(args.beta or "b"))
            print(f"sigma(h) = {render(rep['spec'].sigma_scale)}*h, a = {rep['spec'].a}")
        elif args.which == "alpha0":
            rep = gwa.check_theta_alpha0(evaluate_scalar(args.alpha or "a"))
            print(f"sigma(h) = {render(rep['spec'].sigma_scale)}*h, a = {rep['spec'].a}")
        else:
            rep = gwa.check_localization(evaluate_scalar(args.alpha or "a"),
                                         evaluate_scalar(args.beta or "b"))
            print(f"e2 = {rep['e2']}")
            agrees = "agrees" if rep["printed_formula_agrees"] else "differs on the alpha term"
            print(f"typeset formula {agrees}")
    except ClaimViolation as exc:
        print(f"FAIL {exc}")
        return EXIT_FAIL
    _print_residuals(rep["residuals"])
    print("all residuals vanish")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qb2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("--context", default="U",
                   help="U, B(s), A(s,s), H, Torus, GWA0b(s), GWAa0(s) or GWA(s; r(h))")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("verify", help="run checks by claim id, or 'all'")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("selector", nargs="?", default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="stratum record of an ideal such as \"<z-2, z'-5>\"")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("units", help="unit and non-unit certificates in A(alpha, beta)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(func=cmd_units)

    p = sub.add_parser("gwa-check", help="relation checks for the GWA and torus models")
    p.add_argument("--which", choices=["0beta", "alpha0", "torus"], required=True)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_gwa_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
