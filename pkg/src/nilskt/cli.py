"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import inputs, scan, verify
from .complex_structures import ComplexStructure, betti_b1, is_integrable
from .curvature import (DegenerateMetricError, metric_from_form, pseudo_kahler_check, riemann,
                        riemann_up, ricci, signature)
from .hermitian import NonPositiveMetricError, lee_form, skt_status
from .iwasawa import InconsistentVerdictError
from .scalars import format_scalar
from .skt_family import (ABELIAN_MESSAGE, AbelianAlgebraError, NotTwoStepError, b_matrix, build_family,
                         classify_real, classify_two_step, skt2_residual)

OK, FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("tolerance must be a positive finite number")
    return v


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("grid bounds must be finite")
    return v


def _fmt_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(format_scalar(v) for v in row) + "]" for row in m) + "]"


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# commands --------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        chosen = verify.select(args.filter)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    settings = verify.Settings(tol=args.tol, seed=args.seed)
    results = verify.run(chosen, settings, echo=lambda line: print(line, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
          + (f"; failed: {', '.join(map(str, failed))}" if failed else ""))
    return FAILED if failed else OK


def cmd_classify(args) -> int:
    doc = inputs.load(args.file)
    exact = inputs.resolve_mode(doc) == "exact"
    p = inputs.params(doc, exact)
    if p.is_abelian():
        raise AbelianAlgebraError(ABELIAN_MESSAGE)
    print(f"skt2_residual: {format_scalar(skt2_residual(p))}")
    print(f"B: {_fmt_matrix(b_matrix(p))}")
    print(f"class: {classify_real(p)}")
    return OK


def _class_report(L) -> str:
    try:
        return classify_two_step(L)
    except (NotTwoStepError, ValueError) as exc:
        return f"outside the classified list ({exc})"


def cmd_check(args) -> int:
    doc = inputs.load(args.file)
    exact = inputs.resolve_mode(doc) == "exact"
    if "params" in doc:
        p = inputs.params(doc, exact)
        if p.is_abelian():
            raise AbelianAlgebraError(ABELIAN_MESSAGE)
        S = ComplexStructure.from_complex_coframe(build_family(p))
        print(f"skt2_residual: {format_scalar(skt2_residual(p))}")
    else:
        L = inputs.algebra(doc, exact)
        if "J" not in doc:
            raise inputs.InputError("need 'J' (rows of (1,0)-forms) alongside the algebra")
        S = inputs.structure(doc, L, exact)
        if not is_integrable(S):
            raise inputs.InputError("J is not integrable")
    W = inputs.hermitian(doc, S.m, exact)
    print(f"skt_status: {skt_status(W, S)}")
    theta = lee_form(W, S)
    print(f"lee_form: {theta if not theta.is_zero() else 0}")
    print(f"balanced: {'yes' if theta.is_zero() else 'no'}")
    print(f"b1: {betti_b1(S.algebra)}")
    print(f"class: {_class_report(S.algebra)}")
    return OK


def cmd_curvature(args) -> int:
    doc = inputs.load(args.file)
    exact = inputs.resolve_mode(doc) == "exact"
    L = inputs.algebra(doc, exact)
    n = L.dim
    S = inputs.structure(doc, L, exact) if "J" in doc else None
    omega = inputs.two_form(L.coframe, doc["omega"], exact) if "omega" in doc else None
    if "metric" in doc:
        h = inputs.matrix(doc["metric"], exact, (n, n))
    elif S is not None and omega is not None:
        h = metric_from_form(omega, S.J_vectors)
    else:
        raise inputs.InputError("need 'metric', or both 'J' and 'omega'")
    rup = riemann_up(L, h)
    ric = ricci(L, h, rup)
    R = riemann(L, h, rup)
    print(f"signature: {signature(h)}")
    print(f"ricci: {_fmt_matrix(ric)}")
    print(f"ricci_flat: {'yes' if all(v == 0 for row in ric for v in row) else 'no'}")
    if n >= 2:
        print(f"|R_1212|: {format_scalar(abs(R[0][1][0][1]))}")
    print(f"riemann_zero: {'yes' if all(v == 0 for a in R for b in a for c in b for v in c) else 'no'}")
    if S is not None and omega is not None:
        report = pseudo_kahler_check(L, S, omega)
        print(f"pseudo_kahler: {'yes' if report.ok else 'no (' + ', '.join(report.reasons) + ')'}")
    return OK


def cmd_scan(args) -> int:
    pts = scan.grid_points(args.re_min, args.re_max, args.im_min, args.im_max, args.steps)
    _write(scan.to_csv(scan.rows_for(pts, args.workers)), args.out)
    return OK


def cmd_curve(args) -> int:
    pts = scan.curve_points(args.samples, args.branch)
    _write(scan.to_csv(scan.rows_for(pts, args.workers)), args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilskt", description="SKT metrics on 6-dimensional nilmanifolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the verification criteria")
    p.add_argument("--filter", help=f"criterion numbers or groups, comma separated ({', '.join(verify.groups())})")
    p.add_argument("--tol", type=_positive_float, default=1e-9, help="float-mode tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=verify.Settings().seed, help="base random seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="class of the algebra of a coefficient tuple A..E")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="SKT status, Lee form and class of (algebra, J, Omega)")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("curvature", help="Ricci, signature and pseudo-Kahler verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_curvature)

    iw = sub.add_parser("iwasawa", help="normal-form scans of the Iwasawa moduli")
    iw_sub = iw.add_subparsers(dest="iwasawa_command", required=True, parser_class=_Parser)
    s = iw_sub.add_parser("scan", help="CSV over a grid of z")
    for name in ("--re-min", "--re-max", "--im-min", "--im-max"):
        s.add_argument(name, type=_finite, required=True)
    s.add_argument("--steps", type=int, required=True, help="points per axis")
    s.add_argument("--out", help="output CSV (stdout if omitted)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_scan)
    c = iw_sub.add_parser("curve", help="CSV of points on the SKT curve")
    c.add_argument("--samples", type=int, required=True, help="samples per branch")
    c.add_argument("--branch", choices=("inner", "outer", "both"), default="both")
    c.add_argument("--out", help="output CSV (stdout if omitted)")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_curve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        inputs.resolve_mode({})
        return args.func(args)
    except InconsistentVerdictError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return FAILED
    except (inputs.InputError, scan.EmptyGridError, AbelianAlgebraError, NotTwoStepError,
            NonPositiveMetricError, DegenerateMetricError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
