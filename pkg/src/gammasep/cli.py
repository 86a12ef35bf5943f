"""
Command-line front end.

Usage::

    gammasep metrics --kp 2 --tp 1 --kq 1 --tq 2 [--json]
    gammasep intersections --kp 1 --tp 1 --kq 1 --tq 2 [--json]
    gammasep curve --kp 2 --tp 1 --kq 1 --tq 2 [--points 1000] [--xmax auto]
    gammasep verify [--trials 1000] [--seed 42] [--kmin 0.1] [--kmax 20] [--tmin 0.1] [--tmax 20]
    gammasep threshold --n 100 --m 100 --alpha 0.05 [--json]

Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .distribution import GammaPair, cdf, log_pdf, pdf, quantile
from .errors import DomainError, PdfSingularityError
from .intersect import intersections, verify_intersections
from .metrics import full_report
from .oracle import ks_test_threshold, run_verification

EXIT_OK = 0
EXIT_FAILED = 1


def _add_pair_args(parser):
    for flag, what in (("--kp", "shape of p"), ("--tp", "scale of p"),
                       ("--kq", "shape of q"), ("--tq", "scale of q")):
        parser.add_argument(flag, type=float, required=True, help=what)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gammasep",
        description="Separability metrics between two gamma distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="all distance metrics for one pair")
    _add_pair_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("intersections", help="density intersection points")
    _add_pair_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("curve", help="CSV of pdf/cdf curves for plotting")
    _add_pair_args(p)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--xmax", default="auto", help='upper x limit or "auto"')

    p = sub.add_parser("verify", help="closed forms against brute-force oracles")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--kmin", type=float, default=0.1)
    p.add_argument("--kmax", type=float, default=20.0)
    p.add_argument("--tmin", type=float, default=0.1)
    p.add_argument("--tmax", type=float, default=20.0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("threshold", help="two-sample KS test critical value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _pair(args):
    return GammaPair.from_values(args.kp, args.tp, args.kq, args.tq)


def _fmt(x):
    return repr(float(x))


def _cmd_metrics(args, out):
    pair = _pair(args)
    report = full_report(pair)
    if args.json:
        json.dump(report.to_dict(), out)
        out.write("\n")
        return EXIT_OK
    res = report.intersections
    rows = [
        ("case", res.case.value),
        ("intersections", ", ".join(_fmt(x) for x in res.points) or "-"),
        ("tangent", str(res.tangent).lower()),
        ("d_kl_pq", _fmt(report.d_kl_pq)),
        ("d_kl_qp", _fmt(report.d_kl_qp)),
        ("d_skl", _fmt(report.d_skl)),
        ("d_ks", _fmt(report.d_ks)),
        ("d_ks_argmax", _fmt(report.d_ks_argmax)),
        ("d_eks", _fmt(report.d_eks)),
        ("d_js", _fmt(report.d_js_numeric)),
    ]
    for key, value in rows:
        out.write(f"{key:<14} {value}\n")
    return EXIT_OK


def _cmd_intersections(args, out):
    pair = _pair(args)
    res = intersections(pair)
    residuals = [abs(log_pdf(pair.p, x) - log_pdf(pair.q, x)) for x in res.points]
    if args.json:
        doc = {
            "case": res.case.value,
            "points": list(res.points),
            "tangent": res.tangent,
            "residuals": residuals,
            "max_residual": verify_intersections(pair, res),
        }
        if res.coefficients is not None:
            c = res.coefficients
            doc["alpha"] = c.alpha
            doc["log_beta"] = c.log_beta
            doc["alpha_beta"] = c.product
        json.dump(doc, out)
        out.write("\n")
        return EXIT_OK
    out.write(f"case      {res.case.value}\n")
    out.write(f"tangent   {str(res.tangent).lower()}\n")
    if not res.points:
        out.write("points    none (identical distributions)\n")
    for x, r in zip(res.points, residuals):
        out.write(f"x*        {_fmt(x)}  residual {r:.3e}\n")
    return EXIT_OK


def _pdf_or_inf(d, x):
    try:
        return pdf(d, x)
    except PdfSingularityError:
        return math.inf


def _cmd_curve(args, out, parser):
    pair = _pair(args)
    if args.points < 2:
        parser.error("--points must be at least 2")
    if args.xmax == "auto":
        xmax = max(quantile(pair.p, 0.999), quantile(pair.q, 0.999))
    else:
        try:
            xmax = float(args.xmax)
        except ValueError:
            parser.error(f'--xmax must be a number or "auto", got {args.xmax!r}')
        if not (math.isfinite(xmax) and xmax > 0.0):
            parser.error("--xmax must be positive and finite")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "pdf_p", "pdf_q", "cdf_p", "cdf_q", "abs_cdf_diff"])
    for x in np.linspace(0.0, xmax, args.points):
        x = float(x)
        cp, cq = cdf(pair.p, x), cdf(pair.q, x)
        writer.writerow([_fmt(x), _fmt(_pdf_or_inf(pair.p, x)), _fmt(_pdf_or_inf(pair.q, x)),
                         _fmt(cp), _fmt(cq), _fmt(abs(cp - cq))])
    return EXIT_OK


def _cmd_verify(args, out, parser):
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    for lo, hi, name in ((args.kmin, args.kmax, "k"), (args.tmin, args.tmax, "t")):
        if not (0.0 < lo <= hi and math.isfinite(hi)):
            parser.error(f"--{name}min/--{name}max must satisfy 0 < min <= max")
    report = run_verification(args.trials, args.seed, (args.kmin, args.kmax),
                              (args.tmin, args.tmax))
    if args.json:
        json.dump(report.to_dict(), out)
        out.write("\n")
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_threshold(args, out):
    value = ks_test_threshold(args.n, args.m, args.alpha)
    if args.json:
        json.dump({"n": args.n, "m": args.m, "alpha": args.alpha, "threshold": value}, out)
        out.write("\n")
    else:
        out.write(f"{value:.7g}\n")
    return EXIT_OK


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "metrics":
            return _cmd_metrics(args, out)
        if args.command == "intersections":
            return _cmd_intersections(args, out)
        if args.command == "curve":
            return _cmd_curve(args, out, parser)
        if args.command == "verify":
            return _cmd_verify(args, out, parser)
        return _cmd_threshold(args, out)
    except DomainError as exc:
        parser.error(str(exc))
    except ArithmeticError as exc:
        print(f"gammasep: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
