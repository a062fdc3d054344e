"""Command-line front end.

    bicoeff bounds  --family alpha --alpha 1 --lambda 1 --mu 1 --delta 0
    bicoeff verify  {inverse,identities,corollaries,caratheodory,numeric,all}
    bicoeff sample  --family beta --beta 1/2 --lambda 2 --trials 1000 --seed 42 --out runs.csv
    bicoeff table   --points 11 --lambda 2 --mu 1/2
    bicoeff invert  --coeffs 1,1,1

Exit status: 0 when every executed check passed and no bound violation
occurred, 1 on a failed check or violation, 2 on invalid parameters, 3 on
I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import bounds as bnd
from . import verify as vfy
from .class_operator import (
    DEFAULT_ANGLES,
    DEFAULT_EVAL_ORDER,
    DEFAULT_RADII,
    ClassParams,
    ParameterError,
    make_family,
)
from .polyring import parse_rational
from .series import NormalizedSeries, SeriesDomainError, reversion

CSV_HEADER = ("trial", "family", "lambda", "mu", "delta", "order", "a2_abs", "a3_abs",
              "a2_bound", "a3_bound", "accepted", "margin_z", "margin_w", "violation")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


# -- argument plumbing ----------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _radii(text: str) -> tuple:
    try:
        return tuple(float(r) for r in text.split(",") if r.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from None


def _add_params(p: argparse.ArgumentParser, family_required: bool = True):
    p.add_argument("--family", choices=("alpha", "beta"), required=family_required)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    p.add_argument("--mu", type=_rational, default=Fraction(1))
    p.add_argument("--delta", type=_rational, default=Fraction(0))


def _add_format(p, choices=("text", "json"), default="text"):
    p.add_argument("--format", choices=choices, default=default)


def _family_and_params(args):
    value = args.alpha if args.family == "alpha" else args.beta
    if value is None:
        raise UsageError(f"--{args.family} is required for the {args.family} family")
    params = ClassParams(args.lam, args.mu, args.delta)
    return make_family(args.family, value), params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicoeff", description="Coefficient bounds for bi-univalent function classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate the |a2| and |a3| bounds")
    _add_params(p)
    _add_format(p)

    p = sub.add_parser("verify", help="run the identity and reduction suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=("inverse", "identities", "corollaries", "caratheodory", "numeric", "all"))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=101, help="order-parameter grid size for reductions")
    _add_format(p)

    p = sub.add_parser("sample", help="Monte-Carlo membership sampling against the bounds")
    _add_params(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=vfy.DEFAULT_SOLVE_ORDER)
    p.add_argument("--eval-order", type=int, default=DEFAULT_EVAL_ORDER)
    p.add_argument("--radii", type=_radii, default=DEFAULT_RADII)
    p.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    p.add_argument("--force-schwarz", default=None,
                   help="zero | rotation:ETA[:K] | blaschke:ETA:C (used for every trial)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    _add_format(p, ("text", "json", "csv"), default=None)

    p = sub.add_parser("table", help="general bound against each published special case")
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--values", default=None, help="explicit comma list of alpha/beta values")
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(2))
    p.add_argument("--mu", type=_rational, default=Fraction(1, 2))
    _add_format(p, ("text", "csv"))

    p = sub.add_parser("invert", help="coefficients of the compositional inverse")
    p.add_argument("--coeffs", required=True, help="a2,a3,... (rationals or complex literals)")
    p.add_argument("--order", type=int, default=None)
    _add_format(p)
    return parser


# -- commands -------------------------------------------------------------------


def cmd_bounds(args, out) -> int:
    family, params = _family_and_params(args)
    report = bnd.evaluate_bounds(family, params)
    if args.format == "json":
        out.write(render_json(report.as_dict()))
        return EXIT_OK
    pd = params.as_dict()
    out.write(f"family   {family.label()}\n")
    out.write(f"params   lambda={pd['lambda']} mu={pd['mu']} delta={pd['delta']} xi={pd['xi']}\n")
    out.write(f"|a2| <=  {report.a2_bound:.10f}  [{report.branch_taken['a2']}]\n")
    out.write(f"|a3| <=  {report.a3_bound:.10f}  [{report.branch_taken['a3']}]\n")
    if report.radicand is not None:
        out.write(f"radicand {report.radicand:.10f}\n")
    return EXIT_OK


def collect_verdicts(suite: str, trials: int, seed: int, grid: int) -> List[vfy.IdentityVerdict]:
    verdicts: List[vfy.IdentityVerdict] = []
    if suite in ("inverse", "all"):
        verdicts += vfy.verify_inverse_expansion()
    if suite in ("identities", "all"):
        for fam in ("alpha", "beta"):
            verdicts += vfy.verify_coefficient_equations(fam, trials, seed)
            verdicts += vfy.verify_derived_identities(fam, trials, seed)
    if suite in ("corollaries", "all"):
        verdicts += vfy.verify_corollaries(grid)
    if suite in ("caratheodory", "all"):
        verdicts.append(vfy.verify_caratheodory(max(trials, 1000), seed))
        verdicts.append(vfy.verify_caratheodory_extremal())
    if suite in ("numeric", "all"):
        verdicts.append(vfy.verify_numeric_agreement(trials, seed))
    return verdicts


def cmd_verify(args, out) -> int:
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    verdicts = collect_verdicts(args.suite, args.trials, args.seed, args.grid)
    passed = sum(v.passed for v in verdicts)
    if args.format == "json":
        out.write(render_json({"suite": args.suite, "trials": args.trials, "seed": args.seed,
                               "passed": passed, "total": len(verdicts),
                               "verdicts": [v.as_dict() for v in verdicts]}))
    else:
        width = max(len(v.identity) for v in verdicts)
        for v in verdicts:
            mark = "PASS" if v.passed else "FAIL"
            out.write(f"{mark}  {v.identity:<{width}}  samples={v.samples}\n")
            for point, residual in v.failures[:5]:
                out.write(f"      at {point}: residual {residual}\n")
        out.write(f"{passed}/{len(verdicts)} identities pass\n")
    return EXIT_OK if passed == len(verdicts) else EXIT_FAIL


def records_csv(records: Sequence[vfy.SampleRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([_fmt(x) for x in (
            r.trial, r.family.label(), r.params.lam, r.params.mu, r.params.delta, r.order,
            r.a2_abs, r.a3_abs, r.a2_bound, r.a3_bound, r.accepted,
            r.report_z.worst_margin, r.report_w.worst_margin, r.violation)])
    return buf.getvalue()


def records_text(records: Sequence[vfy.SampleRecord]) -> str:
    lines = [f"{'trial':>6} {'status':<12} {'|a2|':>10} {'bound':>10} {'|a3|':>10} "
             f"{'bound':>10} {'margin_w':>11}"]
    for r in records:
        lines.append(f"{r.trial:>6} {r.status:<12} {r.a2_abs:>10.6f} {r.a2_bound:>10.6f} "
                     f"{r.a3_abs:>10.6f} {r.a3_bound:>10.6f} {r.report_w.worst_margin:>11.4g}"
                     + ("  VIOLATION" if r.violation else ""))
    return "\n".join(lines) + "\n"


def _format_from_path(path: Optional[str]) -> str:
    suffix = os.path.splitext(path or "")[1].lower()
    return {".csv": "csv", ".json": "json"}.get(suffix, "text")


def cmd_sample(args, out) -> int:
    family, params = _family_and_params(args)
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    if args.order < 3:
        raise UsageError("order must be >= 3 (a2 and a3 are reported)")
    forced = None
    if args.force_schwarz:
        try:
            forced = vfy.SchwarzSpec.parse(args.force_schwarz)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    records = vfy.sample_members(family, params, args.trials, args.seed, args.radii, args.angles,
                                 args.order, args.eval_order, forced)
    summary = vfy.summarize(records)
    fmt = args.format or _format_from_path(args.out)
    if fmt == "csv":
        body = records_csv(records)
    elif fmt == "json":
        body = render_json({
            "config": {"family": family.as_dict(), "params": params.as_dict(),
                       "trials": args.trials, "seed": args.seed, "order": args.order,
                       "eval_order": args.eval_order, "radii": list(args.radii),
                       "angles": args.angles, "force_schwarz": args.force_schwarz},
            "summary": vars(summary),
            "records": [r.as_dict() for r in records],
        })
    else:
        body = records_text(records)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(body)
        except OSError as exc:
            sys.stderr.write(f"error: cannot write {args.out}: {exc}\n")
            return EXIT_IO
        out.write(summary.line() + "\n")
    else:
        out.write(body)
        sys.stderr.write(summary.line() + "\n")
    return EXIT_OK if summary.violations == 0 else EXIT_FAIL


def _table_values(family: str, points: int, values: Optional[str]) -> List[Fraction]:
    if values:
        return [parse_rational(v) for v in values.split(",") if v.strip()]
    n = points - 1
    if family == "alpha":
        return [Fraction(k, n) for k in range(1, n + 1)]
    return [Fraction(k, n) for k in range(0, n)]


def table_rows(points: int, values: Optional[str], lam, mu) -> List[list]:
    rows = []
    for cid, cor in bnd.COROLLARIES.items():
        for x in _table_values(cor.family, points, values):
            try:
                g2, g3 = bnd.corollary_general(cid, x, lam, mu)
                c2, c3 = bnd.corollary_formula(cid, x, lam, mu)
            except ParameterError:
                continue  # value outside this family's range
            rows.append([cid, str(x), g2, c2, g2 - c2, g3, c3, g3 - c3])
    return rows


def cmd_table(args, out) -> int:
    if args.points < 2:
        raise UsageError("points must be >= 2")
    rows = table_rows(args.points, args.values, args.lam, args.mu)
    header = ["corollary", "value", "general_a2", "corollary_a2", "diff_a2",
              "general_a3", "corollary_a3", "diff_a3"]
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(x) for x in r])
        return EXIT_OK
    out.write(f"{'corollary':<26} {'value':>7} {'general_a2':>11} {'corollary_a2':>12} {'diff_a2':>10} "
              f"{'general_a3':>11} {'corollary_a3':>12} {'diff_a3':>10}\n")
    for r in rows:
        out.write(f"{r[0]:<26} {r[1]:>7} {r[2]:>11.7f} {r[3]:>12.7f} {r[4]:>10.3g} "
                  f"{r[5]:>11.7f} {r[6]:>12.7f} {r[7]:>10.3g}\n")
    return EXIT_OK


def _coefficient(text: str):
    try:
        return parse_rational(text)
    except ValueError:
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            raise UsageError(f"cannot parse coefficient {text!r}") from None


def cmd_invert(args, out) -> int:
    tail = [_coefficient(c) for c in args.coeffs.split(",") if c.strip()]
    if not tail:
        raise UsageError("--coeffs needs at least one coefficient")
    order = args.order if args.order is not None else len(tail) + 1
    if order < 2:
        raise UsageError("order must be >= 2")
    g = reversion(NormalizedSeries.from_tail(tail, order))
    labels = [f"b{n}" for n in range(2, order + 1)]
    values = list(g.coeffs[2:])
    if args.format == "json":
        enc = [[v.real, v.imag] if isinstance(v, complex) else str(v) for v in values]
        out.write(render_json({"input": [str(t) for t in tail], "inverse": dict(zip(labels, enc))}))
    else:
        for name, v in zip(labels, values):
            out.write(f"{name} = {v}\n")
    return EXIT_OK


COMMANDS = {"bounds": cmd_bounds, "verify": cmd_verify, "sample": cmd_sample,
            "table": cmd_table, "invert": cmd_invert}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ParameterError, UsageError, SeriesDomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
