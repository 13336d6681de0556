"""Command-line interface.

Subcommands map one-to-one onto the library modules:

  exact       closed-form values at 1/sqrt(n) or at a rational r (JSON)
  eval        truncated-series evaluation at one point (JSON)
  verify      residual sweep over a functional identity (JSON lines)
  cg          Bernoulli-formula evaluation / comparison (JSON)
  conjecture  zero scan over a range of n (CSV + summary on stderr)
  figure      batch evaluation at random points (CSV, optional PNG render)

Single results are JSON on stdout, sweeps are CSV; diagnostics go to stderr.
Exit codes: 0 success, 1 evaluation error, 2 usage error.  Identical argv
(including --seed) produces byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import abel, charollois, closedform, conjecture, series
from .exactnum import format_rational

FIGURE_CSV_HEADER = "r,value,terms,tail_estimate"
CONJECTURE_CSV_HEADER = ("n,r,f_value,tail_estimate,predicted_zero,"
                         "classified_zero,confident,exact_value,route")
CSV_FORMAT_VERSION = 1


def _parse_point(text: str) -> float:
    """Accept a decimal, a fraction "p/q", or "1/sqrt(n)"."""
    text = text.strip()
    m = re.fullmatch(r"1/sqrt\((\d+)\)", text)
    if m:
        return 1.0 / math.sqrt(int(m.group(1)))
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def _exact_value_json(value: closedform.ExactValue):
    if value.is_finite:
        return format_rational(value.value)
    return value.kind


def _cmd_exact(args) -> int:
    if (args.n is None) == (args.r is None):
        print("exact: exactly one of --n or --r is required", file=sys.stderr)
        return 2
    if args.n is not None:
        evaluate = (closedform.psi_at_inverse_sqrt if args.fn == "psi"
                    else closedform.f_at_inverse_sqrt)
        res = evaluate(args.n)
        witness = None
        if res.witness is not None:
            witness = {"K": res.witness.K, "p": res.witness.p, "q": res.witness.q}
        out = {
            "input_n": args.n,
            "function": args.fn,
            "value": _exact_value_json(res.value),
            "witness": witness,
            "route": res.route,
        }
    else:
        r = Fraction(args.r)
        evaluate = closedform.psi_at_rational if args.fn == "psi" else closedform.f_at_rational
        res = evaluate(r)
        out = {
            "input_r": format_rational(r),
            "function": args.fn,
            "value": _exact_value_json(res.value),
            "canonical": format_rational(res.canonical),
            "sign": res.sign,
            "witness": None,
            "route": res.route,
        }
    print(json.dumps(out))
    return 0


def _cmd_eval(args) -> int:
    r = _parse_point(args.r)
    eval_fn = series.eval_psi if args.fn == "psi" else series.eval_f
    try:
        res = eval_fn(r, args.terms, args.strategy, args.guard_delta)
    except (series.SingularityError, ValueError) as exc:
        print(f"eval: {exc}", file=sys.stderr)
        return 1
    out = {
        "function": args.fn,
        "r": r,
        "value": res.value,
        "terms": res.terms,
        "tail_estimate": res.tail_estimate,
        "strategy": res.strategy,
        "max_term_magnitude": res.max_term_magnitude,
    }
    print(json.dumps(out))
    return 0


def _cmd_verify(args) -> int:
    ids = list(abel.IDENTITY_IDS) if args.identity == "all" else [args.identity]
    rng = np.random.default_rng(args.seed)
    evaluator = abel.SeriesEvaluator(args.terms, args.strategy, args.guard_delta)
    failures = 0
    for ident in ids:
        inputs = abel.sample_identity_inputs(ident, args.samples, rng,
                                             guard_delta=args.guard_delta)
        for x in inputs:
            try:
                res = abel.identity_residual(ident, x, evaluator,
                                             args.tol_floor, args.tail_factor)
            except (series.SingularityError, ValueError) as exc:
                print(f"verify: {ident} at {x}: {exc}", file=sys.stderr)
                failures += 1
                continue
            print(json.dumps(res.to_dict()))
            failures += 0 if res.passed else 1
    if failures:
        print(f"verify: {failures} residual(s) failed", file=sys.stderr)
        return 1
    return 0


def _cg_result_json(res: charollois.CGResult) -> dict:
    return {
        "value": str(res.value),
        "rational_part": format_rational(res.rational_part),
        "irrational_part_zero": res.irrational_part_zero,
    }


def _cmd_cg(args) -> int:
    try:
        if args.compare:
            rep = charollois.cg_compare(args.p, force=args.force)
            out = {
                "p": rep["p"],
                "cg_plain": _cg_result_json(rep["cg_plain"]),
                "cg_squared": _cg_result_json(rep["cg_squared"]),
                "closedform_value": _exact_value_json(rep["closedform_value"]),
                "match_plain": rep["match_plain"],
                "match_squared": rep["match_squared"],
            }
        else:
            res = charollois.cg_eval(args.p, squared=args.squared, force=args.force)
            out = {"p": args.p, "squared": args.squared, **_cg_result_json(res)}
    except charollois.CostBoundError as exc:
        print(f"cg: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(out))
    return 0


def _cmd_conjecture(args) -> int:
    records = conjecture.scan(args.min, args.max, args.terms, args.tol,
                              threads=args.threads, strategy=args.strategy)
    print(CONJECTURE_CSV_HEADER)
    for rec in records:
        row = [
            str(rec.n),
            repr(rec.r),
            "" if rec.f_value is None else repr(rec.f_value),
            "" if rec.tail_estimate is None else repr(rec.tail_estimate),
            str(rec.predicted_zero).lower(),
            "" if rec.classified_zero is None else str(rec.classified_zero).lower(),
            str(rec.confident).lower(),
            rec.exact_value or "",
            rec.route,
        ]
        print(",".join(row))
    summary = conjecture.summarize(records)
    print(
        f"conjecture: confirmed={summary['confirmed']} "
        f"contradicted={summary['contradicted']} "
        f"inconclusive={summary['inconclusive']} "
        f"zeros={summary['zeros_found']}",
        file=sys.stderr,
    )
    for rec in summary["disagreements"]:
        print(f"conjecture: disagreement at n={rec.n}: f={rec.f_value}", file=sys.stderr)
    return 1 if summary["contradicted"] else 0


def _cmd_figure(args) -> int:
    if args.full:
        args.points = max(args.points, 200_000)
        args.terms = max(args.terms, 100_000)
    rng = np.random.default_rng(args.seed)
    points: list[float] = []
    while len(points) < args.points:
        r = float(rng.uniform(0.0, 1.0))
        try:
            series._guard(r, args.which, args.guard_delta, series.DEFAULT_GUARD_MAX_DEN)
        except (series.SingularityError, ValueError):
            continue
        points.append(r)
    items = series.batch_eval(points, args.which, args.terms, args.strategy,
                              threads=args.threads, guard_delta=args.guard_delta)
    lines = [FIGURE_CSV_HEADER]
    for item in items:
        if item.result is None:
            print(f"figure: skipped r={item.r}: {item.error}", file=sys.stderr)
            continue
        res = item.result
        lines.append(f"{item.r!r},{res.value!r},{res.terms},{res.tail_estimate!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from . import plotting

        rows = [(item.r, item.result.value) for item in items if item.result is not None]
        plotting.render_scatter(rows, args.which, args.plot,
                                overlay_model=args.overlay_model)
        print(f"figure: wrote plot to {args.plot}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secantzeta",
        description=(
            "Exact and numerical evaluation of the secant zeta function psi and "
            "its 1-antiperiodization f, verification of their functional "
            "identities, and a scan for zeros of f at 1/sqrt(n)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_series_flags(p, terms_default=series.DEFAULT_TERMS):
        p.add_argument("--terms", type=int, default=terms_default,
                       help=f"series terms (default {terms_default})")
        p.add_argument("--strategy", choices=series.STRATEGIES, default="compensated",
                       help="summation strategy (default compensated)")
        p.add_argument("--guard-delta", type=float, default=series.DEFAULT_GUARD_DELTA,
                       help="singularity guard margin, denominator-weighted "
                            f"(default {series.DEFAULT_GUARD_DELTA})")

    p = sub.add_parser("exact", help="closed-form value at 1/sqrt(n) or rational r")
    p.add_argument("--fn", choices=("psi", "f"), required=True, help="function to evaluate")
    p.add_argument("--n", type=int, help="evaluate at r = 1/sqrt(n)")
    p.add_argument("--r", help="evaluate at a rational r, e.g. 3/8")
    p.add_argument("--format", choices=("json",), default="json", help="output format")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("eval", help="truncated-series value at one point")
    p.add_argument("--fn", choices=("psi", "f"), required=True, help="function to evaluate")
    p.add_argument("--r", required=True, help='point: decimal, "p/q", or "1/sqrt(n)"')
    add_series_flags(p)
    p.add_argument("--format", choices=("json",), default="json", help="output format")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="residual sweep over a functional identity")
    p.add_argument("--identity", choices=abel.IDENTITY_IDS + ("all",), required=True,
                   help="identity to check, or all")
    p.add_argument("--samples", type=int, default=100, help="points per identity (default 100)")
    p.add_argument("--seed", type=int, default=0, help="sample seed (default 0)")
    p.add_argument("--tol-floor", type=float, default=1e-3,
                   help="residual tolerance floor (default 1e-3)")
    p.add_argument("--tail-factor", type=float, default=5.0,
                   help="tolerance = max(floor, factor * combined tail) (default 5)")
    add_series_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cg", help="Bernoulli-formula value at 1/sqrt(p(p+1))")
    p.add_argument("--p", type=int, required=True, help="index p >= 1; n = p(p+1)")
    p.add_argument("--squared", action="store_true", help="use the squared matrix variant")
    p.add_argument("--compare", action="store_true",
                   help="compare both variants against the closed form")
    p.add_argument("--force", action="store_true", help="ignore the cost bound")
    p.set_defaults(func=_cmd_cg)

    p = sub.add_parser("conjecture", help="scan f(1/sqrt(n)) for zeros")
    p.add_argument("--min", type=int, default=2, help="first n (default 2)")
    p.add_argument("--max", type=int, required=True, help="last n")
    p.add_argument("--tol", type=float, default=1e-3, help="zero threshold (default 1e-3)")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    add_series_flags(p, terms_default=10_000_000)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("figure", help="batch evaluation at seeded random points")
    p.add_argument("--which", choices=("psi", "f"), required=True, help="function to sample")
    p.add_argument("--points", type=int, default=2000, help="sample count (default 2000)")
    p.add_argument("--seed", type=int, default=0, help="sample seed (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--plot", help="render a scatter plot PNG/PDF to this path")
    p.add_argument("--overlay-model", action="store_true",
                   help="overlay the pole-structure model curves (f only)")
    p.add_argument("--full", action="store_true",
                   help="production scale: 200000 points, 100000 terms")
    add_series_flags(p, terms_default=10_000)
    p.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
