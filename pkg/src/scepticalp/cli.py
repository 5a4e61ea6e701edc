"""Command-line interface: ``scepticalp <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import credibility, dataset, design, nullsim, sceptical
from .distributions import two_sided_p
from .exceptions import ScepticalError


def _fmt(value):
    if isinstance(value, bool) or value is None:
        return str(value).lower() if isinstance(value, bool) else "NA"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def render(record, fmt):
    """Render a flat mapping as an aligned table, JSON or one-row CSV."""
    if fmt == "json":
        return json.dumps(record, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(["" if v is None else (str(v).lower() if isinstance(v, bool) else v)
                         for v in record.values()])
        return buf.getvalue().rstrip("\n")
    width = max(len(k) for k in record)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in record.items())


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _common(alpha=True):
    parent = argparse.ArgumentParser(add_help=False)
    if alpha:
        parent.add_argument("--alpha", type=float, default=0.05, help="level (default 0.05)")
        parent.add_argument("--sided", type=int, choices=(1, 2), default=2,
                            help="1 for one-sided (alpha used as given), 2 for two-sided")
    parent.add_argument("--format", choices=("table", "json", "csv"), default="table")
    return parent


def _pair_args(p):
    g = p.add_argument_group("test-statistic form")
    g.add_argument("--to", type=float, help="original test statistic")
    g.add_argument("--tr", type=float, help="replication test statistic")
    g.add_argument("--c", type=float, help="variance ratio se_o^2 / se_r^2")
    e = p.add_argument_group("estimate form")
    for name in ("est-o", "se-o", "est-r", "se-r"):
        e.add_argument(f"--{name}", type=float)


def _design_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--po", type=float, help="two-sided p-value of the original study")
    g.add_argument("--to", type=float, help="original test statistic")
    g.add_argument("--curve", type=_float_list, help="comma-separated grid of p_o values")
    p.add_argument("--prior", choices=("point", "normal"), default="point")
    p.add_argument("--target", choices=("significance", "success"), default="success")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scepticalp", description="Replication success via the sceptical p-value."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("analyze", parents=[common], help="sceptical p-value of a study pair")
    _pair_args(p)

    p = sub.add_parser("credibility", parents=[common], help="reverse-Bayes assessment at level alpha")
    for side in ("o", "r"):
        p.add_argument(f"--est-{side}", type=float)
        p.add_argument(f"--se-{side}", type=float)
        p.add_argument(f"--ci-{side}", type=float, nargs=2, metavar=("L", "U"))
    p.add_argument("--ci-level", type=float, default=0.95, help="level of the --ci-* intervals")

    p = sub.add_parser("power", parents=[common], help="power of a replication study")
    _design_args(p)
    p.add_argument("--c", type=float, default=1.0, help="relative sample size n_r / n_o")

    p = sub.add_parser("samplesize", parents=[common], help="required relative sample size")
    _design_args(p)
    p.add_argument("--power", type=float, default=0.8)

    p = sub.add_parser("simulate", parents=[_common(alpha=False)], help="null distribution of p_S")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--alphas", type=_float_list, default=list(nullsim.DEFAULT_ALPHAS))
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--histogram", metavar="PATH", help="also write the histogram CSV here")

    p = sub.add_parser("dataset", parents=[common], help="analyse a CSV of correlation pairs")
    p.add_argument("--input", required=True, help="CSV with columns study_id,n_o,r_o,n_r,r_r")
    return parser


def _cmd_analyze(args, parser):
    est = (args.est_o, args.se_o, args.est_r, args.se_r)
    stats = (args.to, args.tr, args.c)
    if all(v is not None for v in stats) and all(v is None for v in est):
        pair = sceptical.TestPair(*stats)
    elif all(v is not None for v in est) and all(v is None for v in stats):
        pair = sceptical.TestPair.from_estimates(*est)
    else:
        parser.error("analyze needs either --to/--tr/--c or --est-o/--se-o/--est-r/--se-r")
    out = sceptical.sceptical_analysis(pair)
    p = out.p_two_sided if args.sided == 2 else out.p_one_sided
    return {
        "t_o": pair.t_o, "t_r": pair.t_r, "c": pair.c,
        "p_o": pair.p_o, "p_r": pair.p_r,
        "z_s_squared": out.z_s_squared,
        "p_s": out.p_two_sided, "p_s_one_sided": out.p_one_sided,
        "direction_agrees": out.direction_agrees,
        "alpha": args.alpha, "sided": args.sided, "success": bool(p <= args.alpha),
    }


def _study(args, side, parser):
    est, se, ci = (getattr(args, f"{k}_{side}") for k in ("est", "se", "ci"))
    if ci is not None and se is None:
        return credibility.StudySummary.from_ci(ci[0], ci[1], args.ci_level, est)
    if est is not None and se is not None and ci is None:
        return credibility.StudySummary(est, se)
    parser.error(f"give --est-{side} with --se-{side}, or --ci-{side} (optionally with --est-{side})")


def _cmd_credibility(args, parser):
    orig, rep = _study(args, "o", parser), _study(args, "r", parser)
    res = credibility.replication_success_at_level(orig, rep, args.alpha, args.sided)
    return {
        "estimate_o": orig.estimate, "se_o": orig.standard_error, "p_o": orig.p_value,
        "estimate_r": rep.estimate, "se_r": rep.standard_error, "p_r": rep.p_value,
        "scepticism_limit": res.scepticism_limit,
        "sceptical_prior_variance": res.sceptical_prior_variance,
        "box_statistic": res.box_statistic,
        "box_tail_probability": res.box_tail_probability,
        "alpha": args.alpha, "sided": args.sided, "success": res.success,
    }


def _query(args, **extra):
    return design.DesignQuery(
        t_o=args.to, p_o=args.po if args.to is None else None,
        alpha=args.alpha, sided=args.sided, prior=args.prior, target=args.target, **extra
    )


def _render_curve(rows, fmt):
    if fmt == "csv":
        return design.curve_to_csv(rows).rstrip("\n")
    if fmt == "json":
        return json.dumps([{"p_o": r.p_o, "value": r.value, "status": r.status} for r in rows],
                          indent=2)
    lines = [f"{'p_o':>10}  {'value':>10}  status"]
    lines += [f"{_fmt(r.p_o):>10}  {_fmt(r.value):>10}  {r.status}" for r in rows]
    return "\n".join(lines)


def _cmd_power(args, parser):
    if args.curve is not None:
        q = design.DesignQuery(p_o=0.5, c=args.c, alpha=args.alpha, sided=args.sided,
                               prior=args.prior, target=args.target)
        return design.power_curve(args.curve, q)
    q = _query(args, c=args.c)
    return {"t_o": q.t_o, "p_o": two_sided_p(q.t_o), "c": q.c, "alpha": q.alpha,
            "sided": q.sided, "prior": q.prior.value, "target": q.target.value,
            "power": design.power(q)}


def _cmd_samplesize(args, parser):
    if args.curve is not None:
        q = design.DesignQuery(p_o=0.5, alpha=args.alpha, sided=args.sided,
                               prior=args.prior, target=args.target)
        return design.sample_size_curve(args.curve, q, args.power)
    q = _query(args)
    res = design.required_relative_sample_size(q, args.power)
    return {"t_o": q.t_o, "p_o": two_sided_p(q.t_o), "alpha": q.alpha, "sided": q.sided,
            "prior": q.prior.value, "target": q.target.value, "target_power": args.power,
            "achievable": res.achievable, "c_required": res.c_required,
            "power_at_c": res.power_at_c}


def _cmd_simulate(args):
    cfg = nullsim.NullSimConfig(c=args.c, n_samples=args.n, seed=args.seed,
                                alpha_grid=tuple(args.alphas), histogram_bins=args.bins)
    report = nullsim.simulate_null(cfg, workers=args.workers)
    if args.histogram:
        with open(args.histogram, "w", newline="", encoding="utf-8") as fh:
            fh.write(report.histogram_csv())
    if args.format == "json":
        return report.to_json(indent=2)
    if args.format == "csv":
        return report.histogram_csv().rstrip("\n")
    lines = [f"c = {_fmt(cfg.c)}, n = {cfg.n_samples}, seed = {cfg.seed}",
             f"{'alpha':>8}  {'P(p_S<=alpha)':>14}  {'mcse':>10}  {'bound':>8}"]
    for a, (est, se) in report.tail_estimates.items():
        lines.append(f"{_fmt(a):>8}  {_fmt(est):>14}  {_fmt(se):>10}  "
                     f"{_fmt(nullsim.null_tail_bound(a)):>8}")
    return "\n".join(lines)


def _cmd_dataset(args):
    rows, errors = dataset.read_rows_csv(args.input)
    result = dataset.analyze_dataset(rows, alpha=args.alpha, skipped=errors)
    if args.format == "csv":
        return result.to_csv().rstrip("\n")
    if args.format == "json":
        return result.to_json(indent=2)
    cols = dataset.OUTPUT_COLUMNS
    body = [[_fmt(v) for v in s.output_row().values()] for s in result.studies]
    widths = [max(len(c), *(len(r[i]) for r in body)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in body]
    summary = result.summary
    thresholds = summary.pop("n_p_s_at_most")
    lines.append("")
    lines += [f"{k}: {_fmt(v)}" for k, v in summary.items()]
    lines += [f"n_p_s_at_most_{k}: {v}" for k, v in thresholds.items()]
    for e in result.skipped:
        lines.append(f"skipped {e.study_id}: {e.reason}")
    return "\n".join(lines)


def run(argv=None):
    """Run the CLI and return ``(exit_status, output_text)``.

    Usage errors raise ``SystemExit(2)`` from argparse.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return 0, _cmd_simulate(args)
        if args.command == "dataset":
            return 0, _cmd_dataset(args)
        handler = {"analyze": _cmd_analyze, "credibility": _cmd_credibility,
                   "power": _cmd_power, "samplesize": _cmd_samplesize}[args.command]
        result = handler(args, parser)
    except ScepticalError as exc:
        return 1, f"error: {exc}"
    if isinstance(result, list):
        return 0, _render_curve(result, args.format)
    return 0, render(result, args.format)


def main(argv=None):
    status, text = run(argv)
    stream = sys.stdout if status == 0 else sys.stderr
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
