"""Command line entry point: ``manova-lab verify|esd|edge``.

Exit codes are 0 when everything passes, 1 when a check or experiment fails
and 2 for usage errors.  ``MANOVA_LAB_THREADS`` caps the number of trial
workers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import as_rational
from .ensembles import ENSEMBLES, edge_experiment, esd_experiment, worker_count
from .manova import ManovaParams
from .suites import run_suite, suite_names

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ESD_CLAIMS = [
    "e.s.d. of A B A converges to MANOVA(alpha, beta)",
    "moments of A B A converge to the MANOVA moments",
]
EDGE_CLAIMS = [
    "top eigenvalue of A B A converges to the right edge of the MANOVA support",
]
CONJECTURE_BANNER = (
    "WARNING: conjecture regime: neither alpha nor beta equals 1/2, so convergence "
    "of the top eigenvalue to the support edge is conjectured, not proved"
)


class UsageError(Exception):
    pass


def _plain(obj):
    """Convert a report to JSON-native types so that it round-trips exactly."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_plain(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _params(alpha: str, beta: str) -> tuple[ManovaParams, dict]:
    try:
        p = ManovaParams(as_rational(alpha), as_rational(beta))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    echo = {
        "alpha": {"input": alpha, "rational": str(p.alpha)},
        "beta": {"input": beta, "rational": str(p.beta)},
    }
    return p, echo


def _header(command: str, config: dict, seed, claims: list) -> dict:
    return {"tool": "manova-lab", "version": __version__, "command": command, "config": config, "seed": seed, "claims": claims}


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError("cannot write %s: %s" % (path, exc.strerror or exc)) from None


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError("%s must be positive" % name)
    return value


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    def show(r):
        print("%s  %-11s %-45s %s (%.2fs)" % ("PASS" if r.passed else "FAIL", r.suite, r.claim, r.detail, r.seconds), flush=True)

    results = run_suite(args.suite, show)
    failed = [r for r in results if not r.passed]
    print("%d/%d checks passed" % (len(results) - len(failed), len(results)))
    if args.out:
        report = _header("verify", {"suite": args.suite}, None, [r.claim for r in results])
        report["results"] = [r.to_dict() for r in results]
        report["passed"] = not failed
        _write(args.out, dumps(report))
    return EXIT_FAIL if failed else EXIT_OK


def esd_csv(summary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_center", "count", "empirical_density", "manova_density"])
    edges = summary.bin_edges
    for i, count in enumerate(summary.counts):
        center = (edges[i] + edges[i + 1]) / 2
        writer.writerow([repr(center), count, repr(summary.empirical_density[i]), repr(summary.manova_density[i])])
    return buf.getvalue()


def cmd_esd(args) -> int:
    params, echo = _params(args.alpha, args.beta)
    for name in ("n", "trials", "bins"):
        _positive(name, getattr(args, name))
    if not 0 <= args.kmax <= 24:
        raise UsageError("kmax must lie in [0, 24]")
    if args.n < 2:
        raise UsageError("n must be at least 2")
    config = dict(echo, ensemble=args.ensemble, N=args.n, trials=args.trials, kmax=args.kmax, bins=args.bins, format=args.format)
    summary = esd_experiment(args.ensemble, params.alpha, params.beta, args.n, args.trials, args.kmax, args.seed, args.bins)
    table = [
        {"k": k, "empirical": e, "exact": x, "abs_diff": abs(e - x)}
        for k, (e, x) in enumerate(zip(summary.empirical_moments, summary.exact_moments), 1)
    ]
    report = _header("esd", config, args.seed, ESD_CLAIMS)
    report["summary"] = summary.to_dict(include_trials=True)
    report["moment_table"] = table
    report["max_abs_diff"] = summary.max_moment_error
    report["tv_distance"] = summary.tv_distance

    out = sys.stderr if args.out is None else sys.stdout
    print("%-4s %-14s %-14s %s" % ("k", "empirical", "exact", "|diff|"), file=out)
    for row in table:
        print("%-4d %-14.8f %-14.8f %.2e" % (row["k"], row["empirical"], row["exact"], row["abs_diff"]), file=out)
    print("max |diff| %.3e, histogram TV distance %.4f" % (summary.max_moment_error, summary.tv_distance), file=out)

    if args.format == "csv":
        _write(args.out, esd_csv(summary))
        if args.out and args.out != "-":
            _write(args.out + ".meta.json", dumps(report))
    else:
        _write(args.out, dumps(report))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError("n-list must be comma-separated integers, got %r" % text) from None
    if not values or min(values) < 2:
        raise UsageError("n-list needs at least one size, each at least 2")
    return values


def cmd_edge(args) -> int:
    params, echo = _params(args.alpha, args.beta)
    sizes = _int_list(args.n_list)
    _positive("trials", args.trials)
    half = Fraction(1, 2)
    conjecture = params.alpha != half and params.beta != half
    if conjecture:
        print(CONJECTURE_BANNER, file=sys.stderr)
    config = dict(echo, ensemble=args.ensemble, n_list=sizes, trials=args.trials)
    rows = [edge_experiment(args.ensemble, params.alpha, params.beta, N, args.trials, args.seed).to_dict() for N in sizes]
    medians = [r["median_deviation"] for r in rows]
    trend = all(b <= a for a, b in zip(medians, medians[1:]))
    report = _header("edge", config, args.seed, EDGE_CLAIMS)
    report["regime"] = "conjecture" if conjecture else "proved"
    report["rows"] = rows
    report["median_deviation_non_increasing"] = trend
    report["passed"] = trend and all(r["passed"] for r in rows)

    out = sys.stderr if args.out is None else sys.stdout
    print("edge = %.6f (%s ensemble, %d trials)" % (rows[0]["edge"], args.ensemble, args.trials), file=out)
    print("%-6s %-10s %-12s %-10s %-10s %s" % ("N", "mean", "median dev", "max dev", "tol", "pass"), file=out)
    for r in rows:
        print("%-6d %-10.6f %-12.6f %-10.6f %-10.6f %s" % (r["N"], r["mean"], r["median_deviation"], r["max_deviation"], r["tolerance"], r["passed"]), file=out)
    print("median deviation non-increasing: %s" % trend, file=out)
    _write(args.out, dumps(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="manova-lab", description="Exact identities and Monte Carlo experiments for products of random projections.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run an exact verification suite")
    v.add_argument("suite", choices=suite_names())
    v.add_argument("--out", help="write a JSON report here")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("esd", help="spectrum of A B A against the MANOVA law")
    e.add_argument("--alpha", required=True)
    e.add_argument("--beta", required=True)
    e.add_argument("--n", type=int, default=512)
    e.add_argument("--trials", type=int, default=10)
    e.add_argument("--kmax", type=int, default=5)
    e.add_argument("--bins", type=int, default=40)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--ensemble", choices=ENSEMBLES, default="dft")
    e.add_argument("--out", help="output path (default: stdout)")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.set_defaults(func=cmd_esd)

    g = sub.add_parser("edge", help="top eigenvalue of A B A against the support edge")
    g.add_argument("--alpha", required=True)
    g.add_argument("--beta", required=True)
    g.add_argument("--n-list", required=True)
    g.add_argument("--trials", type=int, default=20)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--ensemble", choices=ENSEMBLES, default="invariant")
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_edge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        worker_count()
        return args.func(args)
    except UsageError as exc:
        print("%s: error: %s" % (parser.prog, exc), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if "MANOVA_LAB_THREADS" in str(exc):
            print("%s: error: %s" % (parser.prog, exc), file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
