"""Command line front end.

Exit codes: 0 on success, 1 on usage or parse errors, 2 when a computed
result violates one of the library's own contracts (chain ordering,
verification suite failure, diverging iteration).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis
from . import bounds
from . import catalog
from . import cyclic
from . import oracle as oracle_mod
from . import verify as verify_mod

ENV_OUTPUT_DIR = "PROXGAP_OUTPUT_DIR"


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _parse_cli_vector(text, name):
    try:
        coords = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise CliError(f"bad {name} '{text}': expected comma-separated reals") from None
    if not coords:
        raise CliError(f"bad {name} '{text}': empty vector")
    return coords


def _function_entry(spec):
    entry = catalog.parse_spec(spec)
    if isinstance(entry, catalog.Operator):
        raise CliError(f"spec '{spec}' names an operator; this command requires a convex function")
    return entry


def _resolve_out(out_arg, default_name):
    if out_arg:
        return Path(out_arg)
    env = os.environ.get(ENV_OUTPUT_DIR)
    if env:
        return Path(env) / default_name
    return None


def _write_csv(path, header, rows):
    if path is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}")


def _write_text(path, text):
    if path is None:
        print(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n")
    print(f"wrote {path}")


def run_eval(args):
    entry = _function_entry(args.spec)
    x = _parse_cli_vector(args.x, "--x")
    x_star = _parse_cli_vector(args.xstar, "--xstar")
    if not args.gamma > 0.0:
        raise CliError(f"--gamma must be positive, got {args.gamma!r}")

    report = bounds.bound_report(entry, args.gamma, x, x_star)

    out = _resolve_out(args.out, "eval.csv" if args.format == "csv" else "eval.json")
    if args.format == "json":
        payload = {
            "x": [float(c) for c in report.x],
            "x_star": [float(c) for c in report.x_star],
            "gamma": report.gamma,
            "gap": report.gap,
            "fitzpatrick": report.fitzpatrick,
            "carlier": report.carlier,
            "gap_zero": report.gap_zero,
            "gap_equals_carlier": report.gap_equals_carlier,
        }
        _write_text(out, json.dumps(payload, indent=2))
    else:
        _write_csv(out, bounds.BOUND_CSV_HEADER, [bounds.report_to_csv_row(report)])

    violation = bounds.chain_violation(report)
    if violation is not None:
        print(f"contract violation: {violation}", file=sys.stderr)
        return 2
    return 0


def run_sweep(args):
    entry = catalog.parse_spec(args.spec)
    A = catalog.as_operator(entry)
    x = _parse_cli_vector(args.x, "--x")
    x_star = _parse_cli_vector(args.xstar, "--xstar")

    result = analysis.gamma_sweep(
        A, x, x_star, lo=args.gamma_lo, hi=args.gamma_hi, count=args.count
    )

    out = _resolve_out(args.out, "sweep.csv")
    _write_csv(out, analysis.SWEEP_CSV_HEADER, analysis.sweep_csv_rows(result))
    payload = json.dumps(analysis.sweep_json(result), indent=2)
    if out is None:
        print(payload)
    else:
        json_path = out.with_suffix(".json")
        json_path.write_text(payload + "\n")
        print(f"wrote {json_path}")

    print(f"argmax: gamma={result.argmax_gamma!r} value={result.argmax_value!r}")
    print(f"limit gamma->0+: {result.limit_zero.describe()}")
    print(f"limit gamma->inf: {result.limit_infinity.describe()}")
    return 0


def run_series(args):
    entry = catalog.parse_spec(args.spec)
    A = catalog.as_operator(entry)
    x = _parse_cli_vector(args.x, "--x")
    x_star = _parse_cli_vector(args.xstar, "--xstar")

    if args.gammas:
        schedule = cyclic.GammaSchedule.from_values(_parse_cli_vector(args.gammas, "--gammas"))
    else:
        if not args.gamma > 0.0:
            raise CliError(f"--gamma must be positive, got {args.gamma!r}")
        schedule = cyclic.GammaSchedule.const(args.gamma)

    seq = cyclic.generate_cyclic_sequence(A, x, x_star, schedule, args.n_terms)

    out = _resolve_out(args.out, "series.csv")
    _write_csv(out, cyclic.SERIES_CSV_HEADER, cyclic.series_csv_rows(seq))

    total = float(seq.partial_sums[-1])
    print(f"carlier (term 1) = {float(seq.terms[0])!r}")
    print(f"partial_sum[{seq.terms.size}] = {total!r}")
    if not isinstance(entry, catalog.Operator):
        g = bounds.gap(entry, x, x_star)
        print(f"gap = {g!r}")
        if g != float("inf") and total > g + 1e-9 * (1.0 + abs(g)):
            print(
                f"contract violation: series bound {total!r} exceeds gap {g!r}",
                file=sys.stderr,
            )
            return 2
    return 0


def run_verify(args):
    results = verify_mod.run_all(seed=args.seed, slack=args.slack)
    all_ok = True
    for suite in results:
        print(f"{suite.name}: {suite.passed} passed, {suite.failed} failed")
        for message in suite.failures:
            print(f"  FAIL {message}")
        all_ok = all_ok and suite.ok
    print("OVERALL " + ("PASS" if all_ok else "FAIL"))
    return 0 if all_ok else 2


def run_oracle_compare(args):
    entry = _function_entry(args.spec)
    rng = np.random.default_rng(args.seed)

    worst_conj = 0.0
    for x_star in verify_mod.conjugate_queries(entry, rng, args.count):
        closed = entry.conjugate(x_star)
        est = oracle_mod.numeric_conjugate(entry, x_star)
        delta = abs(est.value - closed)
        worst_conj = max(worst_conj, delta / (1.0 + abs(closed)))
        print(
            f"conjugate x_star={x_star.tolist()}: closed={closed!r} "
            f"oracle={est.value!r} delta={delta!r}"
        )

    worst_prox = 0.0
    for gamma, z in verify_mod.prox_queries(entry, rng, args.count):
        closed = entry.prox(gamma, z)
        est = oracle_mod.numeric_prox(entry, gamma, z)
        delta = float(np.max(np.abs(est - closed)))
        worst_prox = max(worst_prox, delta)
        print(
            f"prox gamma={gamma} z={z.tolist()}: closed={closed.tolist()} "
            f"oracle={est.tolist()} delta={delta!r}"
        )

    print(f"worst conjugate delta (relative) = {worst_conj!r}")
    print(f"worst prox delta = {worst_prox!r}")
    if worst_conj > 1e-4 or worst_prox > 1e-5:
        print("contract violation: oracle disagrees with closed forms", file=sys.stderr)
        return 2
    return 0


def run_pgm(args):
    if not args.step > 0.0:
        raise CliError(f"--step must be positive, got {args.step!r}")
    if not args.gamma > 0.0:
        raise CliError(f"--gamma must be positive, got {args.gamma!r}")
    if args.iters < 1:
        raise CliError(f"--iters must be >= 1, got {args.iters!r}")
    y0 = _parse_cli_vector(args.y0, "--y0")
    if len(y0) != 2:
        raise CliError(f"--y0 '{args.y0}' must have dimension 2")

    f_smooth = catalog.make_energy(2)
    f_prox = catalog.make_subspace_indicator([[1.0, 0.0]])
    try:
        trace = analysis.pgm_certificates(
            f_smooth, f_prox, args.step, args.gamma, y0, iters=args.iters
        )
    except ValueError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 2

    out = _resolve_out(args.out, "pgm.csv")
    _write_csv(out, analysis.PGM_CSV_HEADER, analysis.pgm_csv_rows(trace))
    print(f"x_ref = {trace.x_ref.tolist()}")
    print(f"final carlier certificate = {float(trace.carlier_certs[-1])!r}")
    print(f"final bregman gap = {float(trace.bregman_refs[-1])!r}")

    if bool(np.any(trace.carlier_certs > trace.bregman_refs + 1e-12)):
        print("contract violation: certificate exceeds the Bregman gap", file=sys.stderr)
        return 2
    return 0


def _build_parser():
    parser = _Parser(prog="proxgap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the bound chain at one query")
    p.add_argument("--spec", required=True, help="catalog entry, e.g. energy:dim=2")
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.add_argument("--xstar", required=True, help="comma-separated coordinates")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_eval)

    p = sub.add_parser("sweep", help="Carlier bound over a log-spaced gamma grid")
    p.add_argument("--spec", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--xstar", required=True)
    p.add_argument("--gamma-lo", type=float, default=1e-6)
    p.add_argument("--gamma-hi", type=float, default=1e6)
    p.add_argument("--count", type=int, default=49)
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("series", help="cyclic series lower bound")
    p.add_argument("--spec", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--xstar", required=True)
    p.add_argument("--gamma", type=float, default=1.0, help="constant schedule")
    p.add_argument("--gammas", default=None, help="explicit comma-separated schedule")
    p.add_argument("--n-terms", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_series)

    p = sub.add_parser("verify", help="run the randomized verification suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--slack", type=float, default=None, help="override all tolerances")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("oracle-compare", help="closed forms vs brute-force oracles")
    p.add_argument("--spec", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=run_oracle_compare)

    p = sub.add_parser("pgm", help="proximal gradient demo with certificates")
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--y0", default="4.0,3.0")
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_pgm)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
