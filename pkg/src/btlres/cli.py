"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical failure
(non-convergence or a disconnected graph).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .btl import (
    BadDeltaError,
    BadSkewnessError,
    empirical_frequencies,
    log_ratios,
    sample_weights,
    simulate_comparisons,
)
from .estimator import d_error, estimate_weights, sin_error, theorem1_bound
from .experiment import ConfigError, emit_csv, emit_svg, load_config, run_experiment
from .generators import FamilySpec, erdos_renyi_p, generate, generate_connected
from .graph import DisconnectedError, GraphError
from .io import (
    FormatError,
    read_edge_list,
    read_tally,
    read_weights,
    write_edge_list,
    write_estimate,
    write_tally,
    write_weights,
)
from .resistance import NoConvergenceError, effective_resistance, resistance_summary

EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_gen(a, out):
    if a.p is not None and a.degree is not None:
        raise UsageError("give at most one of --p and --degree")
    p = a.p
    if a.family == "erdos_renyi":
        if a.degree is not None:
            p = erdos_renyi_p(a.n, a.degree)
        if p is None:
            raise UsageError("erdos_renyi needs --p or --degree")
    random = a.family in ("erdos_renyi", "geometric")
    spec = FamilySpec(a.family, a.n, p=p, radius=a.radius, seed=a.seed if random else None)
    if random:
        g, attempts = generate_connected(spec)
        print(f"# connected on attempt {attempts}", file=sys.stderr)
    else:
        g = generate(spec)
    write_edge_list(g, a.output)


def cmd_resist(a, out):
    g = read_edge_list(a.graph)
    if a.pair is not None:
        i, j = a.pair
        if not (0 <= i < g.n and 0 <= j < g.n):
            raise FormatError(f"pair ({i}, {j}) outside 0..{g.n - 1}")
        print(_fmt(effective_resistance(g, i, j, a.tol)), file=out)
        return
    s = resistance_summary(g, mode=a.mode, pair_budget=a.pairs, seed=a.seed, tol=a.tol)
    print(f"omega_max {_fmt(s.omega_max)}", file=out)
    print(f"omega_avg {_fmt(s.omega_avg)}", file=out)
    print(f"trace_pinv {_fmt(s.trace_pinv)}", file=out)
    print(f"pair_source {s.pair_source.value}", file=out)


def cmd_simulate(a, out):
    g = read_edge_list(a.graph)
    w = sample_weights(g.n, a.b, a.seed)
    tally = simulate_comparisons(g, w, a.k, a.seed)
    write_tally(g, tally, a.output)
    write_weights(w.w, a.weights_out)


def cmd_estimate(a, out):
    g = read_edge_list(a.graph)
    tally = read_tally(g, a.tally)
    est = estimate_weights(g, log_ratios(empirical_frequencies(tally)), a.tol)
    write_estimate(est, a.output)


def cmd_error(a, out):
    x, y = read_weights(a.truth), read_weights(a.estimate)
    if x.shape != y.shape:
        raise FormatError(f"weight files differ in length ({x.size} vs {y.size})")
    f = sin_error if a.metric == "sin" else d_error
    print(_fmt(f(y, x)), file=out)


def cmd_bound(a, out):
    g = read_edge_list(a.graph)
    r = theorem1_bound(resistance_summary(g), a.b, a.k, a.delta)
    print(f"term_max {_fmt(r.term_max)}", file=out)
    print(f"term_avg {_fmt(r.term_avg)}", file=out)
    print(f"leading {_fmt(r.leading)}", file=out)
    print(f"k_sufficient {str(r.k_sufficient).lower()}", file=out)
    print(f"constants_note {r.constants_note}", file=out)


def cmd_experiment(a, out):
    try:
        cfg = load_config(a.config)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{a.config}: {exc}") from None
    result = run_experiment(cfg)
    emit_csv(result, a.output)
    if a.svg:
        slope = a.reference_slope
        if slope is None and cfg.sweep_variable in ("k", "degree"):
            slope = -0.5
        emit_svg(result, a.svg, axes="loglog", reference_slope=slope)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="btlres", description="BTL quality estimation and graph resistance tools")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="generate a comparison graph")
    s.add_argument("--family", required=True, choices=[
        "line", "circle", "grid2d", "grid3d", "star", "two_stars", "barbell", "erdos_renyi", "geometric"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float)
    s.add_argument("--degree", type=float)
    s.add_argument("--radius", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("resist", help="effective resistance of a pair, or a summary")
    s.add_argument("graph")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    g.add_argument("--summary", action="store_true")
    s.add_argument("--mode", choices=["exact", "sampled"])
    s.add_argument("--pairs", type=int, help="pair budget in sampled mode")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_resist)

    s = sub.add_parser("simulate", help="sample weights and simulate comparisons")
    s.add_argument("graph")
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--weights-out", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("estimate", help="estimate weights from a tally")
    s.add_argument("graph")
    s.add_argument("tally")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("error", help="error between true and estimated weights")
    s.add_argument("truth")
    s.add_argument("estimate")
    s.add_argument("--metric", choices=["sin", "d"], default="sin")
    s.set_defaults(func=cmd_error)

    s = sub.add_parser("bound", help="leading terms of the error bound")
    s.add_argument("graph")
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--delta", type=float, default=math.exp(-1))
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("experiment", help="run a Monte Carlo sweep from a JSON config")
    s.add_argument("config")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--svg")
    s.add_argument("--reference-slope", type=float)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"btlres: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DisconnectedError, NoConvergenceError) as exc:
        print(f"btlres: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FormatError, GraphError, ConfigError, BadSkewnessError, BadDeltaError,
            ValueError, OSError) as exc:
        print(f"btlres: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0
