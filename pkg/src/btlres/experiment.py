"""Seeded Monte Carlo sweeps of estimation error.

A trial draws (or reuses) a connected comparison graph, samples weights,
simulates ``k`` comparisons per edge, runs the estimator and scores it. Every
random choice is keyed by ``(master seed, sweep value, trial index, purpose)``,
so results do not depend on the order in which trials are executed.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from . import __version__
from .btl import empirical_frequencies, log_ratios, sample_weights, simulate_comparisons
from .estimator import BoundReport, d_error, estimate_weights, sin_error, theorem1_bound
from .generators import FamilySpec, erdos_renyi_p, generate, generate_connected
from .graph import Graph, require_connected
from .resistance import DENSE_EIG_MAX_N, ResistanceSummary, resistance_summary
from .seeding import stream

SWEEP_VARIABLES = ("k", "n", "degree")
METRICS = {"sin": sin_error, "d": d_error}


class ConfigError(ValueError):
    pass


class DegenerateFitError(ValueError):
    pass


class EmptyResultError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    sweep_variable: str
    sweep_values: tuple
    b: float
    trials: int
    seed: int
    n: int | None = None
    k: int | None = None
    p: float | None = None
    degree: float | None = None
    radius: float | None = None
    metric: str = "sin"
    resample_graph: bool = True
    delta: float = math.exp(-1)

    def __post_init__(self):
        object.__setattr__(self, "sweep_values", tuple(self.sweep_values))
        vals = self.sweep_values
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if not vals or any(v <= 0 for v in vals) or any(a >= b for a, b in zip(vals, vals[1:])):
            raise ConfigError("sweep values must be positive and strictly increasing")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.metric not in METRICS:
            raise ConfigError(f"metric must be one of {sorted(METRICS)}")
        if self.sweep_variable != "k" and self.k is None:
            raise ConfigError("k is required unless it is swept")
        if self.sweep_variable != "n" and self.n is None:
            raise ConfigError("n is required unless it is swept")
        if self.sweep_variable == "degree" and self.family != "erdos_renyi":
            raise ConfigError("degree sweeps apply to erdos_renyi only")
        if self.family == "erdos_renyi" and self.sweep_variable != "degree":
            if (self.p is None) == (self.degree is None):
                raise ConfigError("erdos_renyi needs exactly one of p or degree")
        # fail early on a bad family/parameter combination
        self.family_spec(self.sweep_values[0], 0)

    def value_of(self, name: str, value):
        return value if self.sweep_variable == name else getattr(self, name)

    def family_spec(self, value, seed: int | None) -> FamilySpec:
        n = int(self.value_of("n", value))
        p = None
        if self.family == "erdos_renyi":
            degree = self.value_of("degree", value)
            p = self.p if degree is None else erdos_renyi_p(n, degree)
            p = min(p, 1.0)
        random = self.family in ("erdos_renyi", "geometric")
        return FamilySpec(self.family, n, p=p, radius=self.radius, seed=seed if random else None)

    def to_json(self) -> dict:
        d = {"family": self.family, "n": self.n, "b": self.b, "k": self.k,
             "sweep": {"variable": self.sweep_variable, "values": list(self.sweep_values)},
             "trials": self.trials, "seed": self.seed, "metric": self.metric,
             "resample_graph": self.resample_graph}
        if self.degree is not None:
            d["p_or_degree"] = self.degree
        elif self.p is not None:
            d["p_or_degree"] = self.p
        if self.radius is not None:
            d["radius"] = self.radius
        if self.delta != math.exp(-1):
            d["delta"] = self.delta
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentConfig":
        """Parse the JSON config document.

        ``p_or_degree`` is read as an edge probability when below 1 and as an
        expected degree otherwise; explicit ``p`` / ``degree`` keys also work.
        """
        try:
            sweep = d["sweep"]
            p, degree = d.get("p"), d.get("degree")
            pod = d.get("p_or_degree")
            if pod is not None:
                if pod < 1:
                    p = pod
                else:
                    degree = pod
            kw = dict(family=d["family"], sweep_variable=sweep["variable"],
                      sweep_values=tuple(sweep["values"]), b=float(d["b"]),
                      trials=int(d["trials"]), seed=int(d["seed"]),
                      n=d.get("n"), k=d.get("k"), p=p, degree=degree, radius=d.get("radius"),
                      metric=d.get("metric", "sin"),
                      resample_graph=bool(d.get("resample_graph", True)))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from None
        if "delta" in d:
            kw["delta"] = float(d["delta"])
        return cls(**kw)


@dataclass(frozen=True)
class Row:
    value: float
    mean_error: float
    std: float
    trials: int
    mean_omega_avg: float
    mean_omega_max: float
    bound: BoundReport


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[Row, ...]
    provenance: dict = field(default_factory=dict)

    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.rows], dtype=float)

    def mean_errors(self) -> np.ndarray:
        return np.array([r.mean_error for r in self.rows], dtype=float)


@dataclass(frozen=True)
class TrialOutcome:
    error: float
    summary: ResistanceSummary


def _child_seed(config: ExperimentConfig, value, trial_index: int | None, purpose: str) -> int:
    tags = [float(value)] + ([] if trial_index is None else [trial_index]) + [purpose]
    return int(stream(config.seed, *tags).integers(2**63))


def _summarize(g: Graph) -> ResistanceSummary:
    mode = "exact" if g.n <= DENSE_EIG_MAX_N else "sampled"
    return resistance_summary(g, mode=mode, seed=0)


@lru_cache(maxsize=32)
def _shared_graph(spec: FamilySpec) -> tuple[Graph, ResistanceSummary]:
    if spec.is_random:
        g, _ = generate_connected(spec)
    else:
        g = generate(spec)
        require_connected(g)
    return g, _summarize(g)


def _graph_for(config: ExperimentConfig, value, trial_index: int) -> tuple[Graph, ResistanceSummary]:
    if config.family not in ("erdos_renyi", "geometric"):
        return _shared_graph(config.family_spec(value, None))
    if not config.resample_graph:
        return _shared_graph(config.family_spec(value, _child_seed(config, value, None, "graph")))
    g, _ = generate_connected(config.family_spec(value, _child_seed(config, value, trial_index, "graph")))
    return g, _summarize(g)


def trial_outcome(config: ExperimentConfig, value, trial_index: int) -> TrialOutcome:
    g, summary = _graph_for(config, value, trial_index)
    w = sample_weights(g.n, config.b, _child_seed(config, value, trial_index, "weights"))
    k = int(config.value_of("k", value))
    tally = simulate_comparisons(g, w, k, _child_seed(config, value, trial_index, "comparisons"))
    est = estimate_weights(g, log_ratios(empirical_frequencies(tally)))
    return TrialOutcome(METRICS[config.metric](est.w_hat, w.w), summary)


def run_trial(config: ExperimentConfig, value, trial_index: int) -> float:
    """Error of one seeded trial; deterministic in its arguments."""
    return trial_outcome(config, value, trial_index).error


def _call(args):
    return trial_outcome(*args)


def run_experiment(config: ExperimentConfig,
                   mapper: Callable[[Callable, Iterable], Iterable] | None = None) -> ExperimentResult:
    """Run every (sweep value, trial) pair and aggregate per sweep value.

    ``mapper`` replaces the builtin ``map`` for executing trials, e.g. a
    process pool's ``map``; it must return results in input order.
    """
    jobs = [(config, v, t) for v in config.sweep_values for t in range(config.trials)]
    outcomes = list((mapper or map)(_call, jobs))
    rows = []
    for s, value in enumerate(config.sweep_values):
        chunk = outcomes[s * config.trials:(s + 1) * config.trials]
        err = np.array([o.error for o in chunk])
        om_avg = float(np.mean([o.summary.omega_avg for o in chunk]))
        om_max = float(np.mean([o.summary.omega_max for o in chunk]))
        n_nodes = chunk[0].summary.n
        mean_summary = ResistanceSummary(n=n_nodes, omega_max=om_max, omega_avg=om_avg,
                                         trace_pinv=0.5 * (n_nodes - 1) * om_avg,
                                         pair_source=chunk[0].summary.pair_source)
        k = int(config.value_of("k", value))
        rows.append(Row(value=value, mean_error=float(err.mean()),
                        std=float(err.std(ddof=1)) if err.size > 1 else 0.0,
                        trials=config.trials, mean_omega_avg=om_avg, mean_omega_max=om_max,
                        bound=theorem1_bound(mean_summary, config.b, k, config.delta)))
    return ExperimentResult(rows=tuple(rows),
                            provenance={"config": config.to_json(), "version": __version__})


def fit_loglog_slope(result: ExperimentResult) -> float:
    """Least-squares slope of log(mean error) against log(sweep value)."""
    x, y = result.values(), result.mean_errors()
    if x.size < 3:
        raise DegenerateFitError("need at least 3 rows")
    if (x <= 0).any() or (y <= 0).any():
        raise DegenerateFitError("log-log fit needs positive values and errors")
    if np.ptp(np.log(x)) == 0:
        raise DegenerateFitError("sweep values are all equal")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


CSV_COLUMNS = ("sweep_value", "mean_error", "std", "trials", "omega_avg", "bound")


def emit_csv(result: ExperimentResult, path) -> None:
    if not result.rows:
        raise EmptyResultError("nothing to write")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in result.rows:
            w.writerow([repr(r.value), repr(r.mean_error), repr(r.std), r.trials,
                        repr(r.mean_omega_avg), repr(r.bound.leading)])


def emit_svg(result: ExperimentResult, path, axes: str = "loglog",
             reference_slope: float | None = None, xlabel: str | None = None) -> None:
    """Error-vs-sweep plot; optional dashed power-law guide through the first point."""
    if not result.rows:
        raise EmptyResultError("nothing to plot")
    if axes not in ("linear", "loglog"):
        raise ValueError("axes must be 'linear' or 'loglog'")
    import matplotlib
    from matplotlib.figure import Figure

    x, y = result.values(), result.mean_errors()
    std = np.array([r.std for r in result.rows])
    fig = Figure(figsize=(5, 3.75))
    ax = fig.add_subplot()
    ax.errorbar(x, y, yerr=std, marker="o", linestyle="-", capsize=3, label="mean error")
    if reference_slope is not None:
        xs = np.geomspace(x[0], x[-1], 50) if axes == "loglog" else np.linspace(x[0], x[-1], 50)
        ax.plot(xs, y[0] * (xs / x[0]) ** reference_slope, "k--",
                label=f"slope {reference_slope:g}")
    if axes == "loglog":
        ax.set_xscale("log")
        ax.set_yscale("log")
    var = result.provenance.get("config", {}).get("sweep", {}).get("variable", "sweep value")
    ax.set_xlabel(xlabel or var)
    ax.set_ylabel("error")
    ax.legend()
    fig.tight_layout()
    with matplotlib.rc_context({"svg.hashsalt": "btlres"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return ExperimentConfig.from_json(json.load(fh))


def reference_configs(seed: int = 2019) -> dict[str, ExperimentConfig]:
    """Desk-scale versions of the published sweeps."""
    return {
        "er_k_sweep": ExperimentConfig("erdos_renyi", "k", (10, 100, 1000, 10000), b=10,
                                       trials=100, seed=seed, n=100, degree=10),
        "er_degree_sweep": ExperimentConfig("erdos_renyi", "degree", (8, 16, 32, 64), b=5,
                                            trials=50, seed=seed, n=100, k=100),
        "er_n_sweep": ExperimentConfig("erdos_renyi", "n", (50, 100, 200, 400), b=5,
                                       trials=50, seed=seed, k=100, degree=15),
        "grid3d_n_sweep": ExperimentConfig("grid3d", "n", (64, 216, 512), b=5,
                                           trials=200, seed=seed, k=100),
        "grid2d_n_sweep": ExperimentConfig("grid2d", "n", (64, 256, 1024), b=5,
                                           trials=200, seed=seed, k=100),
    }
