"""Bradley-Terry-Luce comparisons on a graph.

Item ``i`` beats item ``j`` with probability ``w_i / (w_i + w_j)``. Every edge
of the comparison graph is played ``k`` times; tallies count wins of the
edge's source (its lower-index endpoint).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .seeding import stream


class BadSkewnessError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class BadDeltaError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    w: np.ndarray
    b: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D array")
        if not (np.isfinite(w).all() and (w > 0).all()):
            raise ValueError("weights must be finite and positive")
        if self.b < 1:
            raise BadSkewnessError(f"skewness bound must be >= 1, got {self.b}")
        if w.max() / w.min() > self.b * (1 + 1e-12):
            raise BadSkewnessError(f"realized skewness {w.max() / w.min():.6g} exceeds bound {self.b}")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.size

    @property
    def skewness(self) -> float:
        return float(self.w.max() / self.w.min())


@dataclass(frozen=True)
class ComparisonTally:
    k: int
    wins: np.ndarray

    def __post_init__(self):
        wins = np.asarray(self.wins, dtype=np.int64)
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if wins.ndim != 1 or (wins < 0).any() or (wins > self.k).any():
            raise ValueError("wins must lie in [0, k]")
        object.__setattr__(self, "wins", wins)


@dataclass(frozen=True)
class FrequencyVector:
    f: np.ndarray
    corrected_edges: frozenset[int]
    # corrected source wins (half-integers allowed); exact complements keep log-ratios antisymmetric
    wins: np.ndarray | None = None
    k: int | None = None


def sample_weights(n: int, b: float, seed: int) -> WeightVector:
    """Weights with ``log w_i`` i.i.d. uniform on ``[0, log b]``."""
    if b < 1:
        raise BadSkewnessError(f"skewness bound must be >= 1, got {b}")
    u = stream(seed, "weights", n).uniform(0.0, math.log(b), size=n)
    return WeightVector(np.exp(u), float(b))


def win_probability(w: WeightVector, i: int, j: int) -> float:
    wi, wj = w.w[i], w.w[j]
    return float(wi / (wi + wj))


def edge_win_probabilities(g: Graph, w: WeightVector) -> np.ndarray:
    e = g.edge_array
    wi, wj = w.w[e[:, 0]], w.w[e[:, 1]]
    return wi / (wi + wj)


def bernoulli_variance_scale(rho):
    """``v = rho + 2 + 1/rho``, the reciprocal of the single-comparison variance."""
    rho = np.asarray(rho, dtype=float)
    if (rho <= 0).any():
        raise ValueError("ratio must be positive")
    v = rho + 2.0 + 1.0 / rho
    return float(v) if v.ndim == 0 else v


def simulate_comparisons(g: Graph, w: WeightVector, k: int, seed: int) -> ComparisonTally:
    """Draw ``Binomial(k, p_ij)`` source wins independently on every edge."""
    if w.n != g.n:
        raise DimensionMismatchError(f"{w.n} weights for {g.n} nodes")
    if k < 1:
        raise ValueError("k must be at least 1")
    p = edge_win_probabilities(g, w)
    wins = stream(seed, "comparisons").binomial(int(k), p)
    return ComparisonTally(int(k), wins)


def empirical_frequencies(t: ComparisonTally) -> FrequencyVector:
    """Win fractions, with half a win moved across on unanimous edges."""
    wins = t.wins.astype(float)
    low = t.wins == 0
    high = t.wins == t.k
    wins[low] = 0.5
    wins[high] = t.k - 0.5
    return FrequencyVector(wins / t.k, frozenset(np.flatnonzero(low | high).tolist()), wins, t.k)


def log_ratios(f: FrequencyVector):
    """``log(F_ij / F_ji)`` per edge, source over target."""
    if isinstance(f, FrequencyVector):
        if f.wins is not None:
            return np.log(f.wins) - np.log(f.k - f.wins)
        f = f.f
    f = np.asarray(f, dtype=float)
    return np.log(f) - np.log1p(-f)


def chernoff_deviation_bound(n: int, k: int, v, delta: float, c1: float = 1.0):
    """Per-edge deviation threshold ``sqrt(C / (k v))`` with ``C = c1 log(n / delta)``.

    A diagnostic with an explicit constant, not a certified bound.
    """
    if not 0.0 < delta <= math.exp(-1):
        raise BadDeltaError(f"delta must lie in (0, 1/e], got {delta}")
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    C = c1 * math.log(n / delta)
    out = np.sqrt(C / (k * np.asarray(v, dtype=float)))
    return float(out) if out.ndim == 0 else out
