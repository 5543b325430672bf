"""Log-least-squares quality estimate and the error criteria used to judge it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .btl import BadDeltaError
from .graph import Graph, incidence_matrix, laplacian
from .resistance import DEFAULT_TOL, ResistanceSummary, SolveReport, solve_laplacian


class NonFiniteInputError(ValueError):
    pass


class ZeroVectorError(ValueError):
    pass


class NonPositiveEntryError(ValueError):
    pass


@dataclass(frozen=True)
class Estimate:
    w_hat: np.ndarray
    solver_report: SolveReport
    normalization: str = "sum(log w_hat) = 0"

    @property
    def log_w_hat(self) -> np.ndarray:
        return np.log(self.w_hat)


def estimate_weights(g: Graph, log_r, tol: float = DEFAULT_TOL) -> Estimate:
    """Solve ``min_v sum_e (log v_i - log v_j - log R_e)^2`` over positive ``v``.

    The minimizer is ``log v = L^+ B log R``; the returned weights have
    ``sum(log w_hat) == 0``.
    """
    log_r = np.asarray(log_r, dtype=float)
    if log_r.shape != (g.m,):
        raise ValueError(f"expected {g.m} log-ratios, got shape {log_r.shape}")
    if not np.isfinite(log_r).all():
        raise NonFiniteInputError("log-ratios must be finite")
    L = laplacian(g)
    rep = solve_laplacian(g, incidence_matrix(g) @ log_r, tol, L=L)
    return Estimate(w_hat=np.exp(rep.solution), solver_report=rep)


def ls_objective(g: Graph, log_w, log_r) -> float:
    e = g.edge_array
    log_w = np.asarray(log_w, dtype=float)
    r = log_w[e[:, 0]] - log_w[e[:, 1]] - log_r
    return float(r @ r)


def _check_pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("vectors must be 1-D with equal length")
    return x, y


def sin_error(x, y) -> float:
    """``|sin|`` of the angle between ``x`` and ``y``.

    Evaluated as ``||x^ - y^|| ||x^ + y^|| / 2`` on unit vectors, which stays
    accurate for nearly parallel inputs where ``sqrt(1 - cos^2)`` loses half
    the digits.
    """
    x, y = _check_pair(x, y)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ZeroVectorError("sin_error of a zero vector")
    xh, yh = x / nx, y / ny
    s = 0.5 * np.linalg.norm(xh - yh) * np.linalg.norm(xh + yh)
    return float(min(max(s, 0.0), 1.0))


def sin_error_gram(x, y) -> float:
    """``sqrt(1 - cos^2)`` form, clamped to [0, 1]."""
    x, y = _check_pair(x, y)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ZeroVectorError("sin_error of a zero vector")
    c = (x @ y) / (nx * ny)
    return float(math.sqrt(min(max(1.0 - c * c, 0.0), 1.0)))


def d_error(x, y) -> float:
    """Relative 2-norm gap after scaling both vectors to unit 1-norm (``y`` is the reference)."""
    x, y = _check_pair(x, y)
    if (x <= 0).any() or (y <= 0).any():
        raise NonPositiveEntryError("d_error needs entrywise positive vectors")
    xs, ys = x / x.sum(), y / y.sum()
    return float(np.linalg.norm(ys - xs) / np.linalg.norm(ys))


@dataclass(frozen=True)
class BoundReport:
    term_max: float
    term_avg: float
    leading: float
    k_sufficient: bool
    constants_note: str = "absolute constants set to 1; scaling overlay only"


def theorem1_bound(summary: ResistanceSummary, b: float, k: int, delta: float = math.exp(-1)) -> BoundReport:
    """Leading terms ``sqrt(b^2 Omega_max (1 + log 1/delta) / k)`` and the ``b^4 Omega_avg`` variant.

    ``k_sufficient`` flags ``k >= Omega_max b^2 (1 + log 1/delta)``, the
    large-``k`` condition with its constant taken as 1.
    """
    if not 0.0 < delta <= math.exp(-1):
        raise BadDeltaError(f"delta must lie in (0, 1/e], got {delta}")
    if k < 1 or b < 1:
        raise ValueError("need k >= 1 and b >= 1")
    conf = 1.0 + math.log(1.0 / delta)
    t_max = math.sqrt(b**2 * summary.omega_max * conf / k)
    t_avg = math.sqrt(b**4 * summary.omega_avg * conf / k)
    return BoundReport(term_max=t_max, term_avg=t_avg, leading=min(t_max, t_avg),
                       k_sufficient=k >= summary.omega_max * b**2 * conf)
