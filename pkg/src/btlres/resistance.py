"""Laplacian pseudoinverse solves and effective resistances.

The graph is treated as an electrical network with a unit resistor on every
edge. All solves work in the subspace orthogonal to the all-ones vector, which
is where the Moore-Penrose pseudoinverse of a connected Laplacian lives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Graph, incidence_matrix, laplacian, require_connected
from .seeding import stream

DEFAULT_TOL = 1e-10
EXACT_MAX_N = 512
DENSE_EIG_MAX_N = 1024
ORACLE_MAX_N = 200


class NoConvergenceError(ArithmeticError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(f"CG did not converge in {iterations} iterations (relative residual {residual:.3g})")
        self.iterations = iterations
        self.residual = residual


class TooLargeError(ValueError):
    pass


class PairSource(str, enum.Enum):
    EXACT_ALL_PAIRS = "exact_all_pairs"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class SolveReport:
    solution: np.ndarray
    residual_norm: float
    iterations: int


@dataclass(frozen=True)
class ResistanceSummary:
    n: int
    omega_max: float
    omega_avg: float
    trace_pinv: float
    pair_source: PairSource


def _center(x: np.ndarray) -> np.ndarray:
    return x - x.mean(axis=0, keepdims=True)


def _pcg_block(L, dinv, rhs, x, tol, max_iter):
    """Jacobi-preconditioned CG run column-wise on a block of right-hand sides.

    ``rhs`` and ``x`` must already be centered. Returns (x, iterations, relative residuals).
    """
    bnorm = np.linalg.norm(rhs, axis=0)
    scale = np.where(bnorm > 0, bnorm, 1.0)
    R = rhs - L @ x
    R = _center(R)
    rel = np.linalg.norm(R, axis=0) / scale
    active = np.flatnonzero(rel > tol)
    Z = _center(dinv[:, None] * R[:, active])
    P = Z.copy()
    rz = np.einsum("ij,ij->j", R[:, active], Z)
    it = 0
    while active.size:
        if it >= max_iter:
            return x, it, rel
        AP = L @ P
        alpha = rz / np.einsum("ij,ij->j", P, AP)
        x[:, active] += alpha * P
        R[:, active] -= alpha * AP
        it += 1
        rel[active] = np.linalg.norm(R[:, active], axis=0) / scale[active]
        keep = rel[active] > tol
        Z = _center(dinv[:, None] * R[:, active[keep]])
        rz_new = np.einsum("ij,ij->j", R[:, active[keep]], Z)
        beta = rz_new / rz[keep]
        P = Z + beta * P[:, keep]
        rz = rz_new
        active = active[keep]
    return x, it, rel


def solve_laplacian(g: Graph, rhs, tol: float = DEFAULT_TOL, max_iter: int | None = None,
                    *, L=None) -> SolveReport:
    """Compute ``L^+ rhs`` by preconditioned conjugate gradient.

    ``rhs`` may be an ``n``-vector or an ``n x r`` block; its component along
    the all-ones vector is discarded. The returned solution has zero mean per
    column and satisfies ``||L x - P rhs|| <= tol ||P rhs||`` column-wise.
    """
    require_connected(g)
    if L is None:
        L = laplacian(g)
    b = np.asarray(rhs, dtype=float)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    if b.shape[0] != g.n:
        raise ValueError(f"rhs has {b.shape[0]} rows, graph has {g.n} nodes")
    if max_iter is None:
        max_iter = 20 * g.n
    b = _center(b)
    dinv = 1.0 / L.diagonal()
    x = np.zeros_like(b)
    total = 0
    # recursive residuals drift; re-check against the true residual and restart if needed
    for _ in range(4):
        x, it, _ = _pcg_block(L, dinv, b, x, tol, max_iter - total)
        total += it
        x = _center(x)
        true_rel = np.linalg.norm(_center(b - L @ x), axis=0) / np.where(
            np.linalg.norm(b, axis=0) > 0, np.linalg.norm(b, axis=0), 1.0)
        if (true_rel <= tol).all():
            break
        if total >= max_iter:
            raise NoConvergenceError(total, float(true_rel.max()))
    else:
        raise NoConvergenceError(total, float(true_rel.max()))
    res = float(true_rel.max())
    return SolveReport(solution=x[:, 0] if vector else x, residual_norm=res, iterations=total)


def _dipole(n: int, i: int, j: int) -> np.ndarray:
    d = np.zeros(n)
    d[i] += 1.0
    d[j] -= 1.0
    return d


def effective_resistance(g: Graph, i: int, j: int, tol: float = DEFAULT_TOL) -> float:
    if i == j:
        return 0.0
    d = _dipole(g.n, i, j)
    x = solve_laplacian(g, d, tol).solution
    return float(d @ x)


def pseudoinverse(g: Graph, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Dense ``L^+`` assembled from ``n`` CG solves against the basis vectors."""
    X = solve_laplacian(g, np.eye(g.n), tol).solution
    return 0.5 * (X + X.T)


def resistances_from_pinv(pinv: np.ndarray) -> np.ndarray:
    d = np.diag(pinv)
    omega = d[:, None] + d[None, :] - 2.0 * pinv
    np.fill_diagonal(omega, 0.0)
    return np.maximum(omega, 0.0)


def resistance_matrix(g: Graph, tol: float = DEFAULT_TOL) -> np.ndarray:
    """All-pairs effective resistance matrix."""
    return resistances_from_pinv(pseudoinverse(g, tol))


def pinv_trace_spectral(g: Graph) -> float:
    """``tr(L^+)`` as the sum of reciprocal nonzero Laplacian eigenvalues."""
    require_connected(g)
    lam = np.linalg.eigvalsh(laplacian(g).toarray())
    return float(np.sum(1.0 / lam[1:]))


def resistance_summary(g: Graph, mode: str | None = None, pair_budget: int | None = None,
                       seed: int = 0, tol: float = DEFAULT_TOL) -> ResistanceSummary:
    """Largest and average effective resistance and ``tr(L^+)``.

    ``mode`` is ``"exact"`` (all unordered pairs) or ``"sampled"`` (``pair_budget``
    uniform pairs drawn without replacement); by default exact up to
    ``EXACT_MAX_N`` nodes. The average is over unordered pairs ``i < j``.
    """
    require_connected(g)
    n = g.n
    if mode is None:
        mode = "exact" if n <= EXACT_MAX_N else "sampled"
    iu, ju = np.triu_indices(n, 1)
    if mode == "exact":
        omega = resistance_matrix(g, tol)[iu, ju]
        source = PairSource.EXACT_ALL_PAIRS
    elif mode == "sampled":
        total = iu.size
        if pair_budget is None:
            pair_budget = min(total, 4 * n)
        if pair_budget < 1:
            raise ValueError("pair_budget must be positive")
        pick = np.sort(stream(seed, "resistance-pairs").choice(total, size=min(pair_budget, total), replace=False))
        D = np.zeros((n, pick.size))
        cols = np.arange(pick.size)
        D[iu[pick], cols] = 1.0
        D[ju[pick], cols] = -1.0
        X = solve_laplacian(g, D, tol).solution
        omega = np.einsum("ij,ij->j", D, X)
        source = PairSource.SAMPLED
    else:
        raise ValueError(f"unknown mode {mode!r}")
    omega_avg = float(omega.mean())
    omega_max = float(omega.max())
    if n <= DENSE_EIG_MAX_N:
        trace = pinv_trace_spectral(g)
    else:
        trace = 0.5 * (n - 1) * omega_avg
    return ResistanceSummary(n=n, omega_max=omega_max, omega_avg=omega_avg,
                             trace_pinv=trace, pair_source=source)


def electrical_flow(g: Graph, i: int, j: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Edge currents for one unit injected at ``i`` and extracted at ``j``.

    Signs follow the canonical orientation: positive means current runs from
    the lower-index endpoint to the higher one.
    """
    if i == j:
        raise ValueError("electrical_flow needs distinct endpoints")
    x = solve_laplacian(g, _dipole(g.n, i, j), tol).solution
    return incidence_matrix(g).T @ x


def dense_pinv_oracle(g: Graph, max_n: int = ORACLE_MAX_N) -> np.ndarray:
    """``L^+ = (L + J/n)^-1 - J/n`` by dense elimination. Test oracle."""
    require_connected(g)
    n = g.n
    if n > max_n:
        raise TooLargeError(f"dense oracle limited to n <= {max_n}")
    J = np.full((n, n), 1.0 / n)
    return np.linalg.solve(laplacian(g).toarray() + J, np.eye(n)) - J
