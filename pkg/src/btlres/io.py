"""Plain-text file formats.

* edge list: first non-comment line ``n m``, then ``m`` lines ``i j``; ``#`` starts a comment line.
* tally CSV: header ``i,j,k,wins``, one row per edge in canonical orientation.
* weight / estimate file: one positive decimal per line in node order;
  estimate files carry ``#`` header lines.
"""

from __future__ import annotations

import csv

import numpy as np

from .btl import ComparisonTally
from .estimator import Estimate
from .graph import Graph, build_graph


class FormatError(ValueError):
    pass


def _data_lines(path):
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if s and not s.startswith("#"):
                yield lineno, s


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for i, j in g.edges:
            fh.write(f"{i} {j}\n")


def read_edge_list(path) -> Graph:
    lines = _data_lines(path)
    try:
        _, header = next(lines)
    except StopIteration:
        raise FormatError(f"{path}: empty edge list") from None
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise FormatError(f"{path}: header must be 'n m', got {header!r}") from None
    edges = []
    for lineno, s in lines:
        parts = s.split()
        if len(parts) != 2:
            raise FormatError(f"{path}:{lineno}: expected 'i j', got {s!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"{path}:{lineno}: non-integer node in {s!r}") from None
    if len(edges) != m:
        raise FormatError(f"{path}: header says {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def write_tally(g: Graph, t: ComparisonTally, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "j", "k", "wins"])
        for (i, j), wins in zip(g.edges, t.wins.tolist()):
            w.writerow([i, j, t.k, wins])


def read_tally(g: Graph, path) -> ComparisonTally:
    """Read a tally and align it with ``g``'s edge order.

    Rows may come in any order; reversed rows ``(j, i)`` are flipped to
    source-wins. Every edge must appear exactly once with the same ``k``.
    """
    wins = np.full(g.m, -1, dtype=np.int64)
    ks = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["i", "j", "k", "wins"]:
            raise FormatError(f"{path}: header must be 'i,j,k,wins'")
        for row in reader:
            try:
                i, j, k, c = (int(row[f]) for f in ("i", "j", "k", "wins"))
            except (TypeError, ValueError):
                raise FormatError(f"{path}: malformed row {row}") from None
            if not 0 <= c <= k:
                raise FormatError(f"{path}: wins {c} outside [0, {k}]")
            if i > j:
                i, j, c = j, i, k - c
            idx = g.edge_index.get((i, j))
            if idx is None:
                raise FormatError(f"{path}: edge ({i}, {j}) not in graph")
            if wins[idx] >= 0:
                raise FormatError(f"{path}: edge ({i}, {j}) listed twice")
            wins[idx] = c
            ks.add(k)
    if (wins < 0).any():
        raise FormatError(f"{path}: {(wins < 0).sum()} graph edges missing from tally")
    if len(ks) != 1:
        raise FormatError(f"{path}: the estimator needs the same k on every edge, got {sorted(ks)}")
    return ComparisonTally(ks.pop(), wins)


def write_weights(w, path, header: list[str] | None = None) -> None:
    with open(path, "w") as fh:
        for line in header or []:
            fh.write(f"# {line}\n")
        for x in np.asarray(w, dtype=float).tolist():
            fh.write(f"{x!r}\n")


def read_weights(path) -> np.ndarray:
    vals = []
    for lineno, s in _data_lines(path):
        try:
            vals.append(float(s))
        except ValueError:
            raise FormatError(f"{path}:{lineno}: not a number: {s!r}") from None
    w = np.array(vals)
    if w.size == 0:
        raise FormatError(f"{path}: no weights")
    if not (np.isfinite(w).all() and (w > 0).all()):
        raise FormatError(f"{path}: weights must be finite and positive")
    return w


def write_estimate(est: Estimate, path) -> None:
    rep = est.solver_report
    write_weights(est.w_hat, path, header=[
        f"normalization: {est.normalization}",
        f"residual: {rep.residual_norm:.6e}",
        f"iterations: {rep.iterations}",
    ])

