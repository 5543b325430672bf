"""Graph families used for comparison graphs.

Deterministic families: line, circle, grid2d, grid3d, star, two_stars, barbell.
Random families (seeded): erdos_renyi, geometric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .graph import Graph, GraphError, build_graph, is_connected
from .seeding import stream

FAMILIES = ("line", "circle", "grid2d", "grid3d", "star", "two_stars", "barbell",
            "erdos_renyi", "geometric")
RANDOM_FAMILIES = ("erdos_renyi", "geometric")
GEOMETRIC_C = 1.5


class BadSpecError(ValueError):
    pass


class ExhaustedAttemptsError(RuntimeError):
    pass


class EmptyGraphError(GraphError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    p: float | None = None
    radius: float | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadSpecError(f"unknown family {self.family!r}")
        if self.n < 2:
            raise BadSpecError("n must be at least 2")
        if self.family == "erdos_renyi":
            if self.p is None or not 0.0 < self.p <= 1.0:
                raise BadSpecError("erdos_renyi needs 0 < p <= 1")
        elif self.p is not None:
            raise BadSpecError(f"{self.family} takes no p")
        if self.family != "geometric" and self.radius is not None:
            raise BadSpecError(f"{self.family} takes no radius")
        if self.family == "geometric" and self.radius is not None and self.radius <= 0:
            raise BadSpecError("radius must be positive")
        if self.family in RANDOM_FAMILIES:
            if self.seed is None:
                raise BadSpecError(f"{self.family} needs a seed")
        elif self.seed is not None:
            raise BadSpecError(f"{self.family} is deterministic and takes no seed")

    @property
    def is_random(self) -> bool:
        return self.family in RANDOM_FAMILIES

    def with_seed(self, seed: int) -> "FamilySpec":
        return FamilySpec(self.family, self.n, self.p, self.radius, seed)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(family=d["family"], n=int(d["n"]), p=d.get("p"), radius=d.get("radius"),
                   seed=d.get("seed"))


def erdos_renyi_p(n: int, degree: float) -> float:
    """Edge probability giving expected degree ``(n - 1) p``."""
    return degree / (n - 1)


def geometric_radius(n: int, c: float = GEOMETRIC_C) -> float:
    return c * math.sqrt(math.log(n) / n)


def _line(n):
    return n, [(i, i + 1) for i in range(n - 1)]


def _circle(n):
    if n < 3:
        raise BadSpecError("circle needs n >= 3")
    return n, [(i, (i + 1) % n) for i in range(n)]


def _grid(n, dim):
    side = round(n ** (1.0 / dim))
    while side**dim > n:
        side -= 1
    while (side + 1) ** dim <= n:
        side += 1
    if side < 2:
        raise BadSpecError(f"grid{dim}d needs n >= {2**dim}")
    idx = np.arange(side**dim).reshape((side,) * dim)
    edges = []
    for axis in range(dim):
        a = np.moveaxis(idx, axis, 0)
        edges.append(np.stack([a[:-1].ravel(), a[1:].ravel()], axis=1))
    return side**dim, np.concatenate(edges).tolist()


def _star(n):
    return n, [(0, v) for v in range(1, n)]


def _two_stars(n):
    first = (n + 1) // 2
    edges = [(0, v) for v in range(1, first)]
    edges += [(first, v) for v in range(first + 1, n)]
    edges.append((0, first))
    return n, edges


def _barbell(n):
    s = n // 3
    if s < 1:
        raise BadSpecError("barbell needs n >= 3")
    edges = list(itertools.combinations(range(s), 2))
    edges += [(u + 2 * s, v + 2 * s) for u, v in itertools.combinations(range(s), 2)]
    # chain: last clique-A vertex, the s path vertices, first clique-B vertex
    chain = [s - 1, *range(s, 2 * s), 2 * s]
    edges += list(zip(chain[:-1], chain[1:]))
    return 3 * s, edges


def _erdos_renyi(n, p, seed):
    rng = stream(seed, "erdos_renyi", n)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return n, list(zip(iu[keep].tolist(), ju[keep].tolist()))


def _geometric(n, radius, seed):
    rng = stream(seed, "geometric", n)
    pts = rng.random((n, 2))
    iu, ju = np.triu_indices(n, 1)
    keep = pdist(pts) <= radius
    return n, list(zip(iu[keep].tolist(), ju[keep].tolist()))


def generate(spec: FamilySpec) -> Graph:
    """Build the graph described by ``spec``.

    Grids round ``n`` down to the nearest perfect square/cube and barbells to
    a multiple of three; the realized size is ``graph.n``.
    """
    f, n = spec.family, spec.n
    if f == "line":
        n_out, edges = _line(n)
    elif f == "circle":
        n_out, edges = _circle(n)
    elif f == "grid2d":
        n_out, edges = _grid(n, 2)
    elif f == "grid3d":
        n_out, edges = _grid(n, 3)
    elif f == "star":
        n_out, edges = _star(n)
    elif f == "two_stars":
        n_out, edges = _two_stars(n)
    elif f == "barbell":
        n_out, edges = _barbell(n)
    elif f == "erdos_renyi":
        n_out, edges = _erdos_renyi(n, spec.p, spec.seed)
    else:
        radius = spec.radius if spec.radius is not None else geometric_radius(n)
        n_out, edges = _geometric(n, radius, spec.seed)
    if not edges:
        raise EmptyGraphError(f"{f} draw with n={n} produced no edges")
    return build_graph(n_out, edges)


def generate_connected(spec: FamilySpec, max_attempts: int = 1000) -> tuple[Graph, int]:
    """Resample a random family with seeds ``seed, seed+1, ...`` until connected."""
    if not spec.is_random:
        raise BadSpecError(f"{spec.family} is not a random family")
    for attempt in range(max_attempts):
        try:
            g = generate(spec.with_seed(spec.seed + attempt))
        except EmptyGraphError:
            continue
        if is_connected(g):
            return g, attempt + 1
    raise ExhaustedAttemptsError(f"no connected {spec.family} graph in {max_attempts} attempts")
