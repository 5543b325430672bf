"""Undirected comparison graphs with a canonical edge orientation.

Edges are stored as ``(i, j)`` with ``i < j`` and sorted lexicographically;
the position of an edge in :attr:`Graph.edges` is its column in the incidence
matrix, so every edge-indexed vector in the package uses that order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp


class GraphError(ValueError):
    """Base class for invalid graph input."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class NodeOutOfRangeError(GraphError):
    pass


class DisconnectedError(GraphError):
    """Raised where an operation needs a connected graph."""


class SameNodeError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    _adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self._adj], dtype=np.int64)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` int array of oriented edges."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical :class:`Graph` from unordered node pairs.

    Raises
    ------
    SelfLoopError, DuplicateEdgeError, NodeOutOfRangeError
        On malformed input. ``n >= 2`` and at least one edge are required.
    """
    n = int(n)
    if n < 2:
        raise GraphError(f"need at least 2 nodes, got {n}")
    seen: set[tuple[int, int]] = set()
    for a, b in edge_list:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise NodeOutOfRangeError(f"edge ({a}, {b}) outside 0..{n - 1}")
        if a == b:
            raise SelfLoopError(f"self-loop at node {a}")
        e = (a, b) if a < b else (b, a)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
    if not seen:
        raise GraphError("graph has no edges")
    edges = tuple(sorted(seen))
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return Graph(n=n, edges=edges, _adj=tuple(tuple(sorted(x)) for x in adj))


def incidence_matrix(g: Graph) -> sp.csc_matrix:
    """Signed ``n x m`` incidence matrix: +1 at the source (lower index), -1 at the target."""
    e = g.edge_array
    cols = np.repeat(np.arange(g.m), 2)
    rows = e.ravel()
    vals = np.tile([1.0, -1.0], g.m)
    return sp.csc_matrix((vals, (rows, cols)), shape=(g.n, g.m))


def laplacian(g: Graph) -> sp.csr_matrix:
    B = incidence_matrix(g)
    return (B @ B.T).tocsr()


def _components(g: Graph) -> np.ndarray:
    label = np.full(g.n, -1, dtype=np.int64)
    c = 0
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = c
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if label[v] < 0:
                    label[v] = c
                    queue.append(v)
        c += 1
    return label


def is_connected(g: Graph) -> bool:
    return bool((_components(g) == 0).all())


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedError("comparison graph is not connected")


@dataclass(frozen=True)
class EdgeSet:
    """Set of edge positions ``0..m-1`` of a particular graph."""

    indices: frozenset[int]
    m: int

    def __post_init__(self):
        if any(not 0 <= k < self.m for k in self.indices):
            raise ValueError("edge index out of range")

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, k: object) -> bool:
        return k in self.indices

    def __iter__(self):
        return iter(sorted(self.indices))

    def mask(self) -> np.ndarray:
        out = np.zeros(self.m, dtype=bool)
        out[list(self.indices)] = True
        return out


@dataclass(frozen=True)
class BlockCutTree:
    """Biconnected blocks of a connected graph and how they hang together.

    ``blocks[b]`` lists edge positions of block ``b``; ``cut_vertices`` are the
    articulation points. Tree nodes are numbered blocks first, then cut vertices.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_nodes: tuple[frozenset[int], ...]
    cut_vertices: tuple[int, ...]
    tree_adj: tuple[tuple[int, ...], ...]
    node_home: tuple[int, ...]


def _biconnected_blocks(g: Graph) -> list[list[int]]:
    """Iterative Hopcroft-Tarjan; returns blocks as lists of edge positions."""
    n = g.n
    eidx = g.edge_index
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    blocks: list[list[int]] = []
    estack: list[int] = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        # frame: (vertex, parent, neighbor iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, parent, pos = stack[-1]
            nbrs = g.adjacency[u]
            if pos < len(nbrs):
                stack[-1] = (u, parent, pos + 1)
                v = nbrs[pos]
                if v == parent:
                    continue
                e = eidx[(u, v) if u < v else (v, u)]
                if disc[v] < 0:
                    estack.append(e)
                    disc[v] = low[v] = t
                    t += 1
                    stack.append((v, u, 0))
                elif disc[v] < disc[u]:
                    estack.append(e)
                    low[u] = min(low[u], disc[v])
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                e_tree = eidx[(parent, u) if parent < u else (u, parent)]
                block = []
                while True:
                    e = estack.pop()
                    block.append(e)
                    if e == e_tree:
                        break
                blocks.append(sorted(block))
    return blocks


def block_cut_tree(g: Graph) -> BlockCutTree:
    require_connected(g)
    blocks = _biconnected_blocks(g)
    edges = g.edges
    block_nodes = []
    membership: list[list[int]] = [[] for _ in range(g.n)]
    for b, blk in enumerate(blocks):
        nodes = frozenset(v for k in blk for v in edges[k])
        block_nodes.append(nodes)
        for v in nodes:
            membership[v].append(b)
    cuts = tuple(v for v in range(g.n) if len(membership[v]) > 1)
    nb = len(blocks)
    tree_adj: list[list[int]] = [[] for _ in range(nb + len(cuts))]
    home = [-1] * g.n
    for c, v in enumerate(cuts):
        home[v] = nb + c
        for b in membership[v]:
            tree_adj[nb + c].append(b)
            tree_adj[b].append(nb + c)
    for v in range(g.n):
        if home[v] < 0:
            home[v] = membership[v][0]
    return BlockCutTree(
        blocks=tuple(tuple(b) for b in blocks),
        block_nodes=tuple(block_nodes),
        cut_vertices=cuts,
        tree_adj=tuple(tuple(a) for a in tree_adj),
        node_home=tuple(home),
    )


def path_edge_set(g: Graph, i: int, j: int, tree: BlockCutTree | None = None) -> EdgeSet:
    """Edges lying on at least one simple path from ``i`` to ``j``.

    An edge qualifies iff its biconnected block sits on the block-cut tree
    path between the tree nodes holding ``i`` and ``j``.
    """
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise NodeOutOfRangeError(f"nodes ({i}, {j}) outside 0..{g.n - 1}")
    if i == j:
        raise SameNodeError("path_edge_set needs distinct endpoints")
    if tree is None:
        tree = block_cut_tree(g)
    src, dst = tree.node_home[i], tree.node_home[j]
    prev = {src: -1}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v in tree.tree_adj[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    nb = len(tree.blocks)
    out: set[int] = set()
    u = dst
    while u != -1:
        if u < nb:
            out.update(tree.blocks[u])
        u = prev[u]
    return EdgeSet(frozenset(out), g.m)


def brute_force_path_edge_set(g: Graph, i: int, j: int) -> EdgeSet:
    """Enumerate every simple ``i``-``j`` path by DFS. Exponential; tests only."""
    eidx = g.edge_index
    found: set[int] = set()
    path_edges: list[int] = []
    on_path = [False] * g.n

    def dfs(u: int) -> None:
        if u == j:
            found.update(path_edges)
            return
        on_path[u] = True
        for v in g.adjacency[u]:
            if not on_path[v]:
                path_edges.append(eidx[(u, v) if u < v else (v, u)])
                dfs(v)
                path_edges.pop()
        on_path[u] = False

    dfs(i)
    return EdgeSet(frozenset(found), g.m)


def shortest_path_lengths(g: Graph, source: int) -> np.ndarray:
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist
