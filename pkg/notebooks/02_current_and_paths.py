"""
Electrical flow and the edges on simple paths
=============================================

The unit current from i to j only uses edges lying on some simple i-j path.
Those edges are read off the block-cut tree.
"""

# %%
import numpy as np

from btlres.graph import block_cut_tree, brute_force_path_edge_set, build_graph, path_edge_set
from btlres.resistance import effective_resistance, electrical_flow

# two triangles joined by a bridge, with a pendant node hanging off node 0
g = build_graph(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5), (0, 6)])
tree = block_cut_tree(g)
print("blocks:", [sorted(b) for b in tree.block_nodes])
print("cut vertices:", sorted(tree.cut_vertices))

# %%
u = electrical_flow(g, 1, 4)
print("flow:", np.round(u, 4))
print("energy", u @ u, "resistance", effective_resistance(g, 1, 4))

# %% [markdown]
# The pendant edge (0, 6) carries nothing and is not on any simple 1-4 path.

# %%
E = path_edge_set(g, 1, 4, tree)
print([g.edges[e] for e in sorted(E)])
assert E.indices == brute_force_path_edge_set(g, 1, 4).indices
