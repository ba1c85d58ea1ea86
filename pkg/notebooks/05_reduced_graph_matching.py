# %% [markdown]
# # Connected monochromatic matchings in reduced graphs
#
# In a 3-colored complete graph on $k$ vertices one color class has a
# component holding a matching of roughly $k/4$ edges or more. The run below
# measures how far above that random colorings sit.

# %%
import numpy as np

from ramsey_forge.reduced import ReducedGraph, max_connected_mono_matching, tree_with_matching

for k in (20, 40, 60):
    sizes = [max_connected_mono_matching(ReducedGraph.random_complete(k, 3, seed=s)).size for s in range(100)]
    print(f"k={k}: min {min(sizes)} mean {np.mean(sizes):.1f} target {int(0.9 * k / 4)}")

# %% [markdown]
# The matching grows into a spanning tree of its component, labelled so that
# every $x_i$ sits in the same color class of the tree.

# %%
twm = tree_with_matching(ReducedGraph.random_complete(12, 3, seed=4))
print("color", twm.color, "matching", [(twm.label(x), twm.label(y)) for x, y in twm.matching_edges])
print("tree edges", [(twm.label(u), twm.label(v)) for u, v in twm.tree.edges])
