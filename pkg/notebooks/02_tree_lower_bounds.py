# %% [markdown]
# # Lower-bound colorings for trees
#
# For a tree with color classes $t_1 \le t_2$, two block colorings avoid it in
# two colors, and a four-block coloring avoids it in three colors. Here every
# tree on up to 7 vertices is checked against all three.

# %%
import networkx as nx

from ramsey_forge.extremal import (three_color_construction, two_color_construction_A,
                                   two_color_construction_B, verify_free)
from ramsey_forge.graphs import Graph, bipartition
from ramsey_forge.oracle import tree_lower_bounds

for n in range(3, 8):
    for t in nx.nonisomorphic_trees(n):
        tree = Graph(n, list(t.edges()))
        t1, t2 = bipartition(tree).sizes
        colorings = [two_color_construction_A(t1, t2), two_color_construction_B(t2),
                     three_color_construction(t1, t2)]
        free = all(verify_free(c, tree).free for c in colorings)
        two, three = tree_lower_bounds(t1, t2)
        print(f"n={n} classes=({t1},{t2}) bounds two={two} three={three} sizes "
              f"{[c.n for c in colorings]} free={free}")
