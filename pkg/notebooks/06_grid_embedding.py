# %% [markdown]
# # Embedding a 20x50 grid into a planted three-colored host
#
# Four clusters of 400 vertices; consecutive clusters carry color 1 as the
# majority. The pipeline clusters the host, finds a connected color-1
# matching, routes the grid along the resulting tree and embeds it greedily.

# %%
from fractions import Fraction

from ramsey_forge.embed import SyntheticSpec, three_color_pipeline
from ramsey_forge.graphs import make_grid, verify_embedding

h = make_grid(20, 50)
rep = three_color_pipeline(SyntheticSpec(ell=2, m=400, d=Fraction(1, 3), seed=0), h)
print("success", rep.success)
for name in ("tree", "dmin", "compatibility"):
    print(name, rep.stages[name])

# %%
hpart = rep.stages["h-partition"]
print("lhat", hpart["lhat"], hpart["lhat_mode"], "xi", hpart["xi_nominal"], "->", hpart["xi_effective"])
print("cluster sizes", hpart["cluster_sizes"], "links", hpart["links"])

# %%
color = rep.stages["verify"]["color"]
print(verify_embedding(rep.objects["coloring"].color_class(color), h, rep.embedding))
print("warnings", rep.warnings)
