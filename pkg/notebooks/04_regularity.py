# %% [markdown]
# # Regular pairs
#
# Small pairs are decided exactly by enumerating subsets; larger ones by a
# randomised search whose witnesses are always genuine.

# %%
from fractions import Fraction

import numpy as np

from ramsey_forge.regularity import (BipartitePair, ClusterPartition, is_eps_regular_exact,
                                     is_eps_regular_sampled, is_super_regular, random_regular_pair,
                                     slice, super_regularize)

matching = BipartitePair.from_matrix(np.eye(8, dtype=bool))
for eps in (Fraction(1, 5), Fraction(3, 10)):
    st = is_eps_regular_exact(matching, eps)
    print(f"8x8 matching at eps={eps}: regular={st.regular} witness={st.witness}")

# %%
blocks = np.zeros((100, 100), dtype=bool)
blocks[:50, :50] = blocks[50:, 50:] = True
print(is_eps_regular_sampled(BipartitePair.from_matrix(blocks), 0.1, trials=2000).to_dict()["regular"])
p = random_regular_pair(200, 0.5, seed=1)
print(is_super_regular(p, 0.2, Fraction(1, 3)).super_regular)

# %%
res = slice(p, p.side_a[:100], p.side_b[:100], Fraction(1, 10))
print("alpha", res.alpha, "eps'", res.eps_prime, "drift", float(res.density_drift))

# %%
# planting two dead vertices and pruning them away
adj = np.ones((20, 20), dtype=bool)
adj[[3, 11]] = False
host = np.zeros((40, 40), dtype=bool)
host[:20, 20:], host[20:, :20] = adj, adj.T
out = super_regularize(ClusterPartition.contiguous(2, 20), host, [(0, 1)], Fraction(1, 10), Fraction(1, 2))
print(out.removed, out.pair_stats[(0, 1)].super_regular)
