# %% [markdown]
# # Bandwidth orderings and balanced interval orders
#
# A grid has bandwidth at most its short side. Cutting a narrow ordering into
# intervals and permuting them keeps every prefix nearly balanced between
# the two color classes.

# %%
from fractions import Fraction

import numpy as np

from ramsey_forge.balance import (BalanceProfile, balanced_permutation, check_window_bounds,
                                  random_balanced_profile)
from ramsey_forge.bandwidth import bandwidth_of_ordering, exact_bandwidth, heuristic_ordering, interval_partition
from ramsey_forge.errors import NoCandidateError
from ramsey_forge.graphs import bipartition, make_grid

print("2x3 exact:", exact_bandwidth(make_grid(2, 3))[0])
g = make_grid(20, 50)
o = heuristic_ordering(g)
print("20x50 heuristic:", bandwidth_of_ordering(g, o))

# %%
profile = BalanceProfile.from_intervals(interval_partition(o, 20), bipartition(g).oriented())
bp = balanced_permutation(profile, Fraction(1, 10))
print("sigma", bp.sigma)
print("largest prefix gap", max(bp.prefix_diffs), "bound", float(Fraction(g.n, 20) + 1))

# %% [markdown]
# Random profiles: the prefix bound can only fail when the totals themselves
# are further apart than $n/\hat\ell + 1$.

# %%
rng = np.random.default_rng(0)
fails = forced = 0
for i in range(300):
    prof = random_balanced_profile(2 * 8**3, 8, Fraction(1, 4), rng)
    t1, t2 = prof.totals
    try:
        ok = check_window_bounds(balanced_permutation(prof, Fraction(1, 4)), prof, 0.5).ok
    except NoCandidateError:
        ok = False
    fails += not ok
    forced += abs(t1 - t2) > Fraction(prof.n, 8) + 1
print(f"{fails} failing profiles, {forced} forced by their totals")
