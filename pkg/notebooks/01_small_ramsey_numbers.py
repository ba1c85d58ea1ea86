# %% [markdown]
# # Small Ramsey numbers by exhaustive search
#
# The oracle searches edge colorings of $K_n$ edge by edge and prunes as soon
# as the newest edge closes a forbidden copy. For two-color paths the answer
# has the closed form $\lfloor (3n-2)/2 \rfloor$, which gives a check.

# %%
from ramsey_forge.extremal import verify_free
from ramsey_forge.graphs import make_path, make_star
from ramsey_forge.oracle import RamseyQuery, exact_ramsey, gg_formula, witness_coloring

for n in range(2, 6):
    q = RamseyQuery((make_path(n), make_path(n)))
    print(f"P{n}: search {exact_ramsey(q)}, formula {gg_formula(n)}")

# %% [markdown]
# One below the Ramsey number there is always an avoiding coloring; the
# freeness verifier confirms it independently of the search.

# %%
q = RamseyQuery((make_path(5), make_path(5)))
w = witness_coloring(q, 5)
print(verify_free(w, make_path(5)).verdict)
print(w.matrix)

# %%
# three colors and stars
print("P3,P3,P3:", exact_ramsey(RamseyQuery((make_path(3),) * 3)))
print("K1,3 two colors:", exact_ramsey(RamseyQuery((make_star(3), make_star(3)))))
