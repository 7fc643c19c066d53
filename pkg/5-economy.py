import numpy as np

from kernelwedge import (
    Bundle,
    Economy,
    WeightedSpace,
    bundle_value,
    impact_matrix,
    in_cone,
    leontief_solve,
    pagerank_solve,
    preference_vector,
)
from kernelwedge.fileio import load_example

# --------------------------------------------------------------
# Commodity bundles valued at prices w
# --------------------------------------------------------------

prices = WeightedSpace(weights=[1.0, 4.0])
x1 = Bundle(x=prices.vector([1.0, 8.0]))
x2 = Bundle(x=prices.vector([1.0, 1.0]))
pref = preference_vector([x1, x2], [1 / 3, 2 / 3])
print(f"Preference vector: {pref.x.entries}")
for name, b in (("x1", x1), ("x2", x2), ("pref", pref)):
    total, largest = bundle_value(b)
    print(f"  {name:5s} total value {total:.4f}, most valuable good {largest:.4f}")

# --------------------------------------------------------------
# Open Leontief economy
# --------------------------------------------------------------

space = WeightedSpace.uniform(2)
economy = Economy(technology=space.operator(load_example("leontief")), labels=("steel", "coal"))
demand = space.vector(np.ones(2))
supply = leontief_solve(economy, demand)
print("\nLeontief supply for unit demand:")
for label, p in zip(economy.labels, supply.entries):
    print(f"  {label}: {p:.6f}")
print(f"Impact matrix:\n{impact_matrix(economy).entries}")

# --------------------------------------------------------------
# PageRank steady state p = x + Sp, and its place in C(S)
# --------------------------------------------------------------

S = space.operator(load_example("pagerank"))
p = pagerank_solve(S, space.vector(np.ones(2)))
print(f"\nPageRank steady state: {p.entries}")
print(f"Steady state is in C(S): {in_cone(S, p).accepted}")
