import numpy as np

from kernelwedge import NormKind, WeightedSpace, apply, classify, column_mass, norm
from kernelwedge.fileio import load_example

# --------------------------------------------------------------
# Build the running example on the counting measure
# --------------------------------------------------------------

space = WeightedSpace.uniform(2)
S = space.operator(load_example("running_example"))
x = space.vector(np.ones(2))

print(f"S =\n{S.entries}")
print(f"Column masses: {column_mass(S)}")
print(f"Classification: {classify(S).value}")

# --------------------------------------------------------------
# Weighted action and the three lattice norms
# --------------------------------------------------------------

Sx = apply(S, x)
print(f"\nS(1, 1) = {Sx.entries}")
for kind in (NormKind.l1(), NormKind.linf(), NormKind.lp(2.0)):
    print(f"  {kind}: ||x|| = {norm(x, kind):.6f}, ||Sx|| = {norm(Sx, kind):.6f}")

# --------------------------------------------------------------
# The same matrix under non-uniform point masses
# --------------------------------------------------------------

weighted = WeightedSpace(weights=[2.0, 1.0])
T = weighted.operator(S.entries)
print(f"\nWith weights {weighted.weights}: masses {column_mass(T)} -> {classify(T).value}")
