import numpy as np

from kernelwedge import (
    NormKind,
    WeightedSpace,
    apply,
    certify,
    cone_mixed_bound_check,
    cone_norm_bound_check,
    log_convex_combine,
    wedge_add,
    wedge_scale,
)
from kernelwedge.fileio import load_example

space = WeightedSpace.uniform(2)
S = space.operator(load_example("running_example"))

f1 = certify(S, space.vector(load_example("ones")))
f2 = certify(S, space.vector(load_example("image_of_ones")))

# --------------------------------------------------------------
# Wedge operations
# --------------------------------------------------------------

print(f"f1 + f2 = {wedge_add(f1, f2).f.entries}")
print(f"3 * f1  = {wedge_scale(f1, 3.0).f.entries}")

# --------------------------------------------------------------
# Logarithmic convexity: f1^(1/2) f2^(1/2) stays in C(S)
# --------------------------------------------------------------

h = log_convex_combine([f1, f2], [0.5, 0.5])
print(f"\nh = {h.f.entries}")
print(f"Sh = {apply(S, h.f).entries} <= h")

# --------------------------------------------------------------
# Norm chains on the wedge
# --------------------------------------------------------------

for kind in (NormKind.l1(), NormKind.linf(), NormKind.lp(3.0)):
    v_norm = cone_norm_bound_check(S, [f1, f2], [0.5, 0.5], kind)
    v_mixed = cone_mixed_bound_check(S, [f1], [f2], 0.5, kind)
    print(f"{kind}: norm-bound violations {v_norm}, mixed-bound violations {v_mixed}")

print(f"\nAll violations zero: {np.allclose(v_norm + v_mixed, 0.0)}")
