import numpy as np

from kernelwedge import (
    StochasticOperatorError,
    WeightedSpace,
    completion_residuals,
    in_cone,
    rank_one_candidate,
    stochastic_completion,
)
from kernelwedge.fileio import format_completion, load_example

space = WeightedSpace.uniform(2)
S = space.operator(load_example("running_example"))

# --------------------------------------------------------------
# Certify f = (1, 1) and complete S to a stochastic majorant
# --------------------------------------------------------------

cert = in_cone(S, space.vector(load_example("ones")))
print(f"f in C(S): {cert.accepted}, slack = {cert.slack}")

completion = stochastic_completion(S, cert)
print("\nCompletion:")
print(format_completion(completion))
for name, value in completion_residuals(S, completion).items():
    print(f"  {name:12s} residual {value:.3g}")

# --------------------------------------------------------------
# Rejections: a zero entry, and a vector with Sf > f
# --------------------------------------------------------------

rejection = in_cone(S, space.vector(load_example("not_positive")))
print(f"\n(1, 0): {rejection.describe()}")

g = space.vector(np.array([0.1, 1.0]))
rejection = in_cone(S, g)
candidate, repairable = rank_one_candidate(S, g)
print(f"(0.1, 1): {rejection.describe()}")
print(f"  rank-one candidate is a stochastic majorant fixing it: {repairable}")

# --------------------------------------------------------------
# A stochastic operator has no completion
# --------------------------------------------------------------

try:
    in_cone(space.operator(load_example("stochastic")), space.vector(np.ones(2)))
except StochasticOperatorError as e:
    print(f"\nStochastic S: {e}")
