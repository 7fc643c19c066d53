from kernelwedge import classify, column_mass, continuous_completion_demo, decay_ratios, discretize, named_kernel, refinement_study

# --------------------------------------------------------------
# Discretize k(x, y) = 1/2 and complete it against f = 1
# --------------------------------------------------------------

for n in (1, 4, 64):
    completion = continuous_completion_demo(grid_n=n)
    print(f"n={n:3d}: lambda={completion.lam:.6f}, A entries in [{completion.A.entries.min():.6f}, {completion.A.entries.max():.6f}]")

# --------------------------------------------------------------
# A kernel that is not substochastic
# --------------------------------------------------------------

_, S = discretize(named_kernel("sum", 2))
print(f"\nk(x, y) = x + y at n=2: masses {column_mass(S)} -> {classify(S).value}")

# --------------------------------------------------------------
# Midpoint refinement of k(x, y) = (x^2 + y^2) / 4
# --------------------------------------------------------------

rows = refinement_study("quadratic", [4, 8, 16, 32, 64])
print("\nRefinement study:")
for row in rows:
    print(f"  n={row.n:3d} mass error {row.column_mass_error:.3e}  holder {row.holder_violation:.1e}  {row.classification.value}")
print(f"Error ratios per doubling: {[round(r, 4) for r in decay_ratios(rows)]}")
