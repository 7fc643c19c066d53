from kernelwedge import PropertySuite, TrialConfig, load_settings

settings = load_settings()

# --------------------------------------------------------------
# Seeded randomized certification of every inequality
# --------------------------------------------------------------

config = TrialConfig(trials=100, seed=settings.seed, tol=settings.violation_tol)
suite = PropertySuite(config, verbose=True)

print("=" * 70)
print(f"Property suite: {config.trials} trials per property, seed {config.seed}")
print("=" * 70)

for report in suite.run():
    print(report.line())

failed = [r.property_name for r in suite.reports if not r.passed]
print(f"\n{'All properties passed.' if not failed else 'Failed: ' + ', '.join(failed)}")
