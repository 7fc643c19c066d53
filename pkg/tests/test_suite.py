import math

import pytest

from kernelwedge import PreconditionError, PropertySuite, TrialConfig, run_property_suite
from kernelwedge.suite import PROPERTIES

SMALL = dict(n_range=(2, 6), m_range=(1, 3), trials=5, seed=7)


def test_property_registry_order():
    assert list(PROPERTIES) == [
        "young_inequality",
        "young_argmin",
        "holder_seminorm",
        "integral_holder",
        "kernel_holder",
        "kernel_seminorm_chain",
        "kernel_sum_split",
        "sum_split",
        "sum_split_seminorm",
        "stochastic_completion",
        "wedge_closure",
        "log_convex_closure",
        "cone_norm_bound",
        "cone_mixed_bound",
        "transform_preservation",
    ]


@pytest.mark.parametrize("name", list(PROPERTIES))
def test_single_trial_passes(name):
    (report,) = run_property_suite(TrialConfig(trials=1, properties=(name,)))
    assert report.property_name == name
    assert report.trials_run == 1
    assert report.passed, report.line()


def test_small_run_passes():
    reports = run_property_suite(TrialConfig(**SMALL))
    assert [r.property_name for r in reports] == list(PROPERTIES)
    assert all(r.passed for r in reports), [r.line() for r in reports if not r.passed]
    assert all(r.worst_violation <= 1e-10 for r in reports)


def test_runs_are_deterministic():
    first = run_property_suite(TrialConfig(**SMALL))
    second = run_property_suite(TrialConfig(**SMALL))
    assert [r.line() for r in first] == [r.line() for r in second]


def test_report_does_not_depend_on_selection():
    full = {r.property_name: r for r in run_property_suite(TrialConfig(**SMALL))}
    (alone,) = run_property_suite(TrialConfig(**SMALL, properties=("cone_norm_bound",)))
    assert alone == full["cone_norm_bound"]


def test_unknown_property():
    with pytest.raises(PreconditionError):
        PropertySuite(TrialConfig(properties=("no_such_property",)))


def test_violations_are_reported(monkeypatch):
    monkeypatch.setitem(PROPERTIES, "sum_split", lambda suite, rng: 0.5)
    (report,) = run_property_suite(TrialConfig(**SMALL, properties=("sum_split",)))
    assert not report.passed
    assert report.failures == 5
    assert report.worst_violation == 0.5
    assert report.worst_seed == 7
    assert report.line() == "FAIL sum_split trials=5 worst=0.5 seed=7"


def test_raising_trial_counts_as_infinite_violation(monkeypatch):
    def explode(suite, rng):
        raise PreconditionError("boom")

    monkeypatch.setitem(PROPERTIES, "sum_split", explode)
    suite = PropertySuite(TrialConfig(**SMALL, properties=("sum_split",)))
    (report,) = suite.run()
    assert math.isinf(report.worst_violation)
    assert report.failures == 5
    assert suite.reports == [report]


def test_pass_line_format():
    (report,) = run_property_suite(TrialConfig(trials=2, seed=3, properties=("sum_split",)))
    assert report.line().startswith("PASS sum_split trials=2 worst=")
    assert report.line().endswith(f"seed={report.worst_seed}")


@pytest.mark.slow
def test_full_acceptance_run():
    reports = run_property_suite(TrialConfig())
    assert all(r.passed for r in reports), [r.line() for r in reports if not r.passed]
