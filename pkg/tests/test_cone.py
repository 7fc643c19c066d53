import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kernelwedge import (
    ConeCertificate,
    ConeRejected,
    ContractViolation,
    InternalConsistencyError,
    PreconditionError,
    StochasticOperatorError,
    WeightedSpace,
    certify,
    completion_residuals,
    in_cone,
    log_convex_combine,
    majorant_fixes,
    rank_one_candidate,
    stochastic_completion,
    wedge_add,
    wedge_scale,
)
from kernelwedge.cone import _reverify
from kernelwedge.inequalities import random_cone_element, random_simplex, random_substochastic, random_weights
from kernelwedge.weighted_space import apply

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_in_cone_accepts_with_slack(running, ones):
    cert = in_cone(running, ones)
    assert cert.accepted
    np.testing.assert_allclose(cert.slack, [0.7, 0.3], atol=1e-15)
    assert cert.operator_digest == running.digest


def test_in_cone_rejects_zero_entry(running, unit2):
    rejection = in_cone(running, unit2.vector([1.0, 0.0]))
    assert not rejection.accepted
    assert rejection.index == 1
    assert rejection.reason == "not_strictly_positive"
    assert "index 2" in rejection.describe()


def test_in_cone_accepts_image_of_ones(running, unit2):
    assert in_cone(running, unit2.vector([0.3, 0.7])).accepted


def test_in_cone_rejects_first_excess(running, unit2):
    rejection = in_cone(running, unit2.vector([0.1, 1.0]))
    assert rejection.reason == "not_subinvariant"
    assert rejection.index == 0
    assert rejection.violation == pytest.approx(0.02)


def test_in_cone_preconditions(unit2, ones):
    with pytest.raises(StochasticOperatorError):
        in_cone(unit2.operator([[0.5, 0.5], [0.5, 0.5]]), ones)
    with pytest.raises(PreconditionError):
        in_cone(unit2.operator([[1.0, 0.3], [0.2, 0.3]]), ones)


def test_certify_raises_on_rejection(running, unit2):
    with pytest.raises(ConeRejected, match="index 2"):
        certify(running, unit2.vector([1.0, 0.0]))


def test_golden_completion(running, ones_cert):
    completion = stochastic_completion(running, ones_cert)
    np.testing.assert_allclose(completion.A.entries, [[0.55, 0.45], [0.45, 0.55]], rtol=0, atol=1e-14)
    assert completion.lam == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(completion.phi, [0.7, 0.3], atol=1e-15)
    np.testing.assert_allclose(completion.psi, [0.5, 0.5], atol=1e-15)


def test_completion_of_zero_operator(unit2, ones):
    S = unit2.operator(np.zeros((2, 2)))
    completion = stochastic_completion(S, certify(S, ones))
    np.testing.assert_allclose(completion.A.entries, 0.5)
    assert completion.lam == 2.0


def test_completion_refuses_stochastic_operator(unit2, ones):
    S = unit2.operator([[0.5, 0.5], [0.5, 0.5]])
    cert = ConeCertificate(f=ones, slack=np.zeros(2), operator=S, operator_digest=S.digest, tol=1e-12)
    with pytest.raises(StochasticOperatorError):
        stochastic_completion(S, cert)


def test_stale_certificate_is_rejected(ones_cert, unit2):
    other = unit2.operator([[0.1, 0.1], [0.1, 0.1]])
    with pytest.raises(ContractViolation):
        stochastic_completion(other, ones_cert)


def test_wedge_add(ones_cert, image_cert):
    total = wedge_add(ones_cert, image_cert)
    np.testing.assert_allclose(total.f.entries, [1.3, 1.7])
    np.testing.assert_allclose(wedge_add(ones_cert, ones_cert).f.entries, [2.0, 2.0])


def test_wedge_add_mixed_operators(ones_cert, unit2, ones):
    other = unit2.operator([[0.1, 0.1], [0.1, 0.1]])
    with pytest.raises(ContractViolation):
        wedge_add(ones_cert, certify(other, ones))


@pytest.mark.parametrize("a, expected", [(0.5, [0.5, 0.5]), (3.0, [3.0, 3.0]), (1e6, [1e6, 1e6])])
def test_wedge_scale(ones_cert, a, expected):
    np.testing.assert_allclose(wedge_scale(ones_cert, a).f.entries, expected)


def test_wedge_scale_identity_and_errors(ones_cert):
    assert wedge_scale(ones_cert, 1.0) is ones_cert
    for a in (0.0, -1.0, float("inf")):
        with pytest.raises(PreconditionError):
            wedge_scale(ones_cert, a)


def test_log_convex_combine_symmetric(unit2):
    S = unit2.operator([[0.1, 0.1], [0.1, 0.1]])
    h = log_convex_combine([certify(S, unit2.vector([1.0, 4.0])), certify(S, unit2.vector([4.0, 1.0]))], [0.5, 0.5])
    np.testing.assert_allclose(h.f.entries, [2.0, 2.0], rtol=1e-14)


def test_log_convex_combine_running_example(running, ones_cert, image_cert, unit2):
    h = log_convex_combine([ones_cert, image_cert], [0.5, 0.5])
    root = unit2.vector(np.sqrt([0.3, 0.7]))
    np.testing.assert_allclose(h.f.entries, root.entries, rtol=1e-12)
    np.testing.assert_allclose(h.f.entries, [0.54772, 0.83666], atol=1e-5)
    np.testing.assert_allclose(apply(running, h.f).entries, apply(running, root).entries, rtol=1e-12)
    np.testing.assert_allclose(apply(running, h.f).entries, [0.193211, 0.498981], atol=1e-6)


def test_log_convex_combine_degenerate_exponent(ones_cert, image_cert):
    h = log_convex_combine([image_cert, ones_cert], [1.0, 0.0])
    np.testing.assert_array_equal(h.f.entries, image_cert.f.entries)


def test_log_convex_combine_preconditions(ones_cert, image_cert, unit2, ones):
    with pytest.raises(PreconditionError):
        log_convex_combine([ones_cert, image_cert], [0.5, 0.6])
    with pytest.raises(PreconditionError):
        log_convex_combine([ones_cert, image_cert], [1.5, -0.5])
    other = certify(unit2.operator([[0.1, 0.1], [0.1, 0.1]]), ones)
    with pytest.raises(PreconditionError):
        log_convex_combine([ones_cert, other], [0.5, 0.5])


def test_reverification_failure_is_internal_error(unit2):
    S = unit2.operator([[0.5, 0.5], [0.1, 0.2]])
    with pytest.raises(InternalConsistencyError):
        _reverify(S, unit2.vector([0.1, 1.0]), 0.0, "log_convex_combine")


@given(seeds)
def test_completion_soundness(seed):
    rng = np.random.default_rng(seed)
    S = random_substochastic(rng, random_weights(rng, int(rng.integers(2, 20))))
    cert = random_cone_element(rng, S)
    completion = stochastic_completion(S, cert)
    residuals = completion_residuals(S, completion)
    assert max(residuals.values()) <= 1e-10
    assert np.all(completion.A.entries >= S.entries)
    assert majorant_fixes(S, completion.A, cert.f)


@given(seeds)
def test_stochastic_majorant_fixing_f_implies_subinvariance(seed):
    rng = np.random.default_rng(seed)
    S = random_substochastic(rng, random_weights(rng, int(rng.integers(2, 10))))
    cert = random_cone_element(rng, S)
    A = stochastic_completion(S, cert).A
    # Sf <= Af = f
    assert np.all(apply(S, cert.f).entries <= apply(A, cert.f).entries + 1e-12)


def test_rejected_vectors_admit_no_rank_one_completion():
    rng = np.random.default_rng(3)
    checked = 0
    for _ in range(300):
        space = random_weights(rng, int(rng.integers(2, 4)))
        S = random_substochastic(rng, space)
        f = space.vector(rng.uniform(0.01, 1.0, size=space.n))
        result = in_cone(S, f)
        if result.accepted or result.violation <= 1e-6:
            continue
        _, repairable = rank_one_candidate(S, f)
        assert not repairable
        checked += 1
    assert checked > 0


@given(seeds)
def test_wedge_and_log_convex_closure(seed):
    rng = np.random.default_rng(seed)
    S = random_substochastic(rng, random_weights(rng, int(rng.integers(2, 20))))
    certs = [random_cone_element(rng, S) for _ in range(int(rng.integers(1, 5)))]
    alphas = random_simplex(rng, len(certs), allow_zero=True)
    assert log_convex_combine(certs, alphas).accepted
    assert wedge_add(certs[0], certs[-1]).accepted
    assert wedge_scale(certs[0], float(10.0 ** rng.uniform(-3, 3))).accepted


def test_accepted_vector_is_repaired_by_rank_one_formula(running, ones):
    candidate, repairable = rank_one_candidate(running, ones)
    assert repairable
    np.testing.assert_allclose(candidate, [[0.55, 0.45], [0.45, 0.55]], atol=1e-14)


@pytest.mark.slow
def test_completion_soundness_sweep():
    rng = np.random.default_rng(1)
    for _ in range(10_000):
        S = random_substochastic(rng, random_weights(rng, int(rng.integers(2, 51))))
        completion = stochastic_completion(S, random_cone_element(rng, S))
        assert max(completion_residuals(S, completion).values()) <= 1e-10


def test_completion_soundness_small_sweep():
    rng = np.random.default_rng(2)
    for _ in range(200):
        S = random_substochastic(rng, random_weights(rng, int(rng.integers(2, 51))))
        completion = stochastic_completion(S, random_cone_element(rng, S))
        assert max(completion_residuals(S, completion).values()) <= 1e-10


def test_certificate_space_binding(running):
    other_space = WeightedSpace(weights=[1.0, 2.0])
    with pytest.raises(ContractViolation):
        in_cone(running, other_space.vector([1.0, 1.0]))
