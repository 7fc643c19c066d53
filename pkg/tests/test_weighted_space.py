import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from kernelwedge import ContractViolation, NormKind, PreconditionError, StochClass, WeightedSpace
from kernelwedge.inequalities import random_nonnegative, random_positive, random_weights
from kernelwedge.weighted_space import (
    apply,
    classify,
    column_mass,
    compose,
    geometric_mean,
    identity_operator,
    is_strictly_positive,
    is_strictly_positive_operator,
    norm,
    operator_norm,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.mark.parametrize(
    "entries, x, expected",
    [
        ([[0.2, 0.1], [0.3, 0.4]], [1.0, 1.0], [0.3, 0.7]),
        ([[1.0, 0.0], [0.0, 1.0]], [5.0, 7.0], [5.0, 7.0]),
        ([[0.0, 0.0], [0.0, 0.0]], [3.0, 2.0], [0.0, 0.0]),
    ],
)
def test_apply_examples(unit2, entries, x, expected):
    y = apply(unit2.operator(entries), unit2.vector(x))
    np.testing.assert_allclose(y.entries, expected, rtol=0, atol=1e-15)


def test_apply_uses_weights():
    space = WeightedSpace(weights=[2.0, 1.0])
    y = apply(space.operator([[1.0, 1.0], [0.0, 1.0]]), space.vector([1.0, 1.0]))
    np.testing.assert_allclose(y.entries, [3.0, 1.0])


def test_apply_rejects_mismatched_spaces(running):
    other = WeightedSpace(weights=[1.0, 2.0])
    with pytest.raises(ContractViolation):
        apply(running, other.vector([1.0, 1.0]))


def test_column_mass_examples(running):
    np.testing.assert_allclose(column_mass(running), [0.5, 0.5])
    assert column_mass(WeightedSpace.uniform(2).operator(np.zeros((2, 2)))).tolist() == [0.0, 0.0]
    assert column_mass(WeightedSpace(weights=[2.0]).operator([[0.5]])).tolist() == [1.0]


@pytest.mark.parametrize(
    "entries, expected",
    [
        ([[0.2, 0.1], [0.3, 0.4]], StochClass.STRICTLY_SUBSTOCHASTIC),
        ([[0.5, 0.5], [0.5, 0.5]], StochClass.STOCHASTIC),
        ([[1.0, 0.3], [0.2, 0.3]], StochClass.NOT_SUBSTOCHASTIC),
        ([[0.5, 0.1], [0.5, 0.2]], StochClass.SUBSTOCHASTIC_NOT_STOCHASTIC),
    ],
)
def test_classify(unit2, entries, expected):
    assert classify(unit2.operator(entries), 1e-12) is expected


def test_classify_rejects_negative_tol(running):
    with pytest.raises(PreconditionError):
        classify(running, -1.0)


def test_norm_examples():
    space = WeightedSpace(weights=[2.0, 1.0])
    x = space.vector([1.0, 2.0])
    assert norm(x, NormKind.l1()) == 4.0
    assert norm(x, NormKind.linf()) == 2.0
    assert norm(x, NormKind.lp(2.0)) == pytest.approx(np.sqrt(6.0))
    zero = space.vector([0.0, 0.0])
    for kind in (NormKind.l1(), NormKind.linf(), NormKind.lp(3.0)):
        assert norm(zero, kind) == 0.0


def test_seminorm_restricts_to_support():
    space = WeightedSpace(weights=[2.0, 1.0, 1.0])
    x = space.vector([1.0, 2.0, 5.0])
    assert norm(x, NormKind(tag="L1w", support=(0, 1))) == 4.0
    assert norm(space.vector([0.0, 0.0, 5.0]), NormKind(tag="L1w", support=(0, 1))) == 0.0
    with pytest.raises(ContractViolation):
        norm(x, NormKind(tag="L1w", support=(3,)))


def test_lp_norm_does_not_overflow():
    space = WeightedSpace.uniform(2)
    assert norm(space.vector([1e300, 1e300]), NormKind.lp(4.0)) == pytest.approx(1e300 * 2 ** 0.25)


@pytest.mark.parametrize("text, expected", [("l1", "L1w"), ("linf", "LInfW"), ("lp:3", "LpW(3)"), ("LpW(2.5)", "LpW(2.5)")])
def test_norm_kind_parse(text, expected):
    assert str(NormKind.parse(text)) == expected


def test_norm_kind_validation():
    with pytest.raises(ValidationError):
        NormKind(tag="LpW", p=1.0)
    with pytest.raises(ValueError):
        NormKind.parse("l7")


def test_strict_positivity_is_exact(unit2):
    assert is_strictly_positive(unit2.vector([1.0, 1.0]))
    assert not is_strictly_positive(unit2.vector([1.0, 0.0]))
    assert is_strictly_positive(unit2.vector([1e-300, 2.0]))


def test_invalid_values_are_rejected():
    with pytest.raises(ValidationError):
        WeightedSpace(weights=[1.0, 0.0])
    with pytest.raises(ValidationError):
        WeightedSpace.uniform(2).vector([1.0, -1.0])
    with pytest.raises(ValidationError):
        WeightedSpace.uniform(2).operator([[1.0, np.nan], [0.0, 0.0]])
    with pytest.raises(ValidationError):
        WeightedSpace.uniform(2).operator([[1.0, 0.0, 0.0]])


def test_arrays_are_read_only(running):
    with pytest.raises(ValueError):
        running.entries[0, 0] = 5.0


def test_identity_and_compose():
    space = WeightedSpace(weights=[0.5, 2.0])
    S = space.operator([[0.2, 0.1], [0.3, 0.4]])
    x = space.vector([1.0, 3.0])
    np.testing.assert_allclose(apply(identity_operator(space), x).entries, x.entries)
    np.testing.assert_allclose(apply(compose(S, S), x).entries, apply(S, apply(S, x)).entries)


def test_operator_norms(running):
    assert operator_norm(running, NormKind.l1()) == pytest.approx(0.5)
    assert operator_norm(running, NormKind.linf()) == pytest.approx(0.7)
    with pytest.raises(PreconditionError):
        operator_norm(running, NormKind.lp(2.0))


def test_strictly_positive_operator(unit2):
    assert is_strictly_positive_operator(unit2.operator([[0.0, 1.0], [1.0, 0.0]]))
    assert not is_strictly_positive_operator(unit2.operator([[0.0, 0.0], [1.0, 0.0]]))


def test_geometric_mean_degenerate_exponent_is_exact(unit2):
    f1 = unit2.vector([0.3, 0.7])
    f2 = unit2.vector([5.0, 0.0])
    assert geometric_mean([f1, f2], [1.0, 0.0]) is f1


@given(seeds)
def test_apply_is_linear_and_monotone(seed):
    rng = np.random.default_rng(seed)
    space = random_weights(rng, int(rng.integers(1, 12)))
    S = random_positive(rng, space)
    x, y = random_nonnegative(rng, space), random_nonnegative(rng, space)
    a, b = rng.uniform(0, 3, size=2)
    combined = apply(S, space.vector(a * x.entries + b * y.entries)).entries
    expected = a * apply(S, x).entries + b * apply(S, y).entries
    np.testing.assert_allclose(combined, expected, rtol=1e-12, atol=1e-12)

    bigger = space.vector(x.entries + y.entries)
    assert np.all(apply(S, x).entries <= apply(S, bigger).entries * (1 + 1e-12) + 1e-15)


@given(seeds)
def test_norms_are_lattice_norms(seed):
    rng = np.random.default_rng(seed)
    space = random_weights(rng, int(rng.integers(1, 12)))
    x, y = random_nonnegative(rng, space), random_nonnegative(rng, space)
    bigger = space.vector(x.entries + y.entries)
    a = float(rng.uniform(0, 10))
    for kind in (NormKind.l1(), NormKind.linf(), NormKind.lp(2.0), NormKind.lp(3.5)):
        assert norm(x, kind) <= norm(bigger, kind) * (1 + 1e-12)
        assert norm(space.vector(a * x.entries), kind) == pytest.approx(a * norm(x, kind), rel=1e-12, abs=1e-300)


@given(seeds)
def test_stochastic_operators_preserve_mass(seed):
    rng = np.random.default_rng(seed)
    space = random_weights(rng, int(rng.integers(1, 12)))
    s = rng.uniform(0, 1, size=(space.n, space.n))
    S = space.operator(s / (space.weights @ s)[None, :])
    assert classify(S) is StochClass.STOCHASTIC
    x = random_nonnegative(rng, space)
    assert norm(apply(S, x), NormKind.l1()) == pytest.approx(norm(x, NormKind.l1()), rel=1e-10, abs=1e-12)
