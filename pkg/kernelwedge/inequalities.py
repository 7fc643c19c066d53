"""Evaluators for the Young, Hoelder-type and cone inequalities.

Every ``*_check`` returns one-sided violations normalized by
``max(1, right-hand side)``; all of them are 0 in exact arithmetic. The random
generators at the bottom build the instances the property suite feeds them.
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from .cone import certify, check_exponents
from .errors import InfimumNotAttained, PreconditionError
from .models import ConeCertificate, NonNegativeVector, NormKind, PositiveOperator, WeightedSpace
from .transforms import shifted_solve
from .weighted_space import apply, geometric_mean, norm, order_excess, sum_vectors

logger = logging.getLogger(__name__)

GRID_POINTS = 100_000


def excess(lhs: float, rhs: float) -> float:
    return max(0.0, lhs - rhs) / max(1.0, abs(rhs))


def max_excess(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(order_excess(lhs, rhs)))


def _norm_product(norms: Sequence[float], alphas: Sequence[float]) -> float:
    # 0 ** 0 == 1 keeps zero exponents neutral
    return float(np.prod([n ** a for n, a in zip(norms, alphas)]))


def _check_alpha(alpha: float):
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"alpha must lie in the open interval (0, 1), got {alpha}")


def _check_pairs(fs: Sequence, gs: Sequence):
    if len(fs) == 0 or len(fs) != len(gs):
        raise PreconditionError(f"need equally many f and g (at least one), got {len(fs)} and {len(gs)}")


def young_eval(x: float, y: float, alpha: float, t: float) -> float:
    """alpha t^(1/alpha) x + (1 - alpha) t^(-1/(1 - alpha)) y."""
    _check_alpha(alpha)
    if not t > 0:
        raise PreconditionError(f"t must be > 0, got {t}")
    if x < 0 or y < 0:
        raise PreconditionError(f"x and y must be >= 0, got {x}, {y}")
    with np.errstate(over="ignore"):
        first = alpha * np.power(t, 1.0 / alpha) * x if x else 0.0
        second = (1.0 - alpha) * np.power(t, -1.0 / (1.0 - alpha)) * y if y else 0.0
    return float(first + second)


def young_argmin(x: float, y: float, alpha: float) -> Tuple[float, float]:
    """Minimizer t* = (y/x)^(alpha(1-alpha)) and the infimum x^alpha y^(1-alpha)."""
    _check_alpha(alpha)
    if x <= 0 or y <= 0:
        raise InfimumNotAttained(f"infimum is 0 and not attained for x={x}, y={y}")
    t_star = float(np.exp(alpha * (1.0 - alpha) * (np.log(y) - np.log(x))))
    value = float(np.exp(alpha * np.log(x) + (1.0 - alpha) * np.log(y)))
    return t_star, value


def young_grid_search(x: float, y: float, alpha: float, points: int = GRID_POINTS) -> Tuple[float, float]:
    """Brute-force minimum over t in {10^(-6 + 12k/points)}, k = 0..points."""
    _check_alpha(alpha)
    t = 10.0 ** (-6.0 + 12.0 * np.arange(points + 1) / points)
    with np.errstate(over="ignore", invalid="ignore"):
        values = alpha * np.power(t, 1.0 / alpha) * x + (1.0 - alpha) * np.power(t, -1.0 / (1.0 - alpha)) * y
    values = np.where(np.isnan(values), np.inf, values)
    k = int(np.argmin(values))
    return float(t[k]), float(values[k])


def holder_seminorm_check(fs: Sequence[NonNegativeVector], alphas: Sequence[float], kind: NormKind) -> float:
    """||prod f_i^a_i|| <= prod ||f_i||^a_i."""
    exps = check_exponents(alphas, len(fs), strict=True)
    lhs = norm(geometric_mean(fs, exps), kind)
    rhs = _norm_product([norm(f, kind) for f in fs], exps)
    return excess(lhs, rhs)


def kernel_holder_check(S: PositiveOperator, fs: Sequence[NonNegativeVector], alphas: Sequence[float]) -> float:
    """S(prod f_i^a_i) <= prod (S f_i)^a_i entrywise."""
    exps = check_exponents(alphas, len(fs), strict=True)
    lhs = apply(S, geometric_mean(fs, exps)).entries
    rhs = geometric_mean([apply(S, f) for f in fs], exps).entries
    return max_excess(lhs, rhs)


def kernel_seminorm_chain_check(
    S: PositiveOperator, fs: Sequence[NonNegativeVector], alphas: Sequence[float], kind: NormKind
) -> Tuple[float, float]:
    """||S(prod f_i^a_i)|| <= ||prod (S f_i)^a_i|| <= prod ||S f_i||^a_i."""
    exps = check_exponents(alphas, len(fs), strict=True)
    images = [apply(S, f) for f in fs]
    first = norm(apply(S, geometric_mean(fs, exps)), kind)
    middle = norm(geometric_mean(images, exps), kind)
    last = _norm_product([norm(Sf, kind) for Sf in images], exps)
    return excess(first, middle), excess(middle, last)


def _mixed_sum(fs: Sequence[NonNegativeVector], gs: Sequence[NonNegativeVector], alpha: float) -> NonNegativeVector:
    return sum_vectors([geometric_mean([f, g], [alpha, 1.0 - alpha]) for f, g in zip(fs, gs)])


def sum_split_check(fs: Sequence[NonNegativeVector], gs: Sequence[NonNegativeVector], alpha: float) -> float:
    """sum_i f_i^a g_i^(1-a) <= (sum f)^a (sum g)^(1-a) entrywise."""
    _check_pairs(fs, gs)
    _check_alpha(alpha)
    lhs = _mixed_sum(fs, gs, alpha).entries
    rhs = geometric_mean([sum_vectors(fs), sum_vectors(gs)], [alpha, 1.0 - alpha]).entries
    return max_excess(lhs, rhs)


def kernel_sum_split_check(
    S: PositiveOperator, fs: Sequence[NonNegativeVector], gs: Sequence[NonNegativeVector], alpha: float
) -> Tuple[float, float]:
    """S(sum f^a g^(1-a)) <= S((sum f)^a (sum g)^(1-a)) <= (S sum f)^a (S sum g)^(1-a) entrywise."""
    _check_pairs(fs, gs)
    _check_alpha(alpha)
    F, G = sum_vectors(fs), sum_vectors(gs)
    first = apply(S, _mixed_sum(fs, gs, alpha)).entries
    middle = apply(S, geometric_mean([F, G], [alpha, 1.0 - alpha])).entries
    last = geometric_mean([apply(S, F), apply(S, G)], [alpha, 1.0 - alpha]).entries
    return max_excess(first, middle), max_excess(middle, last)


def sum_split_seminorm_check(
    S: PositiveOperator,
    fs: Sequence[NonNegativeVector],
    gs: Sequence[NonNegativeVector],
    alpha: float,
    kind: NormKind,
) -> Tuple[float, float]:
    """||S(sum f^a g^(1-a))|| <= ||S((sum f)^a (sum g)^(1-a))|| <= ||S sum f||^a ||S sum g||^(1-a)."""
    _check_pairs(fs, gs)
    _check_alpha(alpha)
    F, G = sum_vectors(fs), sum_vectors(gs)
    first = norm(apply(S, _mixed_sum(fs, gs, alpha)), kind)
    middle = norm(apply(S, geometric_mean([F, G], [alpha, 1.0 - alpha])), kind)
    last = _norm_product([norm(apply(S, F), kind), norm(apply(S, G), kind)], [alpha, 1.0 - alpha])
    return excess(first, middle), excess(middle, last)


def _require_certificates(S: PositiveOperator, certs: Sequence[ConeCertificate]):
    if not certs:
        raise PreconditionError("at least one certificate is required")
    for cert in certs:
        if cert.operator_digest != S.digest:
            raise PreconditionError("certificate was not issued for this operator")


def cone_norm_bound_check(
    S: PositiveOperator, certs: Sequence[ConeCertificate], alphas: Sequence[float], kind: NormKind
) -> Tuple[float, float]:
    """||S h|| <= ||h|| <= prod ||f_i||^a_i for h = prod f_i^a_i, f_i in C(S)."""
    _require_certificates(S, certs)
    exps = check_exponents(alphas, len(certs))
    fs = [c.f for c in certs]
    h = geometric_mean(fs, exps)
    h_norm = norm(h, kind)
    return (
        excess(norm(apply(S, h), kind), h_norm),
        excess(h_norm, _norm_product([norm(f, kind) for f in fs], exps)),
    )


def cone_mixed_bound_check(
    S: PositiveOperator,
    f_certs: Sequence[ConeCertificate],
    g_certs: Sequence[ConeCertificate],
    alpha: float,
    kind: NormKind,
) -> Tuple[float, float]:
    """||S(sum f^a g^(1-a))|| <= ||(sum f)^a (sum g)^(1-a)|| <= ||sum f||^a ||sum g||^(1-a)."""
    _check_alpha(alpha)
    _check_pairs(f_certs, g_certs)
    _require_certificates(S, [*f_certs, *g_certs])
    fs = [c.f for c in f_certs]
    gs = [c.f for c in g_certs]
    F, G = sum_vectors(fs), sum_vectors(gs)
    middle = norm(geometric_mean([F, G], [alpha, 1.0 - alpha]), kind)
    return (
        excess(norm(apply(S, _mixed_sum(fs, gs, alpha)), kind), middle),
        excess(middle, _norm_product([norm(F, kind), norm(G, kind)], [alpha, 1.0 - alpha])),
    )


# --------------------------------------------------------------
# Random instance generators
# --------------------------------------------------------------


def random_weights(rng: np.random.Generator, n: int) -> WeightedSpace:
    return WeightedSpace(weights=rng.uniform(0.5, 2.0, size=n))


def random_substochastic(rng: np.random.Generator, space: WeightedSpace) -> PositiveOperator:
    """Uniform entries, each column rescaled to a mass drawn from [0.1, 0.95]."""
    s = rng.uniform(0.0, 1.0, size=(space.n, space.n))
    masses = space.weights @ s
    targets = rng.uniform(0.1, 0.95, size=space.n)
    return PositiveOperator(space=space, entries=s * (targets / masses)[None, :])


def random_positive(rng: np.random.Generator, space: WeightedSpace, zero_prob: float = 0.1) -> PositiveOperator:
    """Arbitrary non-negative kernel, not necessarily substochastic."""
    s = rng.uniform(0.0, 1.0, size=(space.n, space.n))
    s[rng.random(size=s.shape) < zero_prob] = 0.0
    return PositiveOperator(space=space, entries=s)


def random_nonnegative(rng: np.random.Generator, space: WeightedSpace, zero_prob: float = 0.1) -> NonNegativeVector:
    x = rng.uniform(0.0, 1.0, size=space.n)
    x[rng.random(size=space.n) < zero_prob] = 0.0
    return NonNegativeVector(space=space, entries=x)


def random_cone_element(rng: np.random.Generator, S: PositiveOperator) -> ConeCertificate:
    """f = (I - S)^-1 x with x in [0.1, 1]^n, so Sf = f - x <= f and f >= x >> 0."""
    x = rng.uniform(0.1, 1.0, size=S.n)
    f = shifted_solve(S, 1.0, x)
    return certify(S, NonNegativeVector(space=S.space, entries=np.maximum(f, x)))


def random_simplex(rng: np.random.Generator, m: int, floor: float = 0.0, allow_zero: bool = False) -> np.ndarray:
    """Flat sample from the simplex; entries >= ``floor``, or some exactly 0 if ``allow_zero``."""
    e = rng.exponential(size=m)
    alphas = e / e.sum()
    if floor:
        alphas = floor + (1.0 - m * floor) * alphas
    if allow_zero and m > 1:
        drop = rng.random(size=m) < 0.25
        if not drop.all():
            alphas[drop] = 0.0
            alphas = alphas / alphas.sum()
    return alphas
