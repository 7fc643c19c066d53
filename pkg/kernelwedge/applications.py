"""Commodity bundles, the open Leontief model and the PageRank steady state.

Prices are the space weights: a bundle x is worth sum_i x_i w_i. Both solvers
work for arbitrary weights; ``w = 1`` is the textbook unweighted case.
"""

import logging
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg

from .cone import check_exponents
from .errors import ConvergenceError, PreconditionError
from .inequalities import excess
from .models import Bundle, Economy, NonNegativeVector, NormKind, PositiveOperator, StochClass
from .transforms import shifted_solve
from .weighted_space import DEFAULT_TOL, apply, classify, geometric_mean, is_strictly_positive, norm, require_same_space

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10


def bundle_value(b: Bundle) -> Tuple[float, float]:
    """Total value and value of the most valuable good."""
    return norm(b.x, NormKind.l1()), norm(b.x, NormKind.linf())


def preference_vector(bundles: Sequence[Bundle], alphas: Sequence[float]) -> Bundle:
    if not bundles:
        raise PreconditionError("preference_vector needs at least one bundle")
    exps = check_exponents(alphas, len(bundles), strict=True)
    for k, b in enumerate(bundles):
        if not is_strictly_positive(b.x):
            raise PreconditionError(f"bundle {k + 1} is not strictly positive")
    return Bundle(x=geometric_mean([b.x for b in bundles], exps))


def preference_bounds(bundles: Sequence[Bundle], alphas: Sequence[float]) -> Tuple[float, float]:
    """Violations of value(pref) <= prod value_i^a_i for the total and the largest value."""
    exps = check_exponents(alphas, len(bundles), strict=True)
    total, largest = bundle_value(preference_vector(bundles, exps))
    values = np.array([bundle_value(b) for b in bundles])
    return (
        excess(total, float(np.prod(values[:, 0] ** exps))),
        excess(largest, float(np.prod(values[:, 1] ** exps))),
    )


def _solve_fixed_point(S: PositiveOperator, c: NonNegativeVector, what: str) -> NonNegativeVector:
    """p = c + S p, checked by its residual in the weighted L1 norm."""
    require_same_space(S.space, c.space, what)
    p = shifted_solve(S, 1.0, c.entries)
    residual = p - apply(S, NonNegativeVector(space=S.space, entries=np.maximum(p, 0.0))).entries - c.entries
    p_mass = float(np.sum(np.abs(p) * S.space.weights))
    gap = float(np.sum(np.abs(residual) * S.space.weights))
    if gap > RESIDUAL_TOL * max(1.0, p_mass):
        raise ConvergenceError(f"{what}: residual {gap:.3g} exceeds {RESIDUAL_TOL:g} * max(1, ||p||)")
    logger.debug("%s solved n=%d, residual %.3g", what, S.n, gap)
    return NonNegativeVector(space=S.space, entries=np.maximum(p, 0.0))


def leontief_solve(e: Economy, c: NonNegativeVector) -> NonNegativeVector:
    """Supply p = (I - S)^-1 c meeting final demand c."""
    return _solve_fixed_point(e.technology, c, "leontief_solve")


def impact_matrix(e: Economy) -> PositiveOperator:
    """Impact operator Y with ``apply(Y, c) == leontief_solve(e, c)``.

    The response of supply to demand is (I - S diag(w))^-1; its columns are
    divided by the weights to undo the weighted action, so with unit weights
    the entries are exactly (I - S)^-1.
    """
    S = e.technology
    system = np.eye(S.n) - S.entries * S.space.weights
    try:
        Y = scipy.linalg.inv(system)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"I - S is singular: {exc}") from exc
    if not np.all(np.isfinite(Y)):
        raise ConvergenceError("impact matrix has non-finite entries")
    return PositiveOperator(space=S.space, entries=np.maximum(Y, 0.0) / S.space.weights[None, :])


def pagerank_solve(S: PositiveOperator, x: NonNegativeVector, tol: float = DEFAULT_TOL) -> NonNegativeVector:
    """Steady state p = x + S p for births x."""
    tag = classify(S, tol)
    if tag is not StochClass.STRICTLY_SUBSTOCHASTIC:
        raise PreconditionError(f"pagerank_solve needs a strictly substochastic operator, got {tag.value}")
    return _solve_fixed_point(S, x, "pagerank_solve")
