"""Weighted finite sequence spaces, their lattice norms and weighted operators.

All operators act through the point masses of their space:
``(Sx)_i = sum_j s_ij x_j w_j``. Column masses are ``s_j = sum_i s_ij w_i``.
"""

import logging
from typing import Sequence

import numpy as np

from .errors import ContractViolation, PreconditionError
from .models import NonNegativeVector, NormKind, PositiveOperator, StochClass, WeightedSpace

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12


def require_same_space(a: WeightedSpace, b: WeightedSpace, what: str):
    if not a.same_as(b):
        raise ContractViolation(f"{what}: operands live on different spaces (n={a.n} vs n={b.n})")


def apply(S: PositiveOperator, x: NonNegativeVector) -> NonNegativeVector:
    """Weighted action y_i = sum_j s_ij x_j w_j."""
    require_same_space(S.space, x.space, "apply")
    y = S.entries @ (x.entries * S.space.weights)
    # exact zero floor: the product of non-negative floats is non-negative
    return NonNegativeVector(space=S.space, entries=np.maximum(y, 0.0))


def column_mass(S: PositiveOperator) -> np.ndarray:
    return S.space.weights @ S.entries


def classify(S: PositiveOperator, tol: float = DEFAULT_TOL) -> StochClass:
    """Most specific stochasticity tag of S at tolerance ``tol``."""
    if tol < 0:
        raise PreconditionError(f"tol must be >= 0, got {tol}")
    masses = column_mass(S)
    if np.all(np.abs(masses - 1.0) <= tol):
        tag = StochClass.STOCHASTIC
    elif np.all(masses < 1.0 - tol):
        tag = StochClass.STRICTLY_SUBSTOCHASTIC
    elif np.all(masses <= 1.0 + tol):
        tag = StochClass.SUBSTOCHASTIC_NOT_STOCHASTIC
    else:
        tag = StochClass.NOT_SUBSTOCHASTIC
    logger.debug("classified n=%d operator as %s (max mass %.17g)", S.n, tag.value, masses.max())
    return tag


def norm(x: NonNegativeVector, kind: NormKind) -> float:
    """Weighted L1, L-infinity or Lp norm; a seminorm when ``kind.support`` is set."""
    values, weights = x.entries, x.space.weights
    if kind.support is not None:
        if max(kind.support) >= x.n:
            raise ContractViolation(f"seminorm support {kind.support} exceeds n={x.n}")
        idx = np.asarray(kind.support, dtype=int)
        values, weights = values[idx], weights[idx]
    if kind.tag == "L1w":
        return float(np.sum(values * weights))
    if kind.tag == "LInfW":
        return float(np.max(values * weights))
    # scale by the largest entry so x**p cannot overflow
    scale = float(np.max(values))
    if scale == 0.0:
        return 0.0
    return scale * float(np.sum((values / scale) ** kind.p * weights)) ** (1.0 / kind.p)


def is_strictly_positive(x: NonNegativeVector) -> bool:
    return bool(np.all(x.entries > 0))


def is_strictly_positive_operator(K: PositiveOperator) -> bool:
    """Kf >> 0 for every f >> 0, i.e. no row of K vanishes."""
    return bool(np.all(K.entries.max(axis=1) > 0))


def identity_operator(space: WeightedSpace) -> PositiveOperator:
    return PositiveOperator(space=space, entries=np.diag(1.0 / space.weights))


def compose(S: PositiveOperator, T: PositiveOperator) -> PositiveOperator:
    """Operator of x -> S(Tx); entries S diag(w) T."""
    require_same_space(S.space, T.space, "compose")
    product = (S.entries * S.space.weights) @ T.entries
    return PositiveOperator(space=S.space, entries=np.maximum(product, 0.0))


def operator_norm(S: PositiveOperator, kind: NormKind) -> float:
    """Induced norm of S on the weighted space."""
    if kind.support is not None:
        raise PreconditionError("operator norms are defined for full norms only")
    if kind.tag == "L1w":
        return float(column_mass(S).max())
    if kind.tag == "LInfW":
        return float(np.max(S.space.weights * S.entries.sum(axis=1)))
    raise PreconditionError(f"no closed-form operator norm for {kind}")


def order_excess(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Entrywise one-sided excess of lhs over rhs, normalized by max(1, rhs)."""
    return np.maximum(lhs - rhs, 0.0) / np.maximum(1.0, np.abs(rhs))


def geometric_mean(vectors: Sequence[NonNegativeVector], alphas: Sequence[float]) -> NonNegativeVector:
    """Entrywise prod_i f_i ** alpha_i."""
    if len(vectors) == 0 or len(vectors) != len(alphas):
        raise PreconditionError(f"need matching non-empty lists, got {len(vectors)} vectors and {len(alphas)} exponents")
    space = vectors[0].space
    for v in vectors[1:]:
        require_same_space(space, v.space, "geometric_mean")
    exps = np.asarray(alphas, dtype=float)[:, None]
    active = exps[:, 0] > 0
    if np.count_nonzero(active) == 1 and exps[active, 0][0] == 1.0:
        return vectors[int(np.flatnonzero(active)[0])]
    stacked = np.stack([v.entries for v in vectors])
    if np.all(stacked[active] > 0):
        with np.errstate(divide="ignore"):
            logs = np.where(exps > 0, np.log(np.where(stacked > 0, stacked, 1.0)), 0.0)
        h = np.exp(np.sum(exps * logs, axis=0))
    else:
        h = np.prod(stacked ** exps, axis=0)
    return NonNegativeVector(space=space, entries=h)


def sum_vectors(vectors: Sequence[NonNegativeVector]) -> NonNegativeVector:
    space = vectors[0].space
    for v in vectors[1:]:
        require_same_space(space, v.space, "sum_vectors")
    return NonNegativeVector(space=space, entries=np.sum([v.entries for v in vectors], axis=0))
