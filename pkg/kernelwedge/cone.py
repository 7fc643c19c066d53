"""The wedge C(S) = {f >> 0 : Sf <= f} of a substochastic, non-stochastic operator.

Membership is certified, certificates are pinned to the operator digest, and
every certified f admits the rank-one stochastic completion
``A = S + phi psi^T / lam`` with ``phi = f - Sf``, ``psi = 1 - s`` and
``lam = sum_j psi_j f_j w_j``.
"""

import logging
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from .errors import (
    ConeRejected,
    ContractViolation,
    InternalConsistencyError,
    NumericalOverflowError,
    PreconditionError,
    StochasticOperatorError,
)
from .models import Completion, ConeCertificate, ConeRejection, NonNegativeVector, PositiveOperator, StochClass
from .weighted_space import DEFAULT_TOL, apply, classify, column_mass, geometric_mean, require_same_space

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOL = 1e-12


def in_cone(
    S: PositiveOperator, f: NonNegativeVector, tol: float = DEFAULT_TOL
) -> Union[ConeCertificate, ConeRejection]:
    """Certificate if f >> 0 and (Sf)_i <= f_i + tol max(1, f_i), else the first violation."""
    require_same_space(S.space, f.space, "in_cone")
    tag = classify(S, tol)
    if tag is StochClass.STOCHASTIC:
        raise StochasticOperatorError("C(S) is only characterized for operators that are not stochastic")
    if not tag.is_substochastic_not_stochastic:
        raise PreconditionError(f"operator must be substochastic, got {tag.value}")

    zeros = np.flatnonzero(f.entries <= 0)
    if zeros.size:
        return ConeRejection(
            index=int(zeros[0]), reason="not_strictly_positive", violation=0.0, operator_digest=S.digest
        )

    excess = apply(S, f).entries - f.entries
    bad = np.flatnonzero(excess > tol * np.maximum(1.0, f.entries))
    if bad.size:
        i = int(bad[0])
        return ConeRejection(
            index=i, reason="not_subinvariant", violation=float(excess[i]), operator_digest=S.digest
        )
    return ConeCertificate(
        f=f, slack=np.maximum(-excess, 0.0), operator=S, operator_digest=S.digest, tol=tol
    )


def certify(S: PositiveOperator, f: NonNegativeVector, tol: float = DEFAULT_TOL) -> ConeCertificate:
    result = in_cone(S, f, tol)
    if not result.accepted:
        raise ConeRejected(result)
    return result


def require_bound(S: PositiveOperator, cert: ConeCertificate):
    if cert.operator_digest != S.digest:
        raise ContractViolation("certificate was issued for a different operator")


def _reverify(S: PositiveOperator, h: NonNegativeVector, tol: float, what: str) -> ConeCertificate:
    result = in_cone(S, h, tol)
    if not result.accepted:
        raise InternalConsistencyError(f"{what}: result left the cone numerically, {result.describe()}")
    return result


def stochastic_completion(S: PositiveOperator, cert: ConeCertificate) -> Completion:
    require_bound(S, cert)
    f = cert.f.entries
    w = S.space.weights
    phi = cert.slack
    psi = np.maximum(1.0 - column_mass(S), 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        lam = float(np.sum(psi * f * w))
        if not np.isfinite(lam):
            raise NumericalOverflowError(f"lambda is not finite ({lam})")
        if lam <= cert.tol:
            raise StochasticOperatorError(f"lambda={lam:.3g} <= tol={cert.tol:.3g}: S is stochastic on the support of f")
        A = S.entries + np.outer(phi, psi) / lam
    if not np.all(np.isfinite(A)):
        raise NumericalOverflowError("completion entries overflowed")

    logger.debug("completed n=%d operator with lambda=%.17g", S.n, lam)
    return Completion(A=PositiveOperator(space=S.space, entries=A), f=cert.f, phi=phi, psi=psi, lam=lam)


def completion_residuals(S: PositiveOperator, completion: Completion) -> Dict[str, float]:
    """Worst deviations from the completion identities (all should be ~0)."""
    A = completion.A
    f = completion.f.entries
    Af = apply(A, completion.f).entries
    phi_mass = float(np.sum(completion.phi * S.space.weights))
    return {
        "column_mass": float(np.max(np.abs(column_mass(A) - 1.0))),
        "fixed_point": float(np.max(np.abs(Af - f) / np.maximum(1.0, f))),
        "fubini": abs(completion.lam - phi_mass) / max(1.0, completion.lam),
        "majorant": float(max(0.0, np.max(S.entries - A.entries))),
    }


def wedge_add(c1: ConeCertificate, c2: ConeCertificate) -> ConeCertificate:
    if c1.operator_digest != c2.operator_digest:
        raise ContractViolation("wedge_add: certificates belong to different operators")
    S = c1.operator
    total = NonNegativeVector(space=S.space, entries=c1.f.entries + c2.f.entries)
    return _reverify(S, total, max(c1.tol, c2.tol), "wedge_add")


def wedge_scale(c: ConeCertificate, a: float) -> ConeCertificate:
    if not (np.isfinite(a) and a > 0):
        raise PreconditionError(f"wedge_scale needs a finite a > 0, got {a}")
    if a == 1:
        return c
    scaled = NonNegativeVector(space=c.f.space, entries=a * c.f.entries)
    return _reverify(c.operator, scaled, c.tol, "wedge_scale")


def check_exponents(alphas: Sequence[float], count: int, strict: bool = False) -> np.ndarray:
    """Exponents must be (strictly, if asked) non-negative and sum to 1."""
    arr = np.asarray(alphas, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != count:
        raise PreconditionError(f"expected {count} exponents, got {arr.shape[0] if arr.ndim else 0}")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0 if strict else arr < 0):
        raise PreconditionError(f"exponents must be {'> 0' if strict else '>= 0'}, got {arr.tolist()}")
    if abs(arr.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise PreconditionError(f"exponents must sum to 1, got {arr.sum():.17g}")
    return arr


def log_convex_combine(certs: Sequence[ConeCertificate], alphas: Sequence[float]) -> ConeCertificate:
    """Certificate for the entrywise weighted geometric mean prod_i f_i ** alpha_i."""
    if not certs:
        raise PreconditionError("log_convex_combine needs at least one certificate")
    digest = certs[0].operator_digest
    if any(c.operator_digest != digest for c in certs[1:]):
        raise PreconditionError("log_convex_combine: certificates belong to different operators")
    exps = check_exponents(alphas, len(certs))
    h = geometric_mean([c.f for c in certs], exps)
    return _reverify(certs[0].operator, h, max(c.tol for c in certs), "log_convex_combine")


def majorant_fixes(S: PositiveOperator, A, f: NonNegativeVector, tol: float = 1e-10) -> bool:
    """True iff A >= S, A is stochastic and Af = f, all up to ``tol``."""
    a = np.asarray(getattr(A, "entries", A), dtype=float)
    w = S.space.weights
    if a.shape != S.entries.shape or not np.all(np.isfinite(a)):
        return False
    if np.any(a < S.entries - tol):
        return False
    if np.any(np.abs(w @ a - 1.0) > tol):
        return False
    Af = a @ (f.entries * w)
    return bool(np.all(np.abs(Af - f.entries) <= tol * np.maximum(1.0, f.entries)))


def rank_one_candidate(S: PositiveOperator, f: NonNegativeVector, tol: float = 1e-10) -> Tuple[np.ndarray, bool]:
    """The completion formula applied without requiring Sf <= f.

    Returns the candidate matrix (possibly with negative entries) and whether it
    is a stochastic majorant of S fixing f.
    """
    require_same_space(S.space, f.space, "rank_one_candidate")
    w = S.space.weights
    phi = f.entries - apply(S, f).entries
    psi = 1.0 - column_mass(S)
    lam = float(np.sum(psi * f.entries * w))
    if lam <= 0:
        return S.entries.copy(), False
    candidate = S.entries + np.outer(phi, psi) / lam
    return candidate, majorant_fixes(S, candidate, f, tol)
