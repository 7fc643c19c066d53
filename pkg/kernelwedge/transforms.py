"""Cone-preserving transforms: non-negative power series of S, exp(S), resolvents.

Any F(S) with non-negative coefficients commutes with S, so f in C(S) implies
F(S)f in C(S) whenever F(S)f >> 0. Series are gated by a spectral radius
estimate; resolvents are computed by a direct LU solve.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .cone import require_bound
from .errors import ConvergenceError, InternalConsistencyError, PreconditionError, SpectralRadiusError
from .models import ConeCertificate, NonNegativeVector, PositiveOperator, PowerSeries, SeriesOptions, SpectralEstimate
from .weighted_space import (
    apply,
    compose,
    identity_operator,
    is_strictly_positive,
    order_excess,
    require_same_space,
)

logger = logging.getLogger(__name__)

GELFAND_POWER = 64
CROSS_CHECK_TOL = 1e-8
RESOLVENT_TOL = 1e-9
# keeps every iterate strictly positive without entering subnormal range
VECTOR_FLOOR = 1e-150
MAX_EXPONENT = 709.0


def _exp_or_inf(x: float) -> float:
    return math.exp(x) if x <= MAX_EXPONENT else math.inf


def exponential_series() -> PowerSeries:
    return PowerSeries(
        name="exp",
        coefficient=lambda j: math.exp(-math.lgamma(j + 1)),
        log_coefficient=lambda j: -math.lgamma(j + 1),
    )


def neumann_series(lam: float) -> PowerSeries:
    """sum_j lam^-(j+1) z^j = (lam - z)^-1 for |z| < lam."""
    if not lam > 0:
        raise PreconditionError(f"Neumann series needs lam > 0, got {lam}")
    log_lam = math.log(lam)
    return PowerSeries(
        name=f"neumann({lam:g})",
        coefficient=lambda j: _exp_or_inf(-(j + 1) * log_lam),
        log_coefficient=lambda j: -(j + 1) * log_lam,
        radius=lam,
    )


def polynomial_series(coeffs: Sequence[float]) -> PowerSeries:
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise PreconditionError("a polynomial needs at least one coefficient")
    return PowerSeries(
        name="poly" + str(list(coeffs)),
        coefficient=lambda j: coeffs[j] if j < len(coeffs) else 0.0,
        degree=len(coeffs) - 1,
    )


def polynomial_operator(S: PositiveOperator, coeffs: Sequence[float]) -> PositiveOperator:
    """sum_j c_j S^j with weighted powers, S^0 the weighted identity."""
    if any(c < 0 for c in coeffs):
        raise PreconditionError(f"polynomial coefficients must be >= 0, got {list(coeffs)}")
    power = identity_operator(S.space)
    total = np.zeros_like(S.entries)
    for j, c in enumerate(coeffs):
        if j > 0:
            power = compose(S, power)
        total = total + c * power.entries
    return PositiveOperator(space=S.space, entries=total)


def gelfand_radius(S: PositiveOperator, k: int = GELFAND_POWER) -> float:
    """||S^k||^(1/k) in the weighted L1 operator norm, an upper bound on rho(S)."""
    w = S.space.weights
    # similarity under which the weighted L1 norm becomes the max column sum
    N = w[:, None] * (S.entries * w) / w[None, :]
    scale = N.max()
    if scale == 0:
        return 0.0
    P = N / scale
    log_scale = math.log(scale)
    for _ in range(k - 1):
        P = P @ N
        peak = P.max()
        if peak == 0:
            return 0.0
        P /= peak
        log_scale += math.log(peak)
    return math.exp((log_scale + math.log(P.sum(axis=0).max())) / k)


def spectral_radius(S: PositiveOperator, iters: int = 10_000, tol: float = 1e-12) -> SpectralEstimate:
    """Upper bound on rho(S) from Collatz-Wielandt ratios along a power iteration.

    For v >> 0, min_i (Mv)_i / v_i <= rho(S) <= max_i (Mv)_i / v_i. Iterating with
    M + I keeps v strictly positive. The estimate is the smallest upper ratio
    seen; it counts as converged once it is within ``tol`` (relative) of the
    largest lower ratio. Otherwise the smaller of it and the Gelfand bound is
    returned, so the value never undershoots rho(S).
    """
    M = S.entries * S.space.weights
    v = np.ones(S.n)
    upper, lower = math.inf, 0.0
    for k in range(1, iters + 1):
        Mv = M @ v
        ratios = Mv / v
        upper = min(upper, float(ratios.max()))
        lower = max(lower, float(ratios.min()))
        if upper == 0.0 or upper - lower <= tol * upper:
            logger.debug("power iteration bracketed rho in [%.17g, %.17g] after %d steps", lower, upper, k)
            return SpectralEstimate(value=upper, converged=True, iterations=k, method="power")
        v = Mv + v
        v = np.maximum(v / v.max(), VECTOR_FLOOR)

    bound = gelfand_radius(S)
    value = min(upper, bound)
    logger.warning(
        "power iteration left rho in [%.6g, %.6g] after %d steps; using upper bound %.6g", lower, upper, iters, value
    )
    return SpectralEstimate(value=value, converged=False, iterations=iters, method="gelfand")


def _l1w(x: np.ndarray, w: np.ndarray) -> float:
    return float(np.sum(np.abs(x) * w))


def _scaled_coefficient(F: PowerSeries, j: int, log_r: float) -> float:
    """alpha_j r^j, evaluated in log space."""
    log_a = F.log_alpha(j)
    if log_a == -math.inf:
        return 0.0
    exponent = log_a + j * log_r
    if exponent > MAX_EXPONENT:
        raise ConvergenceError(f"{F.name}: scaled coefficient {j} overflows")
    return math.exp(exponent)


def series_apply(
    F: PowerSeries, S: PositiveOperator, f: NonNegativeVector, opts: Optional[SeriesOptions] = None
) -> NonNegativeVector:
    """sum_j alpha_j S^j f.

    Summation runs over (S/r)^j f with coefficients alpha_j r^j, r the radius of F
    (1 when unbounded), so neither factor leaves the float range. Without a
    declared degree it stops after ``opts.quiet_terms`` consecutive terms that
    are negligible against the partial sum.
    """
    require_same_space(S.space, f.space, "series_apply")
    opts = opts or SeriesOptions()
    r = 1.0
    if math.isfinite(F.radius):
        rho = spectral_radius(S).value
        if rho >= F.radius:
            raise SpectralRadiusError(f"{F.name}: spectral radius estimate {rho:.6g} >= radius {F.radius:.6g}")
        r = F.radius
    log_r = math.log(r)

    w = S.space.weights
    M = S.entries * (w / r)
    term = f.entries.copy()
    result = _scaled_coefficient(F, 0, log_r) * term
    limit = F.degree + 1 if F.degree is not None else opts.max_terms
    converged = F.degree is not None
    quiet = 0
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(1, limit):
            term = M @ term
            if not np.all(np.isfinite(term)):
                raise ConvergenceError(f"{F.name}: term {j} is not finite")
            if not np.any(term):
                converged = True
                break
            contribution = _scaled_coefficient(F, j, log_r) * term
            result = result + contribution
            if not np.all(np.isfinite(result)):
                raise ConvergenceError(f"{F.name}: partial sums overflowed at term {j}")
            if F.degree is not None:
                continue
            if _l1w(contribution, w) <= opts.term_tol * _l1w(result, w):
                quiet += 1
                if quiet >= opts.quiet_terms:
                    logger.debug("%s converged after %d terms", F.name, j + 1)
                    converged = True
                    break
            else:
                quiet = 0
    if not converged:
        raise ConvergenceError(f"{F.name}: no convergence within {opts.max_terms} terms")

    out = NonNegativeVector(space=f.space, entries=np.maximum(result, 0.0))
    if is_strictly_positive(f) and not is_strictly_positive(out):
        logger.warning("%s(S)f is not strictly positive; it is not in C(S)", F.name)
    return out


def exp_apply(S: PositiveOperator, f: NonNegativeVector, opts: Optional[SeriesOptions] = None) -> NonNegativeVector:
    return series_apply(exponential_series(), S, f, opts)


def shifted_solve(S: PositiveOperator, lam: float, rhs: np.ndarray) -> np.ndarray:
    """Solve (lam I - S) g = rhs for the weighted action of S."""
    system = lam * np.eye(S.n) - S.entries * S.space.weights
    try:
        g = scipy.linalg.solve(system, rhs)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"(lam I - S) is singular at lam={lam:g}: {exc}") from exc
    if not np.all(np.isfinite(g)):
        raise ConvergenceError(f"resolvent solve at lam={lam:g} produced non-finite values")
    return g


def resolvent_apply(
    S: PositiveOperator,
    lam: float,
    f: NonNegativeVector,
    opts: Optional[SeriesOptions] = None,
    cross_check: bool = False,
) -> NonNegativeVector:
    """(lam I - S)^-1 f, optionally cross-checked against the Neumann series.

    For lam > rho(S) the result is at least f / lam entrywise; a solve that falls
    below that bound means lam is not above the spectral radius.
    """
    require_same_space(S.space, f.space, "resolvent_apply")
    rho = spectral_radius(S).value
    if not lam > rho:
        raise SpectralRadiusError(f"lam={lam:g} must exceed the spectral radius estimate {rho:.6g}")
    g = shifted_solve(S, lam, f.entries)
    floor = f.entries / lam
    shortfall = floor - g
    if np.any(shortfall > RESOLVENT_TOL * max(1.0, float(np.max(np.abs(g))))):
        i = int(np.argmax(shortfall))
        raise SpectralRadiusError(
            f"lam={lam:g} is not above the spectral radius: (lam I - S)^-1 f is {g[i]:.6g} "
            f"at index {i + 1}, below f/lam = {floor[i]:.6g}"
        )
    if cross_check:
        series = series_apply(neumann_series(lam), S, f, opts).entries
        gap = float(np.max(np.abs(g - series) / np.maximum(1.0, np.abs(g))))
        if gap > CROSS_CHECK_TOL:
            raise InternalConsistencyError(f"resolvent solve and Neumann series differ by {gap:.3g}")
    # only rounding separates g from the bound here
    return NonNegativeVector(space=f.space, entries=np.maximum(g, floor))


def commuting_preservation_check(
    K: PositiveOperator, S: PositiveOperator, cert: ConeCertificate, tol: float = 1e-12
) -> float:
    """Violation of S(Kf) <= Kf for K commuting with S and f in C(S)."""
    require_same_space(K.space, S.space, "commuting_preservation_check")
    require_bound(S, cert)
    KS = compose(K, S).entries
    commutator = float(np.max(np.abs(KS - compose(S, K).entries)))
    if commutator > tol * max(1.0, float(np.max(KS))):
        raise PreconditionError(f"K and S do not commute (max entry of KS - SK is {commutator:.3g})")
    Kf = apply(K, cert.f)
    if not is_strictly_positive(Kf):
        raise PreconditionError("Kf is not strictly positive")
    return float(np.max(order_excess(apply(S, Kf).entries, Kf.entries)))
