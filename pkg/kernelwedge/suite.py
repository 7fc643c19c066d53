"""Seeded randomized certification of every inequality and cone property.

Each property draws its own instance from ``default_rng([seed ^ trial, index])``
so a report depends only on the config, never on execution order.
"""

import logging
from typing import Callable, Dict, List

import numpy as np

from .cone import completion_residuals, log_convex_combine, stochastic_completion, wedge_add, wedge_scale
from .errors import KernelWedgeError, PreconditionError
from .inequalities import (
    cone_mixed_bound_check,
    cone_norm_bound_check,
    excess,
    holder_seminorm_check,
    kernel_holder_check,
    kernel_seminorm_chain_check,
    kernel_sum_split_check,
    max_excess,
    random_cone_element,
    random_nonnegative,
    random_positive,
    random_simplex,
    random_substochastic,
    random_weights,
    sum_split_check,
    sum_split_seminorm_check,
    young_argmin,
    young_eval,
    young_grid_search,
)
from .models import NonNegativeVector, NormKind, PropertyReport, TrialConfig
from .transforms import exp_apply, resolvent_apply, spectral_radius
from .weighted_space import apply, is_strictly_positive, order_excess

logger = logging.getLogger(__name__)

STRICT_FLOOR = 1e-3
YOUNG_T_SAMPLES = 10
RESOLVENT_SHIFT = 0.1

PropertyFn = Callable[["PropertySuite", np.random.Generator], float]
PROPERTIES: Dict[str, PropertyFn] = {}


def _property(name: str):
    def register(fn: PropertyFn) -> PropertyFn:
        PROPERTIES[name] = fn
        return fn

    return register


def _open_alpha(rng: np.random.Generator) -> float:
    return float(rng.uniform(STRICT_FLOOR, 1.0 - STRICT_FLOOR))


def _young_operands(rng: np.random.Generator):
    # (0, 1000]: 1 - random() never hits 0
    x = 1e3 * (1.0 - rng.random())
    y = 1e3 * (1.0 - rng.random())
    return x, y


@_property("young_inequality")
def _young_inequality(suite: "PropertySuite", rng: np.random.Generator) -> float:
    x, y = _young_operands(rng)
    alpha = _open_alpha(rng)
    _, value = young_argmin(x, y, alpha)
    ts = 10.0 ** rng.uniform(-3.0, 3.0, size=YOUNG_T_SAMPLES)
    return max(excess(value, young_eval(x, y, alpha, float(t))) for t in ts)


@_property("young_argmin")
def _young_argmin(suite: "PropertySuite", rng: np.random.Generator) -> float:
    x, y = _young_operands(rng)
    alpha = float(rng.uniform(0.05, 0.95))
    t_star, value = young_argmin(x, y, alpha)
    attained = abs(young_eval(x, y, alpha, t_star) - value) / max(1.0, value)
    _, grid_value = young_grid_search(x, y, alpha)
    return max(attained, excess(value, grid_value))


@_property("holder_seminorm")
def _holder_seminorm(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    fs = [random_nonnegative(rng, space) for _ in range(m)]
    alphas = random_simplex(rng, m, floor=STRICT_FLOOR)
    return max(holder_seminorm_check(fs, alphas, kind) for kind in suite.norm_kinds(rng, space.n))


@_property("integral_holder")
def _integral_holder(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    fs = [random_nonnegative(rng, space) for _ in range(m)]
    alphas = random_simplex(rng, m, floor=STRICT_FLOOR)
    return holder_seminorm_check(fs, alphas, NormKind.l1())


@_property("kernel_holder")
def _kernel_holder(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    K = random_positive(rng, space)
    fs = [random_nonnegative(rng, space) for _ in range(m)]
    return kernel_holder_check(K, fs, random_simplex(rng, m, floor=STRICT_FLOOR))


@_property("kernel_seminorm_chain")
def _kernel_seminorm_chain(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    K = random_positive(rng, space)
    fs = [random_nonnegative(rng, space) for _ in range(m)]
    alphas = random_simplex(rng, m, floor=STRICT_FLOOR)
    return max(max(kernel_seminorm_chain_check(K, fs, alphas, kind)) for kind in suite.norm_kinds(rng, space.n))


def _pairs(suite: "PropertySuite", rng: np.random.Generator):
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    fs = [random_nonnegative(rng, space) for _ in range(m)]
    gs = [random_nonnegative(rng, space) for _ in range(m)]
    return space, fs, gs, _open_alpha(rng)


@_property("kernel_sum_split")
def _kernel_sum_split(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, fs, gs, alpha = _pairs(suite, rng)
    return max(kernel_sum_split_check(random_positive(rng, space), fs, gs, alpha))


@_property("sum_split")
def _sum_split(suite: "PropertySuite", rng: np.random.Generator) -> float:
    _, fs, gs, alpha = _pairs(suite, rng)
    return sum_split_check(fs, gs, alpha)


@_property("sum_split_seminorm")
def _sum_split_seminorm(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, fs, gs, alpha = _pairs(suite, rng)
    K = random_positive(rng, space)
    return max(max(sum_split_seminorm_check(K, fs, gs, alpha, kind)) for kind in suite.norm_kinds(rng, space.n))


@_property("stochastic_completion")
def _stochastic_completion(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space = suite.draw_space(rng)
    S = random_substochastic(rng, space)
    completion = stochastic_completion(S, random_cone_element(rng, S))
    return max(completion_residuals(S, completion).values())


@_property("wedge_closure")
def _wedge_closure(suite: "PropertySuite", rng: np.random.Generator) -> float:
    S = random_substochastic(rng, suite.draw_space(rng))
    c1, c2 = random_cone_element(rng, S), random_cone_element(rng, S)
    results = [wedge_add(c1, c2), wedge_scale(c1, float(10.0 ** rng.uniform(-3.0, 3.0)))]
    return max(max_excess(apply(S, c.f).entries, c.f.entries) for c in results)


@_property("log_convex_closure")
def _log_convex_closure(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    S = random_substochastic(rng, space)
    certs = [random_cone_element(rng, S) for _ in range(m)]
    alphas = random_simplex(rng, m, allow_zero=True)
    h = log_convex_combine(certs, alphas).f.entries
    stacked = np.stack([c.f.entries for c in certs])
    direct = np.prod(stacked ** alphas[:, None], axis=0)
    Sh = apply(S, NonNegativeVector(space=space, entries=direct)).entries
    drift = float(np.max(np.abs(h - direct) / np.maximum(1.0, direct)))
    return max(max_excess(Sh, direct), drift)


@_property("cone_norm_bound")
def _cone_norm_bound(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    S = random_substochastic(rng, space)
    certs = [random_cone_element(rng, S) for _ in range(m)]
    alphas = random_simplex(rng, m, allow_zero=True)
    return max(max(cone_norm_bound_check(S, certs, alphas, kind)) for kind in suite.norm_kinds(rng, space.n))


@_property("cone_mixed_bound")
def _cone_mixed_bound(suite: "PropertySuite", rng: np.random.Generator) -> float:
    space, m = suite.draw_space(rng), suite.draw_m(rng)
    S = random_substochastic(rng, space)
    f_certs = [random_cone_element(rng, S) for _ in range(m)]
    g_certs = [random_cone_element(rng, S) for _ in range(m)]
    alpha = _open_alpha(rng)
    return max(
        max(cone_mixed_bound_check(S, f_certs, g_certs, alpha, kind)) for kind in suite.norm_kinds(rng, space.n)
    )


@_property("transform_preservation")
def _transform_preservation(suite: "PropertySuite", rng: np.random.Generator) -> float:
    S = random_substochastic(rng, suite.draw_space(rng))
    f = random_cone_element(rng, S).f
    M = S.entries * S.space.weights
    f_mass = max(1.0, float(np.sum(f.entries * S.space.weights)))

    worst = 0.0
    g = exp_apply(S, f)
    outputs = [(g, order_excess(f.entries, g.entries))]
    rho = spectral_radius(S).value
    for lam in (1.0, rho + RESOLVENT_SHIFT, 2.0):
        g = resolvent_apply(S, lam, f)
        residual = lam * g.entries - M @ g.entries - f.entries
        worst = max(worst, float(np.sum(np.abs(residual) * S.space.weights)) / f_mass)
        outputs.append((g, order_excess(f.entries / lam, g.entries)))

    for g, below in outputs:
        if not is_strictly_positive(g):
            return float("inf")
        worst = max(worst, float(np.max(below)), max_excess(apply(S, g).entries, g.entries))
    return worst


class PropertySuite:
    """Runs the selected properties for ``config.trials`` seeded trials each."""

    def __init__(self, config: TrialConfig = None, verbose: bool = False):
        self.config = config or TrialConfig()
        self.verbose = verbose
        self.reports: List[PropertyReport] = []

        names = list(PROPERTIES) if self.config.properties is None else list(self.config.properties)
        unknown = [name for name in names if name not in PROPERTIES]
        if unknown:
            raise PreconditionError(f"Unknown properties: {', '.join(unknown)}")
        self.properties = names

    def _log(self, message: str):
        """Log progress at INFO when verbose, DEBUG otherwise."""
        logger.log(logging.INFO if self.verbose else logging.DEBUG, message)

    def _call_property(self, name: str, rng: np.random.Generator) -> float:
        if name not in PROPERTIES:
            raise ValueError(f"Unknown property: {name}")
        return float(PROPERTIES[name](self, rng))

    def draw_space(self, rng: np.random.Generator):
        lo, hi = self.config.n_range
        return random_weights(rng, int(rng.integers(lo, hi + 1)))

    def draw_m(self, rng: np.random.Generator) -> int:
        lo, hi = self.config.m_range
        return int(rng.integers(lo, hi + 1))

    def norm_kinds(self, rng: np.random.Generator, n: int) -> List[NormKind]:
        """Configured norms plus one weighted L1 seminorm on a random index subset."""
        size = int(rng.integers(1, n + 1))
        support = tuple(sorted(int(i) for i in rng.choice(n, size=size, replace=False)))
        return [*self.config.norm_kinds, NormKind(tag="L1w", support=support)]

    def run_property(self, name: str) -> PropertyReport:
        index = list(PROPERTIES).index(name)
        seed, tol = self.config.seed, self.config.tol
        failures = 0
        worst, worst_seed = 0.0, seed
        for trial in range(self.config.trials):
            sub_seed = seed ^ trial
            rng = np.random.default_rng([sub_seed, index])
            try:
                violation = self._call_property(name, rng)
            except (KernelWedgeError, ArithmeticError, ValueError) as exc:
                self._log(f"  {name} trial {trial} (seed {sub_seed}) raised {type(exc).__name__}: {exc}")
                violation = float("inf")
            if np.isnan(violation):
                violation = float("inf")
            if violation > tol:
                failures += 1
            if violation > worst:
                worst, worst_seed = violation, sub_seed

        report = PropertyReport(
            property_name=name,
            trials_run=self.config.trials,
            failures=failures,
            worst_violation=worst,
            worst_seed=worst_seed,
            passed=failures == 0,
        )
        self._log(report.line())
        return report

    def run(self) -> List[PropertyReport]:
        self._log(f"Running {len(self.properties)} properties x {self.config.trials} trials (seed {self.config.seed})")
        self.reports = [self.run_property(name) for name in self.properties]
        failed = [r.property_name for r in self.reports if not r.passed]
        if failed:
            logger.warning("properties failed: %s", ", ".join(failed))
        return self.reports


def run_property_suite(config: TrialConfig = None, verbose: bool = False) -> List[PropertyReport]:
    return PropertySuite(config, verbose=verbose).run()
