"""Midpoint-rule discretization of kernels k(x, y) on [0, 1]^2.

Nodes are x_i = (i + 1/2) / n with weights 1/n, and s_ij = k(x_i, x_j), so the
weighted action of S is the quadrature of (Kf)(x) = int k(x, y) f(y) dy and the
column masses approximate s(y) = int k(x, y) dx.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cone import certify, stochastic_completion
from .errors import PreconditionError
from .inequalities import kernel_holder_check, kernel_seminorm_chain_check
from .models import Completion, KernelSpec, NonNegativeVector, NormKind, PositiveOperator, RefinementRow, WeightedSpace
from .weighted_space import classify, column_mass

logger = logging.getLogger(__name__)

Sampler = Callable[[np.ndarray], np.ndarray]

DEFAULT_SAMPLERS: Dict[str, Sampler] = {
    "f1": lambda x: 1.0 + x,
    "f2": np.exp,
}


def midpoint_nodes(n: int) -> np.ndarray:
    if n < 1:
        raise PreconditionError(f"need at least one node, got {n}")
    return (np.arange(n) + 0.5) / n


def midpoint_space(n: int) -> WeightedSpace:
    return WeightedSpace(weights=np.full(n, 1.0 / n))


def discretize(spec: KernelSpec) -> Tuple[WeightedSpace, PositiveOperator]:
    nodes = midpoint_nodes(spec.grid_n)
    samples = np.broadcast_to(spec.kernel(nodes[:, None], nodes[None, :]), (spec.grid_n, spec.grid_n))
    samples = np.array(samples, dtype=float)
    if not np.all(np.isfinite(samples)):
        raise PreconditionError(f"kernel {spec.name} is not finite at every node")
    if np.any(samples < 0):
        i, j = np.argwhere(samples < 0)[0]
        raise PreconditionError(f"kernel {spec.name} is negative at ({nodes[i]:g}, {nodes[j]:g})")
    space = midpoint_space(spec.grid_n)
    return space, PositiveOperator(space=space, entries=samples)


def sample_function(func: Sampler, n: int) -> NonNegativeVector:
    """Values of a test function at the midpoint nodes."""
    nodes = midpoint_nodes(n)
    values = np.broadcast_to(np.asarray(func(nodes), dtype=float), nodes.shape)
    return NonNegativeVector(space=midpoint_space(n), entries=values)


def _constant(c: float):
    return lambda x, y: np.full(np.broadcast(x, y).shape, c)


def named_kernel(name: str, grid_n: int) -> KernelSpec:
    """Built-in kernels: ``const:<c>``, ``sum``, ``product``, ``quadratic``, ``square``."""
    key = name.strip().lower()
    if key.startswith("const:"):
        try:
            c = float(key[len("const:"):])
        except ValueError:
            raise PreconditionError(f"bad constant in kernel name {name!r}") from None
        kernel, mass = _constant(c), (lambda y, c=c: np.full_like(y, c))
    elif key == "sum":
        kernel, mass = (lambda x, y: x + y), (lambda y: 0.5 + y)
    elif key == "product":
        kernel, mass = (lambda x, y: x * y), (lambda y: y / 2.0)
    elif key == "quadratic":
        kernel, mass = (lambda x, y: (x**2 + y**2) / 4.0), (lambda y: 1.0 / 12.0 + y**2 / 4.0)
    elif key == "square":
        kernel, mass = (lambda x, y: x**2 + 0.0 * y), (lambda y: np.full_like(y, 1.0 / 3.0))
    else:
        raise PreconditionError(f"Unknown kernel: {name}")
    return KernelSpec(name=key, kernel=kernel, grid_n=grid_n, column_mass=mass, samplers=dict(DEFAULT_SAMPLERS))


def continuous_completion_demo(spec: Optional[KernelSpec] = None, grid_n: int = 4) -> Completion:
    """Complete the discretized kernel (default k = 1/2) against f = 1."""
    spec = spec or named_kernel("const:0.5", grid_n)
    space, S = discretize(spec)
    f = NonNegativeVector(space=space, entries=np.ones(space.n))
    completion = stochastic_completion(S, certify(S, f))
    logger.debug("%s at n=%d: lambda=%.17g", spec.name, space.n, completion.lam)
    return completion


def refinement_study(spec: Union[KernelSpec, str], n_list: Sequence[int]) -> List[RefinementRow]:
    """Column-mass error and inequality violations of the discretization at each n."""
    if isinstance(spec, str):
        spec = named_kernel(spec, n_list[0] if n_list else 1)
    if spec.column_mass is None:
        raise PreconditionError(f"kernel {spec.name} has no exact column mass to compare against")
    samplers = spec.samplers or DEFAULT_SAMPLERS

    rows = []
    for n in n_list:
        space, S = discretize(spec.model_copy(update={"grid_n": n}))
        exact = np.asarray(spec.column_mass(midpoint_nodes(n)), dtype=float)
        fs = [sample_function(func, n) for func in samplers.values()]
        alphas = np.full(len(fs), 1.0 / len(fs))
        rows.append(
            RefinementRow(
                n=n,
                column_mass_error=float(np.max(np.abs(column_mass(S) - exact))),
                classification=classify(S),
                holder_violation=kernel_holder_check(S, fs, alphas),
                chain_violation=kernel_seminorm_chain_check(S, fs, alphas, NormKind.l1()),
            )
        )
    return rows


def decay_ratios(rows: Sequence[RefinementRow]) -> List[float]:
    """error(n) / error(2n) for each consecutive pair of rows that doubles n."""
    ratios = []
    for coarse, fine in zip(rows, rows[1:]):
        if fine.n == 2 * coarse.n and fine.column_mass_error > 0:
            ratios.append(coarse.column_mass_error / fine.column_mass_error)
    return ratios
