"""Batch command-line front end.

Exit status: 0 on success, 1 on a cone rejection or a failed property, 2 on a
usage, parse or precondition error. Results go to stdout with 17 significant
digits; diagnostics go to stderr.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from .applications import impact_matrix, leontief_solve, pagerank_solve
from .cone import in_cone, log_convex_combine, stochastic_completion
from .config import Settings, load_settings
from .errors import ConeRejected, ContractViolation, KernelWedgeError, PreconditionError
from .fileio import format_completion, format_matrix, format_vector, read_matrix, read_vector, read_weights
from .kernel_bridge import continuous_completion_demo, decay_ratios, named_kernel, refinement_study
from .models import Economy, NonNegativeVector, NormKind, PositiveOperator, TrialConfig, WeightedSpace
from .suite import PROPERTIES, run_property_suite
from .transforms import exp_apply, resolvent_apply, spectral_radius
from .weighted_space import classify, norm

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _load_operator(args) -> PositiveOperator:
    entries = read_matrix(args.matrix)
    n, m = entries.shape
    if n != m:
        raise PreconditionError(f"{args.matrix}: operator matrix must be square, got {n}x{m}")
    space = WeightedSpace(weights=read_weights(args.weights)) if args.weights else WeightedSpace.uniform(n)
    if space.n != n:
        raise ContractViolation(f"{args.weights} has {space.n} weights for a {n}x{n} matrix")
    return PositiveOperator(space=space, entries=entries)


def _load_vector(path: str, space: WeightedSpace) -> NonNegativeVector:
    entries = read_vector(path)
    if entries.shape[0] != space.n:
        raise ContractViolation(f"{path} has {entries.shape[0]} entries, the operator acts on {space.n}")
    return NonNegativeVector(space=space, entries=entries)


def _tol(args, settings: Settings) -> float:
    return settings.tol if args.tol is None else args.tol


def cmd_classify(args, settings: Settings) -> int:
    print(classify(_load_operator(args), _tol(args, settings)).value)
    return EXIT_OK


def cmd_check_cone(args, settings: Settings) -> int:
    S = _load_operator(args)
    result = in_cone(S, _load_vector(args.vector, S.space), _tol(args, settings))
    if not result.accepted:
        print(f"REJECT {result.describe()}")
        return EXIT_FAILED
    print("ACCEPT")
    print(format_vector(result.slack, "slack"), end="")
    return EXIT_OK


def cmd_complete(args, settings: Settings) -> int:
    S = _load_operator(args)
    result = in_cone(S, _load_vector(args.vector, S.space), _tol(args, settings))
    if not result.accepted:
        print(f"REJECT {result.describe()}")
        return EXIT_FAILED
    print(format_completion(stochastic_completion(S, result)), end="")
    return EXIT_OK


def cmd_combine(args, settings: Settings) -> int:
    S = _load_operator(args)
    certs = []
    for k, path in enumerate(args.vector, start=1):
        result = in_cone(S, _load_vector(path, S.space), _tol(args, settings))
        if not result.accepted:
            print(f"REJECT vector {k} ({path}): {result.describe()}")
            return EXIT_FAILED
        certs.append(result)
    h = log_convex_combine(certs, args.alpha)
    print(format_vector(h.f.entries), end="")
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    config = TrialConfig(
        n_range=(args.n_min, args.n_max),
        m_range=(args.m_min, args.m_max),
        trials=settings.trials if args.trials is None else args.trials,
        seed=settings.seed if args.seed is None else args.seed,
        tol=settings.violation_tol if args.tol is None else args.tol,
        properties=tuple(args.property) if args.property else None,
    )
    reports = run_property_suite(config, verbose=args.verbose)
    for report in reports:
        print(report.line())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_spectral(args, settings: Settings) -> int:
    estimate = spectral_radius(_load_operator(args), iters=args.iters, tol=_tol(args, settings))
    print(
        f"rho={_fmt(estimate.value)} converged={str(estimate.converged).lower()} "
        f"iterations={estimate.iterations} method={estimate.method}"
    )
    return EXIT_OK


def cmd_resolvent(args, settings: Settings) -> int:
    S = _load_operator(args)
    g = resolvent_apply(S, args.lam, _load_vector(args.vector, S.space), cross_check=args.cross_check)
    print(format_vector(g.entries), end="")
    return EXIT_OK


def cmd_exp(args, settings: Settings) -> int:
    S = _load_operator(args)
    print(format_vector(exp_apply(S, _load_vector(args.vector, S.space)).entries), end="")
    return EXIT_OK


def cmd_leontief(args, settings: Settings) -> int:
    S = _load_operator(args)
    economy = Economy(technology=S, tol=_tol(args, settings))
    print(format_vector(leontief_solve(economy, _load_vector(args.vector, S.space)).entries), end="")
    return EXIT_OK


def cmd_pagerank(args, settings: Settings) -> int:
    S = _load_operator(args)
    p = pagerank_solve(S, _load_vector(args.vector, S.space), _tol(args, settings))
    print(format_vector(p.entries), end="")
    return EXIT_OK


def cmd_impact(args, settings: Settings) -> int:
    economy = Economy(technology=_load_operator(args), tol=_tol(args, settings))
    print(format_matrix(impact_matrix(economy).entries), end="")
    return EXIT_OK


def cmd_kernel_demo(args, settings: Settings) -> int:
    completion = continuous_completion_demo(named_kernel(args.kernel, args.grid_n))
    print(format_completion(completion), end="")
    return EXIT_OK


def cmd_refine(args, settings: Settings) -> int:
    rows = refinement_study(args.kernel, args.n)
    for row in rows:
        v1, v2 = row.chain_violation
        print(
            f"n={row.n} mass_error={_fmt(row.column_mass_error)} class={row.classification.value} "
            f"holder={_fmt(row.holder_violation)} chain={_fmt(v1)},{_fmt(v2)}"
        )
    ratios = decay_ratios(rows)
    if ratios:
        print("ratios " + " ".join(_fmt(r) for r in ratios))
    return EXIT_OK


def cmd_norm(args, settings: Settings) -> int:
    values = read_vector(args.vector)
    space = WeightedSpace(weights=read_weights(args.weights)) if args.weights else WeightedSpace.uniform(values.shape[0])
    if space.n != values.shape[0]:
        raise ContractViolation(f"{args.weights} has {space.n} weights for {values.shape[0]} entries")
    x = NonNegativeVector(space=space, entries=values)
    kinds = [NormKind.l1(), NormKind.linf(), *(NormKind.lp(p) for p in args.p)]
    for kind in kinds:
        print(f"{kind}={_fmt(norm(x, kind))}")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "classify": cmd_classify,
    "check-cone": cmd_check_cone,
    "complete": cmd_complete,
    "combine": cmd_combine,
    "verify": cmd_verify,
    "spectral": cmd_spectral,
    "resolvent": cmd_resolvent,
    "exp": cmd_exp,
    "leontief": cmd_leontief,
    "pagerank": cmd_pagerank,
    "impact": cmd_impact,
    "kernel-demo": cmd_kernel_demo,
    "refine": cmd_refine,
    "norm": cmd_norm,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--tol", type=float, default=None, help="comparison tolerance (default 1e-12)")

    operator = argparse.ArgumentParser(add_help=False)
    operator.add_argument("--matrix", required=True, help="matrix file")
    operator.add_argument("--weights", help="weights file (default: all ones)")

    vector = argparse.ArgumentParser(add_help=False)
    vector.add_argument("--vector", required=True, help="vector file")

    parser = argparse.ArgumentParser(prog="kernelwedge", description="Stochastic kernel operators and their fixed-point wedges.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common, operator], help="stochasticity class of S")
    sub.add_parser("check-cone", parents=[common, operator, vector], help="is f in C(S)?")
    sub.add_parser("complete", parents=[common, operator, vector], help="stochastic completion fixing f")

    p = sub.add_parser("combine", parents=[common, operator], help="weighted geometric mean of cone elements")
    p.add_argument("--vector", action="append", required=True, help="vector file (repeat per element)")
    p.add_argument("--alpha", type=float, nargs="+", required=True, help="exponents summing to 1")

    p = sub.add_parser("verify", parents=[common], help="randomized property suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--property", action="append", choices=list(PROPERTIES), help="restrict to a property (repeatable)")

    p = sub.add_parser("spectral", parents=[common, operator], help="spectral radius estimate")
    p.add_argument("--iters", type=int, default=10_000)

    p = sub.add_parser("resolvent", parents=[common, operator, vector], help="(lambda I - S)^-1 f")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--cross-check", action="store_true", help="compare against the Neumann series")

    sub.add_parser("exp", parents=[common, operator, vector], help="exp(S) f")
    sub.add_parser("leontief", parents=[common, operator, vector], help="supply meeting the demand vector")
    sub.add_parser("pagerank", parents=[common, operator, vector], help="steady state p = x + Sp")
    sub.add_parser("impact", parents=[common, operator], help="impact matrix (I - S)^-1")

    p = sub.add_parser("kernel-demo", parents=[common], help="complete a discretized kernel against f = 1")
    p.add_argument("--kernel", default="const:0.5", help="const:<c>, sum, product, quadratic or square")
    p.add_argument("--grid-n", type=int, default=4)

    p = sub.add_parser("refine", parents=[common], help="midpoint refinement table for a named kernel")
    p.add_argument("--kernel", default="quadratic")
    p.add_argument("--n", type=int, nargs="+", default=[4, 8, 16, 32])

    p = sub.add_parser("norm", parents=[common, vector], help="weighted norms of a vector")
    p.add_argument("--weights", help="weights file (default: all ones)")
    p.add_argument("--p", type=float, nargs="*", default=[2.0], help="exponents for the Lp norms")
    return parser


def _configure_logging(verbose: bool, level: str):
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return EXIT_OK if exc.code in (None, 0) else EXIT_ERROR

    try:
        settings = load_settings()
    except ValidationError as exc:
        print(f"error: invalid KERNELWEDGE_* setting: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _configure_logging(args.verbose, settings.log_level)

    try:
        return COMMANDS[args.command](args, settings)
    except ConeRejected as exc:
        print(f"REJECT {exc}")
        return EXIT_FAILED
    except (KernelWedgeError, ValidationError, ValueError, ArithmeticError) as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
