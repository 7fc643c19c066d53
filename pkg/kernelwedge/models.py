import hashlib
import math
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import PreconditionError


def _frozen_array(value, ndim: int, name: str) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


class _ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class WeightedSpace(_ArrayModel):
    """Finite index set {0..n-1} with point masses weights[i] > 0."""

    weights: np.ndarray

    @field_validator("weights", mode="before")
    @classmethod
    def _check_weights(cls, value):
        arr = _frozen_array(value, 1, "weights")
        if arr.size < 1:
            raise ValueError("a weighted space needs at least one index")
        if np.any(arr <= 0):
            raise ValueError("weights must be strictly positive")
        return arr

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @classmethod
    def uniform(cls, n: int) -> "WeightedSpace":
        """Counting measure on n points."""
        return cls(weights=np.ones(n))

    def same_as(self, other: "WeightedSpace") -> bool:
        return self is other or (self.n == other.n and np.array_equal(self.weights, other.weights))

    def vector(self, entries) -> "NonNegativeVector":
        return NonNegativeVector(space=self, entries=entries)

    def operator(self, entries) -> "PositiveOperator":
        return PositiveOperator(space=self, entries=entries)


class NonNegativeVector(_ArrayModel):
    space: WeightedSpace
    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _check_entries(cls, value):
        arr = _frozen_array(value, 1, "vector entries")
        if np.any(arr < 0):
            raise ValueError("vector entries must be non-negative")
        return arr

    @model_validator(mode="after")
    def _check_length(self):
        if self.entries.shape[0] != self.space.n:
            raise ValueError(f"vector has {self.entries.shape[0]} entries, space has {self.space.n}")
        return self

    @property
    def n(self) -> int:
        return self.space.n


class PositiveOperator(_ArrayModel):
    """Non-negative matrix s acting as (Sx)_i = sum_j s_ij x_j w_j."""

    space: WeightedSpace
    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _check_entries(cls, value):
        arr = _frozen_array(value, 2, "operator entries")
        if np.any(arr < 0):
            raise ValueError("operator entries must be non-negative")
        return arr

    @model_validator(mode="after")
    def _check_shape(self):
        n = self.space.n
        if self.entries.shape != (n, n):
            raise ValueError(f"operator must be {n}x{n}, got {self.entries.shape}")
        return self

    @property
    def n(self) -> int:
        return self.space.n

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.asarray(self.entries.shape, dtype=np.int64).tobytes())
        h.update(np.ascontiguousarray(self.space.weights).tobytes())
        h.update(np.ascontiguousarray(self.entries).tobytes())
        return h.hexdigest()


class NormKind(BaseModel):
    """Weighted lattice norm, optionally restricted to ``support`` (then a seminorm)."""

    model_config = ConfigDict(frozen=True)

    tag: Literal["L1w", "LInfW", "LpW"]
    p: Optional[float] = None
    support: Optional[Tuple[int, ...]] = None

    @model_validator(mode="after")
    def _check(self):
        if self.tag == "LpW":
            if self.p is None or not (1.0 < self.p < math.inf):
                raise ValueError("LpW needs a finite p > 1")
        elif self.p is not None:
            raise ValueError(f"{self.tag} takes no p")
        if self.support is not None and (len(self.support) == 0 or min(self.support) < 0):
            raise ValueError("support must be a non-empty set of non-negative indices")
        return self

    @classmethod
    def l1(cls) -> "NormKind":
        return cls(tag="L1w")

    @classmethod
    def linf(cls) -> "NormKind":
        return cls(tag="LInfW")

    @classmethod
    def lp(cls, p: float) -> "NormKind":
        return cls(tag="LpW", p=p)

    @classmethod
    def parse(cls, text: str) -> "NormKind":
        """Accepts ``l1``, ``linf``, ``lp:<p>`` (and the tag spellings)."""
        key = text.strip().lower()
        if key in ("l1", "l1w"):
            return cls.l1()
        if key in ("linf", "linfw", "inf"):
            return cls.linf()
        if key.startswith("lp:"):
            return cls.lp(float(key[3:]))
        if key.startswith("lpw(") and key.endswith(")"):
            return cls.lp(float(key[4:-1]))
        raise ValueError(f"Unknown norm kind: {text}")

    def __str__(self) -> str:
        label = f"LpW({self.p:g})" if self.tag == "LpW" else self.tag
        if self.support is not None:
            label += "[" + ",".join(str(i) for i in self.support) + "]"
        return label


class StochClass(str, Enum):
    STOCHASTIC = "Stochastic"
    SUBSTOCHASTIC_NOT_STOCHASTIC = "SubstochasticNotStochastic"
    STRICTLY_SUBSTOCHASTIC = "StrictlySubstochastic"
    NOT_SUBSTOCHASTIC = "NotSubstochastic"

    @property
    def is_substochastic_not_stochastic(self) -> bool:
        return self in (StochClass.SUBSTOCHASTIC_NOT_STOCHASTIC, StochClass.STRICTLY_SUBSTOCHASTIC)


class ConeCertificate(_ArrayModel):
    """Proof that f >> 0 and Sf <= f for the operator with ``operator_digest``."""

    f: NonNegativeVector
    slack: np.ndarray
    operator: PositiveOperator
    operator_digest: str
    tol: float = Field(ge=0.0)

    @field_validator("slack", mode="before")
    @classmethod
    def _check_slack(cls, value):
        arr = _frozen_array(value, 1, "slack")
        if np.any(arr < 0):
            raise ValueError("slack is recorded clipped at zero")
        return arr

    @model_validator(mode="after")
    def _check_binding(self):
        if not np.all(self.f.entries > 0):
            raise ValueError("a cone certificate needs f >> 0")
        if self.operator_digest != self.operator.digest:
            raise ValueError("operator_digest does not match the bound operator")
        if not self.f.space.same_as(self.operator.space):
            raise ValueError("f and the operator live on different spaces")
        return self

    @property
    def accepted(self) -> bool:
        return True


class ConeRejection(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0, description="0-based index of the first violated entry")
    reason: Literal["not_strictly_positive", "not_subinvariant"]
    violation: float
    operator_digest: str

    @property
    def accepted(self) -> bool:
        return False

    def describe(self) -> str:
        if self.reason == "not_strictly_positive":
            return f"f is not strictly positive at index {self.index + 1}"
        return f"(Sf)_i exceeds f_i at index {self.index + 1} by {self.violation:.17g}"


class Completion(_ArrayModel):
    """Stochastic majorant A = S + phi psi^T / lam that fixes f."""

    A: PositiveOperator
    f: NonNegativeVector
    phi: np.ndarray
    psi: np.ndarray
    lam: float = Field(gt=0.0, description="sum_j psi_j f_j w_j")

    @field_validator("phi", "psi", mode="before")
    @classmethod
    def _check_vectors(cls, value):
        arr = _frozen_array(value, 1, "completion vector")
        if np.any(arr < 0):
            raise ValueError("phi and psi are non-negative")
        return arr


class TrialConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_range: Tuple[int, int] = (2, 20)
    m_range: Tuple[int, int] = (1, 4)
    trials: int = Field(default=1000, ge=1)
    seed: int = Field(default=42, ge=0, lt=2**64)
    tol: float = Field(default=1e-10, gt=0.0)
    norm_kinds: Tuple[NormKind, ...] = (
        NormKind(tag="L1w"),
        NormKind(tag="LInfW"),
        NormKind(tag="LpW", p=2.0),
        NormKind(tag="LpW", p=3.5),
    )
    properties: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_ranges(self):
        for label, (lo, hi) in (("n_range", self.n_range), ("m_range", self.m_range)):
            if lo < 1 or hi < lo:
                raise ValueError(f"{label} must satisfy 1 <= min <= max, got {(lo, hi)}")
        if not self.norm_kinds:
            raise ValueError("norm_kinds must not be empty")
        return self


class PropertyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    property_name: str
    trials_run: int
    failures: int
    worst_violation: float
    worst_seed: int
    passed: bool

    @model_validator(mode="after")
    def _check_pass(self):
        if self.passed != (self.failures == 0):
            raise ValueError("passed must be equivalent to failures == 0")
        return self

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.property_name} trials={self.trials_run} "
            f"worst={self.worst_violation:.17g} seed={self.worst_seed}"
        )


class SeriesOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_terms: int = Field(default=10_000, ge=1)
    term_tol: float = Field(default=1e-15, gt=0.0)
    quiet_terms: int = Field(default=3, ge=1, description="consecutive negligible terms that end the summation")


class PowerSeries(BaseModel):
    """F(z) = sum_j alpha_j z^j with alpha_j >= 0; ``degree`` set for polynomials.

    ``log_coefficient`` gives log(alpha_j) directly (-inf for a zero coefficient)
    for series whose coefficients leave the float range.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    coefficient: Callable[[int], float]
    radius: float = Field(default=math.inf, gt=0.0)
    degree: Optional[int] = Field(default=None, ge=0)
    log_coefficient: Optional[Callable[[int], float]] = None

    def alpha(self, j: int) -> float:
        value = float(self.coefficient(j))
        if not math.isfinite(value) or value < 0:
            raise PreconditionError(f"{self.name}: coefficient {j} is {value}, expected finite and >= 0")
        return value

    def log_alpha(self, j: int) -> float:
        if self.log_coefficient is not None:
            value = float(self.log_coefficient(j))
            if math.isnan(value) or value == math.inf:
                raise PreconditionError(f"{self.name}: log coefficient {j} is {value}")
            return value
        a = self.alpha(j)
        return math.log(a) if a > 0 else -math.inf


class SpectralEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0)
    converged: bool
    iterations: int
    method: Literal["power", "gelfand"]


class Economy(BaseModel):
    """Open Leontief economy: technology matrix plus optional good names."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    technology: PositiveOperator
    labels: Optional[Tuple[str, ...]] = None
    tol: float = Field(default=1e-12, ge=0.0)

    @model_validator(mode="after")
    def _check(self):
        from .weighted_space import classify

        tag = classify(self.technology, self.tol)
        if tag is not StochClass.STRICTLY_SUBSTOCHASTIC:
            raise ValueError(f"technology matrix must be strictly substochastic, got {tag.value}")
        if self.labels is not None and len(self.labels) != self.technology.n:
            raise ValueError(f"{len(self.labels)} labels for {self.technology.n} goods")
        return self


class Bundle(BaseModel):
    """Commodity amounts; the space weights are the unit prices."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: NonNegativeVector

    @property
    def space(self) -> WeightedSpace:
        return self.x.space


class KernelSpec(BaseModel):
    """Kernel k on [0,1]^2, vectorized over numpy arrays."""

    model_config = ConfigDict(frozen=True)

    name: str
    kernel: Callable[[np.ndarray, np.ndarray], np.ndarray]
    grid_n: int = Field(ge=1)
    column_mass: Optional[Callable[[np.ndarray], np.ndarray]] = None
    samplers: Dict[str, Callable[[np.ndarray], np.ndarray]] = Field(default_factory=dict)


class RefinementRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    column_mass_error: float
    classification: StochClass
    holder_violation: float
    chain_violation: Tuple[float, float]
