from __future__ import annotations

import hashlib
import math
from datetime import datetime, timezone
from enum import StrEnum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_serializer,
    field_validator,
    model_validator,
)

from .exceptions import DomainError, ParameterError


class Measure(StrEnum):
    """Measure a quadrature rule or grid function integrates against."""

    LEBESGUE = "lebesgue"
    JACOBI = "jacobi"
    WEIGHTED = "weighted"


class Basis(StrEnum):
    """System the coefficients of an Expansion refer to.

    TRIGONOMETRIC means the functions phi_n (orthonormal in L^2(d theta)),
    POLYNOMIAL means the normalized polynomials P_n(cos theta) (orthonormal in L^2(d mu)).
    """

    TRIGONOMETRIC = "trigonometric"
    POLYNOMIAL = "polynomial"


class ExponentRange(BaseModel):
    """Open interval (p'(alpha, beta), p(alpha, beta)) of admissible L^p exponents."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float

    def contains(self, p: float) -> bool:
        return self.lower < p < self.upper

    def __str__(self) -> str:
        return f"({self.lower:g}, {self.upper:g})"


class ParameterPair(BaseModel):
    """Jacobi parameters (alpha, beta), both greater than -1."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float

    @field_validator("alpha", "beta")
    @classmethod
    def _check_range(cls, v: float) -> float:
        if not (math.isfinite(v) and v > -1):
            raise ParameterError(f"Jacobi parameters must be finite and greater than -1, got {v}")
        return v

    @computed_field
    @property
    def a(self) -> float:
        """A = (alpha + beta + 1) / 2, the shift in the eigenvalues (n + A)^2."""
        return (self.alpha + self.beta + 1) / 2

    @computed_field
    @property
    def singular(self) -> bool:
        """True exactly when alpha + beta == -1 (the bottom eigenvalue vanishes)."""
        return self.alpha + self.beta == -1

    @property
    def integer_sum(self) -> bool:
        return float(self.alpha + self.beta).is_integer()

    @property
    def exponent_range(self) -> ExponentRange:
        m = min(self.alpha + 0.5, self.beta + 0.5)
        if m >= 0:
            return ExponentRange(lower=1.0, upper=math.inf)
        upper = -1 / m
        return ExponentRange(lower=upper / (upper - 1), upper=upper)

    def shifted(self, k: int) -> ParameterPair:
        """Pair (alpha + k, beta + k) reached after k derivatives."""
        return ParameterPair(alpha=self.alpha + k, beta=self.beta + k)

    def __str__(self) -> str:
        return f"({self.alpha:g}, {self.beta:g})"


def _as_coefficients(value: Any) -> np.ndarray:
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], dict):
        value = [complex(c["re"], c.get("im", 0.0)) for c in value]
    arr = np.array(value, dtype=np.complex128, copy=True)
    if arr.ndim != 1:
        raise ParameterError(f"Coefficients must be a vector, got shape {arr.shape}")
    if arr.size == 0:
        raise ParameterError("An expansion needs at least one coefficient")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("Coefficients must be finite")
    arr.setflags(write=False)
    return arr


class Expansion(BaseModel):
    """Finite Fourier-Jacobi expansion sum a_n phi_n (or sum a_n P_n for the polynomial basis)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ParameterPair
    coeffs: np.ndarray
    basis: Basis = Basis.TRIGONOMETRIC

    @field_validator("coeffs", mode="before")
    @classmethod
    def _validate_coeffs(cls, v: Any) -> np.ndarray:
        return _as_coefficients(v)

    @field_serializer("coeffs")
    def _serialize_coeffs(self, v: np.ndarray) -> List[Dict[str, float]]:
        return [{"re": float(c.real), "im": float(c.imag)} for c in v]

    @property
    def size(self) -> int:
        return int(self.coeffs.size)

    @property
    def active_degree(self) -> int:
        """Largest index with a nonzero coefficient, 0 for the zero expansion."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def with_coeffs(self, coeffs: Any, params: Optional[ParameterPair] = None) -> Expansion:
        return Expansion(params=params or self.params, coeffs=coeffs, basis=self.basis)

    def in_basis(self, basis: Basis) -> Expansion:
        """Same coefficients read in another basis (f / Psi <-> f * Psi)."""
        return Expansion(params=self.params, coeffs=self.coeffs, basis=basis)

    @classmethod
    def zero(cls, params: ParameterPair, size: int = 1) -> Expansion:
        return cls(params=params, coeffs=np.zeros(size))

    @classmethod
    def unit(cls, params: ParameterPair, n: int, size: Optional[int] = None) -> Expansion:
        """The single mode e_n."""
        if n < 0:
            raise ParameterError(f"Mode index must be non-negative, got {n}")
        coeffs = np.zeros(size or n + 1)
        coeffs[n] = 1.0
        return cls(params=params, coeffs=coeffs)

    def to_record(self) -> Dict[str, Any]:
        """JSON record {alpha, beta, coeffs: [{re, im}, ...]}."""
        return {
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "coeffs": self._serialize_coeffs(self.coeffs),
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> Expansion:
        return cls(
            params=ParameterPair(alpha=record["alpha"], beta=record["beta"]),
            coeffs=record["coeffs"],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return (
            self.params == other.params
            and self.basis == other.basis
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]


def _check_interior(nodes: np.ndarray) -> None:
    if nodes.size and not (np.all(nodes > 0) and np.all(nodes < np.pi)):
        raise DomainError("Grid nodes must lie strictly inside (0, pi)")


class QuadratureRule(BaseModel):
    """Nodes and weights on (0, pi) integrating against d theta or d mu.

    alpha and beta are the Jacobi exponents the rule was built for; they may
    differ from any ParameterPair (p-adapted rules use non-standard exponents).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: np.ndarray
    weights: np.ndarray
    measure: Measure
    alpha: float
    beta: float

    @model_validator(mode="after")
    def _validate(self) -> QuadratureRule:
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ParameterError("Nodes and weights must be vectors of equal length")
        _check_interior(self.nodes)
        if np.any(np.diff(self.nodes) <= 0):
            raise ParameterError("Quadrature nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise ParameterError("Quadrature weights must be positive")
        return self

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def x_weights(self) -> np.ndarray:
        """Weights of the underlying Gauss-Jacobi rule in x = cos(theta)."""
        scale = 2.0 ** (self.alpha + self.beta + 1)
        if self.measure == Measure.LEBESGUE:
            half = self.nodes / 2
            density = np.sin(half) ** (2 * self.alpha + 1) * np.cos(half) ** (2 * self.beta + 1)
            return self.weights * density * scale
        return self.weights * scale

    def integrate(self, values: np.ndarray) -> complex | float:
        return np.tensordot(self.weights, values, axes=(0, 0))


class GridFunction(BaseModel):
    """Values of a function on a theta grid together with the measure they are integrated against."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: np.ndarray
    values: np.ndarray
    measure: Measure = Measure.LEBESGUE
    weights: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def _validate(self) -> GridFunction:
        _check_interior(self.nodes)
        if self.values.shape != self.nodes.shape:
            raise ParameterError("Grid values must match the grid nodes")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("Grid values must be finite")
        if self.weights is not None and self.weights.shape != self.nodes.shape:
            raise ParameterError("Grid weights must match the grid nodes")
        return self

    @classmethod
    def on_rule(cls, rule: QuadratureRule, values: np.ndarray, measure: Optional[Measure] = None) -> GridFunction:
        return cls(
            nodes=rule.nodes,
            values=np.asarray(values),
            measure=measure or rule.measure,
            weights=rule.weights,
        )


class RatioStats(BaseModel):
    """Summary statistics of a sample of ratios."""

    min: float
    max: float
    mean: float
    quantiles: Dict[str, float] = Field(default_factory=dict)

    @property
    def spread(self) -> float:
        return self.max / self.min if self.min > 0 else math.inf

    @classmethod
    def from_values(cls, values: np.ndarray | List[float]) -> RatioStats:
        arr = np.asarray(values, dtype=float)
        if arr.size == 0:
            raise ParameterError("Cannot summarize an empty sample")
        qs = np.quantile(arr, [0.05, 0.5, 0.95])
        return cls(
            min=float(arr.min()),
            max=float(arr.max()),
            mean=float(arr.mean()),
            quantiles={"q05": float(qs[0]), "q50": float(qs[1]), "q95": float(qs[2])},
        )


VOLATILE_REPORT_FIELDS = {"created_at", "runtime_ms"}


class ExperimentReport(BaseModel):
    """Persisted record of a ratio suite, identity check or audit."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = 1
    experiment: str
    params: ParameterPair
    p: Optional[float] = None
    q: Optional[float] = None
    s_or_gamma: Optional[float] = None
    k: Optional[int] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    stats: Optional[RatioStats] = None
    passed: Optional[bool] = Field(default=None, alias="pass")
    exploratory: bool = False
    details: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    runtime_ms: Optional[float] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)

    def fingerprint(self) -> str:
        """Hash of the report without its volatile fields; equal for reruns with the same seed."""
        payload = self.model_dump_json(by_alias=True, exclude=VOLATILE_REPORT_FIELDS)
        return hashlib.sha256(payload.encode()).hexdigest()
