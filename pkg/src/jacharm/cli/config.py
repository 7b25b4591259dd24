from __future__ import annotations

import math
import os
from enum import StrEnum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..exceptions import ConfigError
from ..fractional.square_functions import Method
from ..kernels.audits import GridConfig
from ..kernels.nested_integral import DEFAULT_Q_GRID
from ..model import ParameterPair
from ..operators.potentials import Flavor
from ..spaces.sampler import DEFAULT_DECAY, DEFAULT_SAMPLES, DEFAULT_TRUNCATION, SamplerConfig

OUTPUT_ENV = "JACHARM_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "results"


def resolve_output_dir(output_dir: Optional[Path] = None) -> Path:
    """The --output-dir flag, else the JACHARM_OUTPUT_DIR variable, else ./results."""
    return Path(output_dir or os.getenv(OUTPUT_ENV) or DEFAULT_OUTPUT_DIR)


class Experiment(StrEnum):
    EXPAND = "expand"
    POISSON = "poisson"
    GFUNC = "gfunc"
    CAPUTO_ORACLE = "caputo-oracle"
    NORMS = "norms"
    PENCIL = "pencil"
    STRUCT = "struct"
    RIESZ = "riesz"
    DERIVATIVE = "derivative"
    EMBED = "embed"
    EQUIV = "equiv"
    GNORM = "gnorm"
    GK_MONOTONICITY = "gk-monotonicity"
    WEIGHTED_G = "weighted-g"
    SCHRODINGER = "schrodinger"
    MAXIMAL = "maximal"
    STRICHARTZ = "strichartz"
    EXTENSION = "extension"
    KERNEL_AUDIT = "kernel-audit"
    LEMMA36 = "lemma36"


class AuditKind(StrEnum):
    GROWTH = "growth"
    GRADIENT = "gradient"


TEST_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "bump": lambda t: t * (np.pi - t),
    "cosine": np.cos,
    "step": lambda t: np.where(t < np.pi / 2, 1.0, 0.0),
    "tent": lambda t: np.abs(t - np.pi / 2),
}

# fields each experiment cannot run without
REQUIRED: Dict[Experiment, Tuple[str, ...]] = {
    Experiment.NORMS: ("p", "s"),
    Experiment.PENCIL: ("p",),
    Experiment.STRUCT: ("p", "r", "s"),
    Experiment.RIESZ: ("p", "s", "k"),
    Experiment.DERIVATIVE: ("p", "s", "k"),
    Experiment.EMBED: ("p", "s", "q"),
    Experiment.EQUIV: ("p", "gamma", "k"),
    Experiment.GNORM: ("p", "gamma"),
    Experiment.GK_MONOTONICITY: ("p", "gamma", "k", "l"),
    Experiment.WEIGHTED_G: ("p", "gamma"),
    Experiment.SCHRODINGER: ("s",),
    Experiment.MAXIMAL: ("s",),
    Experiment.STRICHARTZ: ("p", "s"),
    Experiment.EXTENSION: ("p", "q", "s"),
    Experiment.KERNEL_AUDIT: ("gamma",),
    Experiment.LEMMA36: ("eta", "xi", "gamma"),
}


class RunConfig(BaseModel):
    """Everything one experiment run depends on; embedded verbatim in its report."""

    experiment: Experiment
    params: ParameterPair = Field(default_factory=lambda: ParameterPair(alpha=0.0, beta=0.0))
    p: Optional[float] = Field(default=None, description="Spatial exponent p")
    q: Optional[float] = Field(default=None, description="Target exponent of an embedding or time exponent of the extension")
    r: Optional[float] = Field(default=None, description="Smaller smoothness of the structural comparison")
    s: Optional[float] = Field(default=None, description="Potential space order")
    gamma: Optional[float] = Field(default=None, description="Fractional order of the square function")
    k: Optional[int] = Field(default=None, description="Integer derivative order")
    l: Optional[int] = Field(default=None, description="Larger integer order of the monotonicity comparison")
    flavor: Flavor = Field(default=Flavor.RIESZ, description="Potential family of the spaces")
    method: Method = Field(default=Method.QUADRATURE, description="Evaluation of the t-integrals")
    n_terms: int = Field(default=DEFAULT_TRUNCATION, ge=1, description="Truncation N")
    decay: float = Field(default=DEFAULT_DECAY, ge=0, description="Coefficient decay of the sampler")
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1, description="Monte-Carlo sample count")
    seed: int = Field(default=0, ge=0, description="Sampler seed")
    resolution: Optional[int] = Field(default=None, ge=2, description="Quadrature size; default 4 N + 32")
    function: str = Field(default="bump", description=f"Named test function, one of {sorted(TEST_FUNCTIONS)}")
    times: Tuple[float, float] = Field(default=(1.0, 0.5), description="Semigroup times (t, s)")
    n_interval: int = Field(default=4, ge=1, description="Interval index of the maximal estimate")
    regime: Optional[str] = Field(default=None, description="Sign regime of the kernel audit; overrides params")
    audit: AuditKind = Field(default=AuditKind.GROWTH, description="Kernel estimate to audit")
    grid: GridConfig = Field(default_factory=GridConfig)
    eta: Optional[float] = None
    xi: Optional[float] = None
    q_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_Q_GRID))
    max_concurrent: int = Field(default=4, ge=1, description="Worker threads of the pipelines")
    output_dir: Optional[Path] = Field(default=None, description=f"Output root; else ${OUTPUT_ENV}, else ./{DEFAULT_OUTPUT_DIR}")

    @model_validator(mode="after")
    def _check_required(self) -> RunConfig:
        missing = [name for name in REQUIRED.get(self.experiment, ()) if getattr(self, name) is None]
        if missing:
            raise ConfigError(f"Experiment {self.experiment} needs {', '.join(missing)}")
        if self.function not in TEST_FUNCTIONS:
            raise ConfigError(f"Unknown test function {self.function!r}, expected one of {sorted(TEST_FUNCTIONS)}")
        if self.experiment == Experiment.STRUCT and self.r > self.s:
            raise ConfigError(f"Structural comparison needs r <= s, got r={self.r}, s={self.s}")
        if self.experiment == Experiment.EMBED and not (self.q >= 1 or self.q == math.inf):
            raise ConfigError(f"Embedding target exponent must be at least 1, got {self.q}")
        return self

    @property
    def sampler(self) -> SamplerConfig:
        return SamplerConfig(n_terms=self.n_terms, decay=self.decay, samples=self.samples, seed=self.seed)

    @property
    def test_function(self) -> Callable[[np.ndarray], np.ndarray]:
        return TEST_FUNCTIONS[self.function]

    def resolved_output_dir(self) -> Path:
        return resolve_output_dir(self.output_dir)

    def with_overrides(self, **overrides) -> RunConfig:
        """Copy with the non-None overrides applied and validated again."""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.model_validate(values)

    @classmethod
    def from_file(cls, path: Path, **overrides) -> RunConfig:
        """Config from a JSON file, then flag overrides."""
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"Cannot read config {path}: {e}") from e
        return cls.model_validate_json(text).with_overrides(**overrides)
