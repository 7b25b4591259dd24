from typing import Callable, List

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import ParameterError
from ..model import Expansion, ParameterPair

DEFAULT_TRUNCATION = 32
DEFAULT_DECAY = 1.5
DEFAULT_SAMPLES = 200


class SamplerConfig(BaseModel):
    n_terms: int = Field(default=DEFAULT_TRUNCATION, ge=1, description="Truncation N of the random expansions")
    decay: float = Field(default=DEFAULT_DECAY, ge=0, description="Coefficient decay: a_n = zeta_n (n+1)^-decay")
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1, description="Number of random expansions")
    seed: int = Field(default=0, ge=0, description="Seed of the numpy generator")


def sample_coefficients(n_terms: int, decay: float, samples: int, seed: int) -> np.ndarray:
    """Matrix (samples, n_terms) of zeta_n (n+1)^{-decay}, zeta_n standard complex Gaussian.

    Rows are drawn in order, so the first k rows do not depend on `samples`.
    """
    if n_terms < 1 or samples < 1:
        raise ParameterError(f"Sampler needs positive sizes, got n_terms={n_terms}, samples={samples}")
    raw = np.random.default_rng(seed).standard_normal((samples, n_terms, 2))
    zeta = (raw[..., 0] + 1j * raw[..., 1]) / np.sqrt(2)
    return zeta * (np.arange(n_terms) + 1.0) ** -decay


def sample_expansions(
    params: ParameterPair,
    n_terms: int = DEFAULT_TRUNCATION,
    decay: float = DEFAULT_DECAY,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> List[Expansion]:
    """Deterministic stream of random expansions over a pair."""
    return [Expansion(params=params, coeffs=row) for row in sample_coefficients(n_terms, decay, samples, seed)]


def sampler_for(params: ParameterPair, config: SamplerConfig) -> Callable[[int], List[Expansion]]:
    """The sample stream of a config as a function of the sample count."""
    def sample(count: int) -> List[Expansion]:
        return sample_expansions(params, config.n_terms, config.decay, count, config.seed)

    return sample
