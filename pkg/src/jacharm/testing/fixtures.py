from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from ..cli.config import OUTPUT_ENV
from ..model import Expansion, ParameterPair

# a singular pair, the Legendre case, a mixed-sign pair and one with a large alpha
PARAMETER_PAIRS = [(-0.5, -0.5), (0.0, 0.0), (-0.75, 1 / 3), (2.0, -0.9)]

RandomExpansion = Callable[..., Expansion]


@pytest.fixture(params=PARAMETER_PAIRS, ids=[f"a{a:g}_b{b:g}" for a, b in PARAMETER_PAIRS])
def param_pair(request: pytest.FixtureRequest) -> ParameterPair:
    alpha, beta = request.param
    return ParameterPair(alpha=alpha, beta=beta)


@pytest.fixture
def random_expansion() -> RandomExpansion:
    """Factory of reproducible complex expansions with coefficients decaying like (n + 1)^-decay."""

    def factory(params: ParameterPair, n_terms: int = 8, seed: int = 0, decay: float = 1.5) -> Expansion:
        rng = np.random.default_rng(seed)
        raw = rng.standard_normal((n_terms, 2))
        coeffs = (raw[:, 0] + 1j * raw[:, 1]) * (np.arange(n_terms) + 1.0) ** -decay
        return Expansion(params=params, coeffs=coeffs)

    return factory


@pytest.fixture
def results_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Output root for reports, also exported as the default output directory."""
    path = tmp_path / "results"
    monkeypatch.setenv(OUTPUT_ENV, str(path))
    return path
