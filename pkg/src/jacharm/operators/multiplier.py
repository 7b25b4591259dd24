from __future__ import annotations

import logging
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions import ParameterError, ParameterMismatchError
from ..model import Expansion, ParameterPair

Symbol = Callable[[np.ndarray], np.ndarray]


class Multiplier(BaseModel):
    """Operator f -> sum h(n) a_n(f) phi_{n+d}^{target}.

    The symbol is evaluated on integer arrays n. Output indices n + d < 0 are dropped
    (phi_n = 0 for negative n).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    symbol: Symbol
    shift: int = 0
    source_params: ParameterPair
    target_params: ParameterPair
    name: str = "multiplier"

    def values(self, n: np.ndarray | int) -> np.ndarray:
        return np.asarray(self.symbol(np.asarray(n)), dtype=np.complex128)

    def then(self, other: Multiplier) -> Multiplier:
        """Composite other o self."""
        return compose(self, other)


_log = logging.getLogger(__name__)


def compose(first: Multiplier, second: Multiplier) -> Multiplier:
    """second o first as a single multiplier: shifts add, symbols multiply along the shift."""
    if first.target_params != second.source_params:
        raise ParameterMismatchError(
            f"Cannot compose {first.name} -> {first.target_params} with {second.name} on {second.source_params}"
        )
    d = first.shift

    def symbol(n: np.ndarray) -> np.ndarray:
        return first.values(n) * second.values(n + d)

    return Multiplier(
        symbol=symbol,
        shift=first.shift + second.shift,
        source_params=first.source_params,
        target_params=second.target_params,
        name=f"{second.name}*{first.name}",
    )


def apply_multiplier(e: Expansion, m: Multiplier) -> Expansion:
    """Coefficients b_{n+d} = h(n) a_n over the target pair."""
    if e.params != m.source_params:
        raise ParameterMismatchError(f"{m.name} acts on {m.source_params}, expansion is over {e.params}")
    n = np.arange(e.size)
    keep = n + m.shift >= 0
    used = keep & (e.coeffs != 0)
    h = np.zeros(e.size, dtype=np.complex128)
    if np.any(used):
        h[used] = m.values(n[used])
    if not np.all(np.isfinite(h)):
        bad = n[~np.isfinite(h)]
        raise ParameterError(f"Symbol of {m.name} is not finite at n={bad.tolist()}")
    out = np.zeros(max(e.size + m.shift, 1), dtype=np.complex128)
    out[n[keep] + m.shift] = h[keep] * e.coeffs[keep]
    _log.debug("Applied %s (shift %d) to %d coefficients", m.name, m.shift, e.size)
    return Expansion(params=m.target_params, coeffs=out, basis=e.basis)


def diagonal(params: ParameterPair, symbol: Symbol, name: str) -> Multiplier:
    return Multiplier(symbol=symbol, source_params=params, target_params=params, name=name)


def identity(params: ParameterPair) -> Multiplier:
    return diagonal(params, lambda n: np.ones(np.shape(n)), "identity")
