"""Riesz, Bessel and modified Bessel potentials and their inverses as multipliers."""

from enum import StrEnum

import numpy as np

from ..exceptions import ParameterError, SingularPairError
from ..model import Expansion, ParameterPair
from .multiplier import Multiplier, apply_multiplier, diagonal


class Flavor(StrEnum):
    """Potential family: L^{-s/2}, (id+L)^{-s/2} or (id+sqrt L)^{-s}."""

    RIESZ = "riesz"
    BESSEL = "bessel"
    MODIFIED = "modified"


def _lam(params: ParameterPair, n: np.ndarray) -> np.ndarray:
    return (n + params.a) ** 2


def _check_order(value: float, what: str) -> None:
    if not value > 0:
        raise ParameterError(f"{what} must be positive, got {value}")


def power_multiplier(params: ParameterPair, flavor: Flavor, exponent: float) -> Multiplier:
    """Multiplier of L^{e}, (id+L)^{e} or (id+sqrt L)^{2e} for a real exponent e.

    Negative Riesz powers need alpha + beta != -1.
    """
    match flavor:
        case Flavor.RIESZ:
            if exponent < 0 and params.singular:
                raise SingularPairError(params.alpha, params.beta, "Riesz potential")
            return diagonal(params, lambda n: _lam(params, n) ** exponent, f"L^{exponent:g}")
        case Flavor.BESSEL:
            return diagonal(params, lambda n: (1 + _lam(params, n)) ** exponent, f"(1+L)^{exponent:g}")
        case Flavor.MODIFIED:
            return diagonal(
                params,
                lambda n: (1 + np.sqrt(_lam(params, n))) ** (2 * exponent),
                f"(1+sqrt L)^{2 * exponent:g}",
            )
    raise ParameterError(f"Unknown potential flavor {flavor}")


def potential_multiplier(params: ParameterPair, flavor: Flavor, s: float) -> Multiplier:
    """Potential of order s in the given family (exponent -s/2)."""
    return power_multiplier(params, flavor, -s / 2)


def riesz_potential(e: Expansion, sigma: float) -> Expansion:
    """L^{-sigma} f, multiplier lambda_n^{-sigma}."""
    _check_order(sigma, "Riesz potential order")
    if e.params.singular:
        raise SingularPairError(e.params.alpha, e.params.beta, "Riesz potential")
    return apply_multiplier(e, power_multiplier(e.params, Flavor.RIESZ, -sigma))


def bessel_potential(e: Expansion, sigma: float) -> Expansion:
    """(id + L)^{-sigma} f, multiplier (1 + lambda_n)^{-sigma}."""
    _check_order(sigma, "Bessel potential order")
    return apply_multiplier(e, power_multiplier(e.params, Flavor.BESSEL, -sigma))


def modified_bessel_potential(e: Expansion, gamma: float) -> Expansion:
    """(id + sqrt L)^{-gamma} f, multiplier (1 + sqrt lambda_n)^{-gamma}."""
    _check_order(gamma, "Modified potential order")
    return apply_multiplier(e, power_multiplier(e.params, Flavor.MODIFIED, -gamma / 2))


def fractional_power(e: Expansion, exponent: float, flavor: Flavor = Flavor.RIESZ) -> Expansion:
    """Any real power of L (or id+L, or (id+sqrt L)^2) applied on coefficients."""
    return apply_multiplier(e, power_multiplier(e.params, flavor, exponent))


def mutual_inverse_symbols(params: ParameterPair, gamma: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(1+lambda_n)^{gamma/2} / (1+sqrt lambda_n)^gamma and its reciprocal for n <= n_max."""
    lam = _lam(params, np.arange(n_max + 1))
    ratio = (1 + lam) ** (gamma / 2) / (1 + np.sqrt(lam)) ** gamma
    return ratio, 1 / ratio
