from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, model_validator

from ..exceptions import InadmissibleExponentsError, ParameterError, SingularPairError
from ..model import ParameterPair
from ..operators.potentials import Flavor


class PotentialSpaceTag(BaseModel):
    """Identifies the potential space L^{p,s} of a pair and a potential family.

    RIESZ spaces are images of L^{-s/2}, BESSEL of (id+L)^{-s/2} and MODIFIED of
    (id+sqrt L)^{-s}.
    """

    model_config = ConfigDict(frozen=True)

    params: ParameterPair
    p: float
    s: float
    flavor: Flavor = Flavor.RIESZ

    @model_validator(mode="after")
    def _validate(self) -> PotentialSpaceTag:
        if not self.s > 0:
            raise ParameterError(f"Potential space order must be positive, got {self.s}")
        if not (math.isfinite(self.p) and self.params.exponent_range.contains(self.p)):
            raise InadmissibleExponentsError(
                f"p={self.p} lies outside the exponent range {self.params.exponent_range} of {self.params}: "
                "the potential operators are not bounded on that L^p"
            )
        if self.flavor == Flavor.RIESZ and self.params.singular:
            raise SingularPairError(self.params.alpha, self.params.beta, "Riesz potential space")
        return self

    @classmethod
    def for_params(
        cls, params: ParameterPair, p: float, s: float, flavor: Flavor = Flavor.RIESZ
    ) -> PotentialSpaceTag:
        """Tag with the Riesz family replaced by the Bessel one on a singular pair."""
        if flavor == Flavor.RIESZ and params.singular:
            flavor = Flavor.BESSEL
        return cls(params=params, p=p, s=s, flavor=flavor)

    def with_order(self, s: float) -> PotentialSpaceTag:
        return PotentialSpaceTag(params=self.params, p=self.p, s=s, flavor=self.flavor)

    def shifted(self, k: int, s: float | None = None) -> PotentialSpaceTag:
        """Tag over (alpha + k, beta + k), the target of D^(k) and R^k."""
        return PotentialSpaceTag.for_params(self.params.shifted(k), self.p, self.s if s is None else s, self.flavor)

    def __str__(self) -> str:
        return f"L^{{{self.p:g},{self.s:g}}}_{self.params} [{self.flavor}]"
