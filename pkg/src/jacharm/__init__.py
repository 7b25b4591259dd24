from .exceptions import (
    ConfigError,
    ConvergenceError,
    DomainError,
    InadmissibleExponentsError,
    JacharmError,
    ParameterError,
    ParameterMismatchError,
    ResolutionError,
    SingularPairError,
)
from .model import Basis, Expansion, ExperimentReport, GridFunction, Measure, ParameterPair, QuadratureRule, RatioStats

__all__ = [
    "Basis",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Expansion",
    "ExperimentReport",
    "GridFunction",
    "InadmissibleExponentsError",
    "JacharmError",
    "Measure",
    "ParameterError",
    "ParameterMismatchError",
    "ParameterPair",
    "QuadratureRule",
    "RatioStats",
    "ResolutionError",
    "SingularPairError",
]
