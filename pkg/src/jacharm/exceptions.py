class JacharmError(Exception):
    """Base class for all errors raised by jacharm."""


class ParameterError(JacharmError):
    """Raised when an argument lies outside the domain of an operation"""


class SingularPairError(ParameterError):
    """Raised when an operation needs alpha + beta != -1 but got the singular pair"""

    def __init__(self, alpha: float, beta: float, operation: str):
        super().__init__(
            f"{operation} is undefined for alpha + beta = -1 (alpha={alpha}, beta={beta}): "
            "the bottom eigenvalue is 0 and negative powers of L do not exist"
        )
        self.alpha = alpha
        self.beta = beta
        self.operation = operation


class ParameterMismatchError(ParameterError):
    """Raised when two objects expected to share a parameter pair do not"""


class DomainError(ParameterError):
    """Raised when a point lies outside the open interval (0, pi) or on a kernel diagonal"""


class InadmissibleExponentsError(ParameterError):
    """Raised when exponents violate the preconditions of an embedding or mapping property"""


class ResolutionError(JacharmError):
    """Raised when a discretization is too coarse or too large for the requested accuracy"""


class ConvergenceError(JacharmError):
    """Raised when a numerical integral or series fails to converge"""


class ConfigError(JacharmError):
    """Raised when a run configuration cannot be executed"""
