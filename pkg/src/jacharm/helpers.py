from typing import Any, Tuple

import numpy as np

from .exceptions import DomainError

DEFAULT_GRID_MARGIN = 1e-6


def as_theta(theta: Any) -> Tuple[np.ndarray, bool]:
    """Convert theta to a float array and check it lies strictly inside (0, pi).

    Returns:
        The array and a flag telling whether the input was a scalar.
    """
    arr = np.asarray(theta, dtype=float)
    if not (np.all(arr > 0) and np.all(arr < np.pi)):
        raise DomainError(f"theta must lie strictly inside (0, pi), got {theta}")
    return np.atleast_1d(arr), arr.ndim == 0


def unwrap(values: np.ndarray, scalar: bool) -> Any:
    """Inverse of as_theta: scalars in, scalars out."""
    return values[..., 0] if scalar else values


def interior_grid(points: int, margin: float = DEFAULT_GRID_MARGIN) -> np.ndarray:
    """Uniform grid of `points` nodes on [margin, pi - margin]."""
    return np.linspace(margin, np.pi - margin, points)


def to_builtin(value: Any) -> Any:
    """Convert numpy scalars and arrays (also nested in dicts and lists) to JSON friendly types."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.complexfloating, complex)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


def relative_drift(reference: float, value: float) -> float:
    """|value - reference| / |reference|, infinite when the reference vanishes or is not finite."""
    if not (np.isfinite(reference) and np.isfinite(value)) or reference == 0:
        return 0.0 if reference == value == 0 else float("inf")
    return abs(value - reference) / abs(reference)
