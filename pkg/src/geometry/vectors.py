"""
Floating-point vectors and the tolerance policy.
"""

from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import InputError

FloatVec = np.ndarray


class Tolerance(BaseModel):
    """Absolute tolerance used by every floating-point predicate."""

    model_config = ConfigDict(frozen=True)

    eps: float = Field(default=1e-9, gt=0.0, lt=1.0)
    # Target for the ellipse and p-sphere scalar equations.
    solver_residual: float = Field(default=1e-12, gt=0.0, lt=1.0)


DEFAULT_TOLERANCE = Tolerance()


def as_float_vec(coords: Iterable[float] | np.ndarray, name: str = "x") -> FloatVec:
    """
    Convert coordinates to a 1-D float64 array, rejecting NaN/Inf.

    Raises:
        InputError: On empty or non-finite input
    """
    vec = np.asarray(coords, dtype=float)
    if vec.ndim != 1 or vec.size == 0:
        raise InputError(f"expected a nonempty 1-D vector, got shape {vec.shape}", field=name)
    if not np.all(np.isfinite(vec)):
        raise InputError("coordinates must be finite", field=name)
    return vec


def as_point_array(points: Sequence[Sequence[float]], name: str = "points") -> np.ndarray:
    """Convert a list of points to an (m, d) float array with finite entries."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InputError(f"expected a nonempty list of equal-length points, got shape {arr.shape}", field=name)
    if not np.all(np.isfinite(arr)):
        raise InputError("coordinates must be finite", field=name)
    return arr


def check_same_dimension(x: FloatVec, dimension: int, name: str = "x") -> None:
    if x.shape[0] != dimension:
        raise InputError(f"dimension mismatch: expected {dimension}, got {x.shape[0]}", field=name)
