"""Point sets and balls for the minimal enclosing ball problem."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator


class PointSet(BaseModel):
    """Nonempty finite set of points a_1..a_m of a common dimension."""

    dimension: Optional[int] = Field(default=None, ge=1)
    points: list[list[float]]

    @model_validator(mode="after")
    def check_points(self):
        if not self.points:
            raise ValueError("points must be nonempty")
        dim = len(self.points[0]) if self.dimension is None else self.dimension
        if dim < 1:
            raise ValueError("points must have dimension >= 1")
        for p in self.points:
            if len(p) != dim:
                raise ValueError(f"dimension mismatch: expected {dim}, got {len(p)}")
            if not all(np.isfinite(p)):
                raise ValueError("coordinates must be finite")
        self.dimension = dim
        return self

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


class Ball(BaseModel):
    center: list[float]
    radius: float = Field(ge=0.0)

    def contains(self, point, tol: float = 1e-9) -> bool:
        gap = float(np.linalg.norm(np.asarray(point, dtype=float) - np.asarray(self.center)))
        return gap <= self.radius + tol


class KKTCertificate(BaseModel):
    """Contact points of a ball and the distance from its centre to their hull."""

    contacts: list[list[float]]
    support: list[list[float]] = Field(
        default_factory=list, description="Contacts whose exact circumcentre certifies the ball"
    )
    hull_distance: float
    center_in_hull: bool = Field(description="Exact: some support's circumcentre is in its hull")

    def optimal(self, tol: float = 1e-7) -> bool:
        return self.hull_distance <= tol
