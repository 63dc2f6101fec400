"""
Data models for Douglas-Rachford problems, trajectories and grid sweeps.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..projections.sets import SetDescriptor


class TrajectoryStatus(str, Enum):
    """How an iteration or flow integration ended."""

    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget-exhausted"
    DIVERGED = "diverged"


class DRProblem(BaseModel):
    """Feasibility pair (A, B) with relaxation parameter lambda."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    A: SetDescriptor
    B: SetDescriptor
    relaxation: float = Field(default=0.5, gt=0.0, le=1.0, alias="lambda")

    @model_validator(mode="after")
    def check_dimensions(self):
        if self.A.dimension != self.B.dimension:
            raise ValueError(
                f"A and B must have the same dimension ({self.A.dimension} != {self.B.dimension})"
            )
        return self

    @property
    def dimension(self) -> int:
        return self.A.dimension


class ShadowCertificate(BaseModel):
    """Shadow P_A(x*) of a terminal state with its feasibility residuals."""

    shadow: list[float]
    residual_a: float
    residual_b: float
    unique: bool = True

    def feasible(self, threshold: float) -> bool:
        return self.residual_a < threshold and self.residual_b < threshold


class Trajectory(BaseModel):
    """Recorded iterates (or flow states) with their step residuals."""

    points: list[list[float]]
    residuals: list[float] = Field(default_factory=list)
    times: Optional[list[float]] = None
    status: TrajectoryStatus = TrajectoryStatus.BUDGET_EXHAUSTED
    iterations: int = 0
    certificate: Optional[ShadowCertificate] = None

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.residuals) != len(self.points) - 1:
            raise ValueError("residuals must have one entry fewer than points")
        return self

    @property
    def final_point(self) -> list[float]:
        return self.points[-1]

    @property
    def final_residual(self) -> Optional[float]:
        return self.residuals[-1] if self.residuals else None


class Box(BaseModel):
    """Axis-aligned planar sampling window."""

    model_config = ConfigDict(frozen=True)

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @model_validator(mode="after")
    def check_order(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("box must satisfy xmin < xmax and ymin < ymax")
        return self

    def cell_centers(self, nx: int, ny: int) -> list[tuple[float, float]]:
        """Cell-center sample points, x index outer, y index inner."""
        dx = (self.xmax - self.xmin) / nx
        dy = (self.ymax - self.ymin) / ny
        return [
            (self.xmin + (i + 0.5) * dx, self.ymin + (j + 0.5) * dy)
            for i in range(nx)
            for j in range(ny)
        ]


class FlowSample(BaseModel):
    """Flow vector at one grid sample, raw and unit-normalized."""

    x: float
    y: float
    vx: float
    vy: float
    vnx: float
    vny: float


class FlowFieldGrid(BaseModel):
    """Flow vectors sampled at cell centers; samples are ordered x index outer."""

    box: Box
    nx: int = Field(ge=1)
    ny: int = Field(ge=1)
    samples: list[FlowSample]

    @model_validator(mode="after")
    def check_size(self):
        if len(self.samples) != self.nx * self.ny:
            raise ValueError("samples must hold nx * ny entries")
        return self

    def vector(self, i: int, j: int) -> FlowSample:
        return self.samples[i * self.ny + j]


class BasinCell(BaseModel):
    x: float
    y: float
    label: str


class BasinGrid(BaseModel):
    """Attractor label of every grid start plus the attractor table."""

    box: Box
    nx: int
    ny: int
    cells: list[BasinCell]
    attractors: dict[str, list[float]] = Field(default_factory=dict)
    counts: dict[str, int] = Field(default_factory=dict)

    @property
    def attractor_labels(self) -> list[str]:
        return sorted(self.attractors, key=lambda label: int(label[1:]))
