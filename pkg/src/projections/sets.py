"""
Constraint set descriptors.

Each descriptor is a pydantic model tagged by "kind" so problem files parse straight
into the right class through the SetDescriptor discriminated union.
"""

from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator


def _finite_vector(v: list[float], name: str) -> list[float]:
    if not v:
        raise ValueError(f"{name} must be nonempty")
    if not all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    return v


def _nonzero_vector(v: list[float], name: str) -> list[float]:
    _finite_vector(v, name)
    if not any(c != 0.0 for c in v):
        raise ValueError(f"{name} must be nonzero")
    return v


class _SetBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def dimension(self) -> int:
        raise NotImplementedError

    @property
    def convex(self) -> bool:
        return True


class AffineLine(_SetBase):
    """{point + t * direction : t real}."""

    kind: Literal["line"] = "line"
    point: list[float]
    direction: list[float]

    @field_validator("point")
    @classmethod
    def check_point(cls, v):
        return _finite_vector(v, "point")

    @field_validator("direction")
    @classmethod
    def check_direction(cls, v):
        return _nonzero_vector(v, "direction")

    @model_validator(mode="after")
    def check_dims(self):
        if len(self.point) != len(self.direction):
            raise ValueError("point and direction must have the same dimension")
        return self

    @property
    def dimension(self) -> int:
        return len(self.point)


class Hyperplane(_SetBase):
    """{x : <normal, x> = offset}."""

    kind: Literal["hyperplane"] = "hyperplane"
    normal: list[float]
    offset: float

    @field_validator("normal")
    @classmethod
    def check_normal(cls, v):
        return _nonzero_vector(v, "normal")

    @property
    def dimension(self) -> int:
        return len(self.normal)


class HalfSpace(_SetBase):
    """{x : <normal, x> >= offset}."""

    kind: Literal["halfspace"] = "halfspace"
    normal: list[float]
    offset: float

    @field_validator("normal")
    @classmethod
    def check_normal(cls, v):
        return _nonzero_vector(v, "normal")

    @property
    def dimension(self) -> int:
        return len(self.normal)


class Sphere(_SetBase):
    """{x : |x - center| = radius}."""

    kind: Literal["sphere"] = "sphere"
    center: list[float]
    radius: float = Field(gt=0.0)

    @field_validator("center")
    @classmethod
    def check_center(cls, v):
        return _finite_vector(v, "center")

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def convex(self) -> bool:
        return False


class Ball(_SetBase):
    """{x : |x - center| <= radius}."""

    kind: Literal["ball"] = "ball"
    center: list[float]
    radius: float = Field(gt=0.0)

    @field_validator("center")
    @classmethod
    def check_center(cls, v):
        return _finite_vector(v, "center")

    @property
    def dimension(self) -> int:
        return len(self.center)


class Ellipse(_SetBase):
    """Axis-aligned planar ellipse x^2/a^2 + y^2/b^2 = 1 centered at the origin."""

    kind: Literal["ellipse"] = "ellipse"
    a: float = Field(gt=0.0)
    b: float = Field(gt=0.0)

    @model_validator(mode="after")
    def check_axes(self):
        if self.a < self.b:
            raise ValueError("semi-axes must satisfy a >= b > 0")
        return self

    @property
    def dimension(self) -> int:
        return 2

    @property
    def convex(self) -> bool:
        return False


class PSphere(_SetBase):
    """Planar unit level set |x1|^p + |x2|^p = 1."""

    kind: Literal["psphere"] = "psphere"
    p: float = Field(ge=1.0)

    @property
    def dimension(self) -> int:
        return 2

    @property
    def convex(self) -> bool:
        return False


class VPolytope(_SetBase):
    """Convex hull of finitely many vertices."""

    kind: Literal["vpolytope"] = "vpolytope"
    vertices: list[list[float]]

    @field_validator("vertices")
    @classmethod
    def check_vertices(cls, v):
        if not v:
            raise ValueError("vertices must be nonempty")
        dim = len(v[0])
        for vertex in v:
            _finite_vector(vertex, "vertex")
            if len(vertex) != dim:
                raise ValueError("all vertices must have the same dimension")
        return v

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])


SetDescriptor = Annotated[
    Union[AffineLine, Hyperplane, HalfSpace, Sphere, Ball, Ellipse, PSphere, VPolytope],
    Field(discriminator="kind"),
]

_set_adapter: TypeAdapter = TypeAdapter(SetDescriptor)


def parse_set(data: dict) -> SetDescriptor:
    """Validate a JSON object into the descriptor named by its "kind"."""
    return _set_adapter.validate_python(data)
