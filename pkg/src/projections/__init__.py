"""Projection and reflection operators onto the constraint sets of the feasibility problems."""

from .operators import ProjectionResult, distance, membership_residual, project, reflect
from .sets import (
    AffineLine,
    Ball,
    Ellipse,
    HalfSpace,
    Hyperplane,
    PSphere,
    SetDescriptor,
    Sphere,
    VPolytope,
    parse_set,
)

__all__ = [
    "AffineLine",
    "Ball",
    "Ellipse",
    "HalfSpace",
    "Hyperplane",
    "PSphere",
    "SetDescriptor",
    "Sphere",
    "VPolytope",
    "parse_set",
    "ProjectionResult",
    "project",
    "reflect",
    "distance",
    "membership_residual",
]
