"""Exact polytope-family transform with cycle detection and random search."""

from .cycles import CycleReport, detect_cycle, replay_period
from .family import (
    Direction,
    Family,
    FamilyDocument,
    RationalPolytope,
    family_vertices,
    vertex_absorption_holds,
)
from .operator import (
    TransformMode,
    build_C,
    critical_directions,
    evaluate_C,
    sampled_directions,
    support_vertices,
    transform,
)
from .search import FamilyGenerator, SearchStatistics, TrialOutcome, random_family_search

__all__ = [
    "RationalPolytope",
    "Family",
    "FamilyDocument",
    "Direction",
    "CycleReport",
    "TransformMode",
    "FamilyGenerator",
    "SearchStatistics",
    "TrialOutcome",
    "support_vertices",
    "build_C",
    "critical_directions",
    "sampled_directions",
    "evaluate_C",
    "transform",
    "detect_cycle",
    "replay_period",
    "random_family_search",
    "family_vertices",
    "vertex_absorption_holds",
]
