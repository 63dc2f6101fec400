"""
Exact polytope families.

A RationalPolytope is stored by its extreme points in lexicographic order and a
Family by its members in lexicographic order of those vertex lists, so equality of
canonical forms is equality of the underlying sets.
"""

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from pydantic import BaseModel, Field

from ..errors import InputError
from ..geometry.hull import extreme_points
from ..geometry.rational import RatLike, RatVec, check_dimension, format_rat_vec, primitive, rat_vec


@dataclass(frozen=True, order=True)
class RationalPolytope:
    """Convex hull of finitely many rational points, by its sorted extreme points."""

    vertices: Tuple[RatVec, ...]

    @classmethod
    def from_points(cls, points: Iterable[RatVec]) -> "RationalPolytope":
        pts = list(points)
        check_dimension(pts)
        return cls(vertices=tuple(extreme_points(pts)))

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def canonical_text(self) -> str:
        return ";".join(",".join(format_rat_vec(v)) for v in self.vertices)


@dataclass(frozen=True)
class Family:
    """Finite set of polytopes of a common dimension, in canonical order."""

    members: Tuple[RationalPolytope, ...]
    dimension: int

    @classmethod
    def from_members(cls, members: Iterable[RationalPolytope]) -> "Family":
        unique = sorted(set(members))
        if not unique:
            raise InputError("family must have at least one member", field="polytopes")
        dims = {m.dimension for m in unique}
        if len(dims) != 1:
            raise InputError(f"members have mixed dimensions {sorted(dims)}", field="polytopes")
        return cls(members=tuple(unique), dimension=dims.pop())

    @classmethod
    def from_point_lists(cls, polytopes: Sequence[Sequence[Sequence[RatLike]]]) -> "Family":
        return cls.from_members(
            RationalPolytope.from_points(rat_vec(v) for v in vertices) for vertices in polytopes
        )

    def canonical_text(self) -> str:
        return f"{self.dimension}|" + "|".join(m.canonical_text() for m in self.members)

    def digest(self) -> str:
        """Short content hash of the canonical text; equal families hash equally."""
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()[:16]

    def vertex_set(self) -> frozenset:
        return frozenset(v for m in self.members for v in m.vertices)

    def to_document(self) -> "FamilyDocument":
        return FamilyDocument(
            dimension=self.dimension,
            polytopes=[[format_rat_vec(v) for v in m.vertices] for m in self.members],
        )


@dataclass(frozen=True)
class Direction:
    """A ray g, stored as a primitive integer vector (coprime coordinates)."""

    vector: Tuple[int, ...]

    @classmethod
    def of(cls, coords: Iterable[RatLike]) -> "Direction":
        return cls(vector=primitive(rat_vec(coords)))

    @property
    def dimension(self) -> int:
        return len(self.vector)


class FamilyDocument(BaseModel):
    """JSON form of a Family: rationals as "p/q" strings."""

    dimension: int = Field(ge=1)
    polytopes: list[list[list[str]]]

    def to_family(self) -> Family:
        family = Family.from_point_lists(self.polytopes)
        if family.dimension != self.dimension:
            raise InputError(
                f"declared dimension {self.dimension} but points have dimension {family.dimension}",
                field="dimension",
            )
        return family


def family_vertices(family: Family) -> frozenset:
    """All vertices of all members."""
    return family.vertex_set()


def vertex_absorption_holds(before: Family, after: Family) -> bool:
    """Every vertex of the transformed family is a vertex of the original one."""
    return after.vertex_set() <= before.vertex_set()
