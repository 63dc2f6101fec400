"""
Convex 3-polytopes given by vertex coordinates and face cycles.

Faces are stored counterclockwise as seen from outside; inputs in the other
orientation are reversed during validation.
"""

import math
from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from ..errors import InputError
from ..linkage import Graph

PLANARITY_TOL = 1e-7

Edge = Tuple[int, int]


def _edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def face_edges(face: List[int]) -> List[Edge]:
    return [_edge_key(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


def _edge_face_lists(faces: List[List[int]]) -> Dict[Edge, List[int]]:
    table: Dict[Edge, List[int]] = {}
    for index, face in enumerate(faces):
        for edge in face_edges(face):
            table.setdefault(edge, []).append(index)
    return table


def newell_normal(points: np.ndarray) -> np.ndarray:
    """Area-weighted normal of a closed polygon in 3-D (length = 2 * area)."""
    nxt = np.roll(points, -1, axis=0)
    return np.array(
        [
            np.sum((points[:, 1] - nxt[:, 1]) * (points[:, 2] + nxt[:, 2])),
            np.sum((points[:, 2] - nxt[:, 2]) * (points[:, 0] + nxt[:, 0])),
            np.sum((points[:, 0] - nxt[:, 0]) * (points[:, 1] + nxt[:, 1])),
        ]
    )


class Polytope3(BaseModel):
    """Convex 3-polytope: vertices in R^3 and convex planar faces."""

    vertices: list[list[float]]
    faces: list[list[int]]
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_polytope(self):
        pts = np.asarray(self.vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 4:
            raise ValueError("need at least four 3-D vertices")
        if not np.all(np.isfinite(pts)):
            raise ValueError("vertex coordinates must be finite")
        scale = max(1.0, float(np.max(np.abs(pts))))
        inside = pts.mean(axis=0)

        oriented = []
        for index, face in enumerate(self.faces):
            if len(face) < 3 or len(set(face)) != len(face):
                raise ValueError(f"face {index} must list at least three distinct vertices")
            if any(not 0 <= v < len(pts) for v in face):
                raise ValueError(f"face {index} has a vertex index out of range")
            poly = pts[face]
            normal = newell_normal(poly)
            length = float(np.linalg.norm(normal))
            if length <= PLANARITY_TOL * scale * scale:
                raise ValueError(f"face {index} is degenerate")
            normal /= length
            if float(np.dot(normal, poly.mean(axis=0) - inside)) < 0:
                face = list(reversed(face))
                normal = -normal
            if np.max(np.abs((poly - poly[0]) @ normal)) > PLANARITY_TOL * scale:
                raise ValueError(f"face {index} is not planar")
            ordered = pts[face]
            edges = np.roll(ordered, -1, axis=0) - ordered
            turns = np.cross(edges, np.roll(edges, -1, axis=0)) @ normal
            if np.any(turns <= 0):
                raise ValueError(f"face {index} is not strictly convex")
            heights = (pts - ordered[0]) @ normal
            if np.max(heights) > PLANARITY_TOL * scale:
                raise ValueError(f"face {index} is not a supporting plane; polytope is not convex")
            oriented.append(face)

        table = _edge_face_lists(oriented)
        for edge, owners in table.items():
            if len(owners) != 2:
                raise ValueError(f"edge {edge} lies on {len(owners)} faces, expected 2")
        euler = len(pts) - len(table) + len(oriented)
        if euler != 2:
            raise ValueError(f"Euler characteristic V - E + F = {euler}, expected 2")
        self.faces = oriented
        return self

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def edges(self) -> List[Edge]:
        return sorted(_edge_face_lists(self.faces))

    def face_points(self, index: int) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)[self.faces[index]]

    def surface_area(self) -> float:
        return sum(0.5 * float(np.linalg.norm(newell_normal(self.face_points(i)))) for i in range(self.face_count))


def load_polytope(data: dict) -> Polytope3:
    """Parse a Polytope3 document, raising InputError on invalid geometry."""
    try:
        return Polytope3.model_validate(data)
    except ValidationError as e:
        raise InputError(e.errors()[0]["msg"], field="polytope") from e


def edge_faces(P: Polytope3) -> Dict[Edge, Tuple[int, int]]:
    """Polytope edge -> the two faces sharing it (ascending).

    Raises:
        InputError: If some edge does not lie on exactly two faces
    """
    result = {}
    for edge, owners in sorted(_edge_face_lists(P.faces).items()):
        if len(owners) != 2:
            raise InputError(f"edge {edge} lies on {len(owners)} faces", field="faces")
        result[edge] = (min(owners), max(owners))
    return result


def dual_graph(P: Polytope3) -> Graph:
    """Faces as vertices, one edge per shared polytope edge."""
    return Graph(vertices=P.face_count, edges=list(edge_faces(P).values()))


# ═══════════════════════════════════════════════════════════════════════
# Built-in catalog
# ═══════════════════════════════════════════════════════════════════════

def _ccw_from_outside(points: np.ndarray, indices: List[int]) -> List[int]:
    """Order a face's vertex indices by angle about its outward normal."""
    face = points[indices]
    center = face.mean(axis=0)
    normal = center / np.linalg.norm(center)
    e1 = face[0] - center
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    angles = [math.atan2(float((p - center) @ e2), float((p - center) @ e1)) for p in face]
    return [i for _, i in sorted(zip(angles, indices))]


def _tetrahedron() -> Polytope3:
    pts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    faces = [_ccw_from_outside(pts, list(f)) for f in combinations(range(4), 3)]
    return Polytope3(vertices=pts.tolist(), faces=faces, name="tetrahedron")


def _cube() -> Polytope3:
    pts = np.array([[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float)
    faces = []
    for axis in range(3):
        for sign in (-1.0, 1.0):
            members = [i for i, p in enumerate(pts) if p[axis] == sign]
            faces.append(_ccw_from_outside(pts, members))
    return Polytope3(vertices=pts.tolist(), faces=faces, name="cube")


def _octahedron() -> Polytope3:
    pts = np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float
    )
    faces = [_ccw_from_outside(pts, [x, y, z]) for x in (0, 1) for y in (2, 3) for z in (4, 5)]
    return Polytope3(vertices=pts.tolist(), faces=faces, name="octahedron")


def _truncated_tetrahedron() -> Polytope3:
    """Cut every corner of the regular tetrahedron at a third of each edge."""
    corners = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    pairs = list(permutations(range(4), 2))
    index = {pair: i for i, pair in enumerate(pairs)}
    pts = np.array([(2.0 * corners[a] + corners[b]) / 3.0 for a, b in pairs])

    faces = []
    for a in range(4):
        faces.append(_ccw_from_outside(pts, [index[(a, b)] for b in range(4) if b != a]))
    for opposite in range(4):
        kept = [c for c in range(4) if c != opposite]
        faces.append(_ccw_from_outside(pts, [index[(a, b)] for a in kept for b in kept if a != b]))
    return Polytope3(vertices=pts.tolist(), faces=faces, name="truncated-tetrahedron")


_CATALOG = {
    "tetrahedron": _tetrahedron,
    "cube": _cube,
    "octahedron": _octahedron,
    "truncated-tetrahedron": _truncated_tetrahedron,
}

BUILTIN_NAMES = tuple(_CATALOG)


def builtin_polytope(name: str) -> Polytope3:
    try:
        return _CATALOG[name]()
    except KeyError:
        raise InputError(f"unknown polytope {name!r}; choose from {', '.join(BUILTIN_NAMES)}", field="builtin") from None
