"""
Developing a polytope into the plane along a cut tree, and overlap detection.
"""

import logging
import math
from collections import deque
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from ..geometry import DEFAULT_TOLERANCE, Tolerance, convex_polygons_interior_overlap, penetration_depth
from ..geometry.overlap import signed_area
from .polytope import Polytope3, newell_normal
from .trees import CutTree, tree_face_pairs

logger = logging.getLogger(__name__)


class PlacedFace(BaseModel):
    face: int
    polygon: list[list[float]]


class Net(BaseModel):
    """Planar development: one counterclockwise polygon per face, by face index."""

    faces: list[PlacedFace]
    tree: CutTree

    @model_validator(mode="after")
    def check_order(self):
        if [f.face for f in self.faces] != list(range(len(self.faces))):
            raise ValueError("placed faces must be listed by face index")
        return self

    def polygon(self, face: int) -> np.ndarray:
        return np.asarray(self.faces[face].polygon, dtype=float)

    def area(self) -> float:
        return sum(abs(signed_area(self.polygon(i))) for i in range(len(self.faces)))


class OverlapReport(BaseModel):
    overlapping: bool
    pairs: list[tuple[int, int]]
    touching: list[tuple[int, int]] = []


def _local_coordinates(P: Polytope3, face: int) -> np.ndarray:
    """Isometric planar copy of a face: first edge on +x, interior above."""
    pts = P.face_points(face)
    normal = newell_normal(pts)
    normal /= np.linalg.norm(normal)
    e1 = pts[1] - pts[0]
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    rel = pts - pts[0]
    return np.column_stack((rel @ e1, rel @ e2))


def _rigid_map(src_a: np.ndarray, src_b: np.ndarray, dst_a: np.ndarray, dst_b: np.ndarray):
    """Orientation-preserving isometry taking segment src onto segment dst."""
    angle = math.atan2(*(dst_b - dst_a)[::-1]) - math.atan2(*(src_b - src_a)[::-1])
    c, s = math.cos(angle), math.sin(angle)
    rotation = np.array([[c, -s], [s, c]])

    def apply(points: np.ndarray) -> np.ndarray:
        return (points - src_a) @ rotation.T + dst_a

    return apply


def unfold(P: Polytope3, T: CutTree) -> Net:
    """
    Develop P along the fold edges of T.

    Face 0 is the root. Each child face is placed by the rigid motion matching
    its fold edge to the parent's copy of that edge; consistent orientation puts
    it on the far side. Shared vertices take the parent's coordinates exactly.

    Raises:
        InputError: If T is not a spanning tree of the dual graph
    """
    children: Dict[int, List[Tuple[int, Tuple[int, int]]]] = {f: [] for f in range(P.face_count)}
    for edge, (f, g) in tree_face_pairs(P, T):
        children[f].append((g, edge))
        children[g].append((f, edge))

    placed: Dict[int, Dict[int, np.ndarray]] = {}
    root_coords = _local_coordinates(P, 0)
    placed[0] = {v: root_coords[i] for i, v in enumerate(P.faces[0])}

    queue = deque([0])
    while queue:
        parent = queue.popleft()
        for child, (u, v) in sorted(children[parent]):
            if child in placed:
                continue
            local = _local_coordinates(P, child)
            pos = {w: local[i] for i, w in enumerate(P.faces[child])}
            motion = _rigid_map(pos[u], pos[v], placed[parent][u], placed[parent][v])
            moved = motion(local)
            coords = {w: moved[i] for i, w in enumerate(P.faces[child])}
            coords[u] = placed[parent][u].copy()
            coords[v] = placed[parent][v].copy()
            placed[child] = coords
            queue.append(child)

    faces = [
        PlacedFace(face=f, polygon=[[float(c) for c in placed[f][w]] for w in P.faces[f]])
        for f in range(P.face_count)
    ]
    return Net(faces=faces, tree=T.canonical())


def check_overlap(N: Net, tol: Tolerance = DEFAULT_TOLERANCE) -> OverlapReport:
    """
    Test every face pair for interior overlap.

    Pairs in contact within tol.eps (shared edges and vertices included) are
    listed as touching, never as overlapping.
    """
    polygons = [N.polygon(i) for i in range(len(N.faces))]
    pairs = []
    touching = []
    for i in range(len(polygons)):
        for j in range(i + 1, len(polygons)):
            if convex_polygons_interior_overlap(polygons[i], polygons[j], tol):
                pairs.append((i, j))
            elif penetration_depth(polygons[i], polygons[j]) >= -tol.eps:
                touching.append((i, j))
    if pairs:
        logger.debug(f"Net overlaps on face pairs {pairs}")
    return OverlapReport(overlapping=bool(pairs), pairs=pairs, touching=touching)
