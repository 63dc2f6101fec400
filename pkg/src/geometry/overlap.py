"""
Separating-axis overlap test for convex polygons with a tolerance margin.
"""

from typing import Sequence

import numpy as np

from ..errors import InputError
from .vectors import DEFAULT_TOLERANCE, Tolerance


def _as_polygon(polygon: Sequence[Sequence[float]] | np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(polygon, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
        raise InputError(f"expected at least three 2-D vertices, got shape {arr.shape}", field=name)
    if not np.all(np.isfinite(arr)):
        raise InputError("coordinates must be finite", field=name)
    return arr


def signed_area(polygon: np.ndarray) -> float:
    """Shoelace area; positive for counterclockwise vertex order."""
    x = polygon[:, 0]
    y = polygon[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _edge_normals(polygon: np.ndarray) -> np.ndarray:
    edges = np.roll(polygon, -1, axis=0) - polygon
    normals = np.column_stack((edges[:, 1], -edges[:, 0]))
    lengths = np.linalg.norm(normals, axis=1)
    return normals[lengths > 0] / lengths[lengths > 0, None]


def penetration_depth(P: np.ndarray, Q: np.ndarray) -> float:
    """
    Smallest overlap of the projections of P and Q over all edge normals.

    Negative values are the width of a separating gap, zero means contact.
    """
    axes = np.vstack((_edge_normals(P), _edge_normals(Q)))
    proj_p = P @ axes.T
    proj_q = Q @ axes.T
    overlap = np.minimum(proj_p.max(axis=0), proj_q.max(axis=0)) - np.maximum(
        proj_p.min(axis=0), proj_q.min(axis=0)
    )
    return float(overlap.min())


def convex_polygons_interior_overlap(
    P: Sequence[Sequence[float]] | np.ndarray,
    Q: Sequence[Sequence[float]] | np.ndarray,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> bool:
    """
    True iff the interiors of two convex polygons overlap by more than tol.eps.

    Polygons that only share an edge or a vertex do not overlap.

    Raises:
        InputError: On malformed or zero-area polygons
    """
    p = _as_polygon(P, "P")
    q = _as_polygon(Q, "Q")
    for name, poly in (("P", p), ("Q", q)):
        if abs(signed_area(poly)) <= tol.eps * tol.eps:
            raise InputError("degenerate polygon with zero area", field=name)
    return penetration_depth(p, q) > tol.eps
