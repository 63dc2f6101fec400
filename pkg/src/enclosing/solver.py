"""
Minimal enclosing ball.

solve_meb runs Welzl's recursion in its move-to-front form: recursion only happens
when a point joins the boundary set, so the depth is at most d + 1. The boundary
ball of m affinely independent points is the circumscribed ball with centre in their
affine hull, found from the Gram system of the difference vectors.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InputError
from ..geometry import is_in_convex_hull
from ..geometry.rational import RatVec
from ..projections import VPolytope, distance
from .schemas import Ball, KKTCertificate, PointSet

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 12
CONTAINMENT_RTOL = 1e-12
CONTACT_TOL = 1e-7
CERTIFY_CONTACT_LIMIT = 16

_Sphere = Tuple[Optional[np.ndarray], float]


def minimax_objective(S: PointSet, x) -> float:
    """max_i |a_i - x|."""
    center = np.asarray(x, dtype=float)
    if center.shape != (S.dimension,):
        raise InputError(f"dimension mismatch: expected {S.dimension}, got {center.shape}", field="x")
    return float(np.max(np.linalg.norm(S.array - center, axis=1)))


def _affinely_independent(boundary: List[np.ndarray]) -> bool:
    if len(boundary) <= 1:
        return True
    diffs = np.array([p - boundary[0] for p in boundary[1:]])
    return int(np.linalg.matrix_rank(diffs)) == len(boundary) - 1


def _boundary_ball(boundary: List[np.ndarray]) -> _Sphere:
    """Smallest ball with every boundary point on its sphere."""
    if not boundary:
        return None, -1.0
    base = boundary[0]
    if len(boundary) == 1:
        return base.copy(), 0.0
    Q = np.array([p - base for p in boundary[1:]])
    gram = Q @ Q.T
    rhs = 0.5 * np.einsum("ij,ij->i", Q, Q)
    try:
        coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        coeffs = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    center = base + Q.T @ coeffs
    radius = max(float(np.linalg.norm(p - center)) for p in boundary)
    return center, radius


def _inside(ball: _Sphere, p: np.ndarray) -> bool:
    center, radius = ball
    if center is None:
        return False
    return float(np.linalg.norm(p - center)) <= radius + CONTAINMENT_RTOL * max(1.0, radius)


def _move_to_front(points: List[np.ndarray], end: int, boundary: List[np.ndarray], dim: int) -> _Sphere:
    ball = _boundary_ball(boundary)
    if len(boundary) == dim + 1:
        return ball
    for i in range(end):
        p = points[i]
        if not _inside(ball, p):
            ball = _move_to_front(points, i, boundary + [p], dim)
            points.insert(0, points.pop(i))
    return ball


def solve_meb(S: PointSet, seed: int = 0) -> Ball:
    """
    Minimal enclosing ball of S.

    Args:
        S: Point set
        seed: Seed of the initial shuffle (the result does not depend on it)

    Returns:
        Ball containing every point within radius + 1e-9
    """
    pts = S.array
    order = np.random.default_rng(seed).permutation(len(pts))
    work = [pts[i].copy() for i in order]
    center, radius = _move_to_front(work, len(work), [], S.dimension)
    logger.debug(f"solve_meb: {len(pts)} points in dimension {S.dimension}, radius {radius!r}")
    return Ball(center=[float(c) for c in center], radius=float(radius))


def brute_force_meb(S: PointSet, limit: int = BRUTE_FORCE_LIMIT) -> Ball:
    """
    Smallest enclosing ball by trying every affinely independent boundary subset.

    Raises:
        InputError: If S has more than limit points
    """
    if len(S.points) > limit:
        raise InputError(f"brute force limited to {limit} points, got {len(S.points)}", field="points")
    pts = [np.asarray(p, dtype=float) for p in S.points]
    best: Optional[_Sphere] = None
    for size in range(1, min(len(pts), S.dimension + 1) + 1):
        for subset in combinations(pts, size):
            boundary = list(subset)
            if not _affinely_independent(boundary):
                continue
            ball = _boundary_ball(boundary)
            if best is not None and ball[1] >= best[1]:
                continue
            if all(float(np.linalg.norm(p - ball[0])) <= ball[1] + 1e-9 * max(1.0, ball[1]) for p in pts):
                best = ball
    assert best is not None  # the optimum is spanned by some independent subset
    center, radius = best
    return Ball(center=[float(c) for c in center], radius=float(radius))


# ═══════════════════════════════════════════════════════════════════════
# Exact optimality certificate
# ═══════════════════════════════════════════════════════════════════════

def _exact(point) -> RatVec:
    """Every float is a dyadic rational, so this conversion is lossless."""
    return tuple(Fraction(float(c)) for c in point)


def _solve_exact(matrix: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan elimination over Fraction; None when the matrix is singular."""
    n = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            factor = rows[r][col]
            if r != col and factor != 0:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def _exact_circumcenter(support: Sequence[RatVec]) -> Optional[RatVec]:
    """Centre of the sphere through support, inside their affine hull."""
    base = support[0]
    Q = [tuple(c - b for c, b in zip(p, base)) for p in support[1:]]
    if not Q:
        return base
    gram = [[sum(a * b for a, b in zip(u, v)) for v in Q] for u in Q]
    rhs = [sum(a * a for a in u) / 2 for u in Q]
    coeffs = _solve_exact(gram, rhs)
    if coeffs is None:
        return None
    return tuple(base[k] + sum(c * q[k] for c, q in zip(coeffs, Q)) for k in range(len(base)))


def _sq_dist(p: RatVec, q: RatVec) -> Fraction:
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _certifying_support(
    points: List[RatVec], contacts: List[RatVec], center: np.ndarray, tol: float
) -> Optional[Tuple[RatVec, ...]]:
    """
    Smallest subset B of contacts whose exact circumcentre lies in conv(B),
    encloses every point exactly and sits within tol of center.
    """
    dim = len(center)
    for size in range(1, min(len(contacts), dim + 1) + 1):
        for subset in combinations(contacts, size):
            c = _exact_circumcenter(subset)
            if c is None or not is_in_convex_hull(c, list(subset)):
                continue
            if float(np.linalg.norm(np.array([float(v) for v in c]) - center)) > tol:
                continue
            r2 = _sq_dist(c, subset[0])
            if all(_sq_dist(p, c) <= r2 for p in points):
                return subset
    return None


def kkt_certificate(S: PointSet, ball: Ball, contact_tol: float = CONTACT_TOL) -> KKTCertificate:
    """
    Optimality check: the centre of the minimal ball lies in the convex hull of
    the points on its sphere.

    Contacts are the points within contact_tol (relative to max(1, radius)) of the
    sphere. The exact part searches the rational contacts for a support set whose
    exact circumcentre is a convex combination of it and whose ball holds every
    input point; such a ball is the unique minimal one.
    """
    center = np.asarray(ball.center, dtype=float)
    tol = contact_tol * max(1.0, ball.radius)
    contacts = [
        p for p in S.points if abs(float(np.linalg.norm(np.asarray(p) - center)) - ball.radius) <= tol
    ]
    if not contacts:
        return KKTCertificate(contacts=[], support=[], hull_distance=float("inf"), center_in_hull=False)
    gap = distance(VPolytope(vertices=contacts), center)
    unique_contacts = list(dict.fromkeys(_exact(p) for p in contacts))
    if len(unique_contacts) > CERTIFY_CONTACT_LIMIT:
        logger.warning(
            f"{len(unique_contacts)} contact points exceed the exact search limit of "
            f"{CERTIFY_CONTACT_LIMIT}; only the float hull distance is reported"
        )
        support = None
    else:
        support = _certifying_support([_exact(p) for p in S.points], unique_contacts, center, tol)
    return KKTCertificate(
        contacts=contacts,
        support=[[float(c) for c in p] for p in support] if support is not None else [],
        hull_distance=gap,
        center_in_hull=support is not None,
    )
