"""
The family transform F(Omega) = { C(g) : g a unit vector }, with

    C(g) = conv( union over P in Omega of Argmax_{x in P} <x, g> ).

Support faces are represented by their maximizing vertex sets. In dimensions 1 and
2 the finitely many values of C are enumerated exactly by evaluating C on every
critical direction and on one direction inside each open arc between them.
"""

import functools
import logging
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from ..errors import InputError, UnsupportedModeError
from ..geometry.rational import RatVec
from .family import Direction, Family, RationalPolytope

logger = logging.getLogger(__name__)


class TransformMode(str, Enum):
    """Direction enumeration mode."""

    EXACT = "exact"  # complete, dimension <= 2
    SAMPLED = "sampled"  # random directions, may miss values


def _dot(v: RatVec, g: Sequence[int]) -> Fraction:
    return sum((c * k for c, k in zip(v, g)), Fraction(0))


def support_vertices(P: RationalPolytope, g: Direction) -> List[RatVec]:
    """All vertices of P attaining max <v, g>."""
    if P.dimension != g.dimension:
        raise InputError(f"dimension mismatch: polytope {P.dimension}, direction {g.dimension}")
    values = [_dot(v, g.vector) for v in P.vertices]
    top = max(values)
    return [v for v, value in zip(P.vertices, values) if value == top]


def build_C(omega: Family, g: Direction) -> RationalPolytope:
    """Convex hull of the union of the support faces of all members in direction g."""
    points = set()
    for member in omega.members:
        points.update(support_vertices(member, g))
    return RationalPolytope.from_points(points)


# ═══════════════════════════════════════════════════════════════════════
# Direction enumeration
# ═══════════════════════════════════════════════════════════════════════

def _half(v: Tuple[int, int]) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u: Tuple[int, int], w: Tuple[int, int]) -> int:
    hu, hw = _half(u), _half(w)
    if hu != hw:
        return -1 if hu < hw else 1
    cross = u[0] * w[1] - u[1] * w[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _arc_representative(u: Tuple[int, int], w: Tuple[int, int]) -> Tuple[int, int]:
    """An integer direction strictly inside the counterclockwise open arc from u to w."""
    cross = u[0] * w[1] - u[1] * w[0]
    if cross > 0:
        return (u[0] + w[0], u[1] + w[1])
    # Arc of exactly pi (the only other case, since the ray set is symmetric).
    return (-u[1], u[0])


def critical_directions(omega: Family) -> List[Direction]:
    """
    Directions on which C realizes every value it takes on the unit circle.

    Dimension 1 gives {+1, -1}. Dimension 2 gives the normals of all vertex
    differences within each member, sorted by angle from +x, interleaved with one
    representative inside each open arc between consecutive normals.

    Raises:
        UnsupportedModeError: For dimension 3 and above
    """
    if omega.dimension == 1:
        return [Direction(vector=(1,)), Direction(vector=(-1,))]
    if omega.dimension != 2:
        raise UnsupportedModeError(
            f"exact direction enumeration supports dimension <= 2, got {omega.dimension}"
        )

    rays = set()
    for member in omega.members:
        verts = member.vertices
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                dx = verts[j][0] - verts[i][0]
                dy = verts[j][1] - verts[i][1]
                normal = Direction.of((-dy, dx)).vector
                rays.add(normal)
                rays.add((-normal[0], -normal[1]))

    if not rays:
        # Every member is a single point: C is constant.
        return [Direction(vector=(1, 0))]

    ordered = sorted(rays, key=functools.cmp_to_key(_angle_cmp))
    directions: List[Direction] = []
    for k, ray in enumerate(ordered):
        nxt = ordered[(k + 1) % len(ordered)]
        directions.append(Direction(vector=ray))
        directions.append(Direction.of(_arc_representative(ray, nxt)))
    return directions


def sampled_directions(dimension: int, count: int, seed: int = 0, bound: int = 1000) -> List[Direction]:
    """
    Coordinate rays plus seeded random integer directions; not complete.

    The line has only its two coordinate rays, so count is ignored there.
    """
    rng = np.random.default_rng(seed)
    found: Dict[Tuple[int, ...], None] = {}
    for axis in range(dimension):
        for sign in (1, -1):
            e = [0] * dimension
            e[axis] = sign
            found[tuple(e)] = None
    if dimension == 1:
        return [Direction(vector=v) for v in found]
    while len(found) < count + 2 * dimension:
        raw = rng.integers(-bound, bound + 1, size=dimension)
        if not raw.any():
            continue
        found[Direction.of(int(c) for c in raw).vector] = None
    return [Direction(vector=v) for v in found]


# ═══════════════════════════════════════════════════════════════════════
# Transform
# ═══════════════════════════════════════════════════════════════════════

def _integer_view(omega: Family) -> List[List[Tuple[int, ...]]]:
    """Members scaled by the common denominator; maximizers are scale invariant."""
    scale = 1
    for member in omega.members:
        for v in member.vertices:
            for c in v:
                scale = lcm(scale, c.denominator)
    return [[tuple(int(c * scale) for c in v) for v in m.vertices] for m in omega.members]


def evaluate_C(omega: Family, directions: Sequence[Direction]) -> List[RationalPolytope]:
    """C(g) for each direction, sharing hull computations between equal support unions."""
    scaled = _integer_view(omega)
    hulls: Dict[FrozenSet[RatVec], RationalPolytope] = {}
    result = []
    for g in directions:
        if g.dimension != omega.dimension:
            raise InputError(f"dimension mismatch: family {omega.dimension}, direction {g.dimension}")
        points = set()
        for member, ints in zip(omega.members, scaled):
            values = [sum(a * b for a, b in zip(v, g.vector)) for v in ints]
            top = max(values)
            points.update(member.vertices[i] for i, value in enumerate(values) if value == top)
        key = frozenset(points)
        if key not in hulls:
            hulls[key] = RationalPolytope.from_points(points)
        result.append(hulls[key])
    return result


def transform(
    omega: Family,
    mode: TransformMode = TransformMode.EXACT,
    samples: int = 2000,
    seed: int = 0,
) -> Family:
    """
    Apply F once.

    Args:
        omega: Input family
        mode: EXACT (dimension <= 2) or SAMPLED
        samples: Number of random directions in SAMPLED mode
        seed: Seed for SAMPLED mode

    Returns:
        The canonical family of distinct C(g)

    Raises:
        UnsupportedModeError: EXACT mode in dimension >= 3
    """
    if mode is TransformMode.EXACT:
        directions = critical_directions(omega)
    else:
        logger.warning(
            f"Sampled transform with {samples} directions in dimension {omega.dimension}; "
            "result may miss values of C"
        )
        directions = sampled_directions(omega.dimension, samples, seed)
    return Family.from_members(evaluate_C(omega, directions))
