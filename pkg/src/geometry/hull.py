"""
Exact convex hulls and hull membership over rationals.

Planar hulls use the monotone chain; membership in higher dimensions is decided by a
phase-one simplex over Fraction with Bland's rule, so no rounding ever happens.
"""

import logging
from fractions import Fraction
from typing import List, Sequence

from ..errors import InputError
from .rational import RatVec, check_dimension

logger = logging.getLogger(__name__)


def _cross(o: RatVec, a: RatVec, b: RatVec) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[RatVec]) -> List[RatVec]:
    """
    Extreme points of a planar point set in counterclockwise order.

    The first vertex is the lexicographically smallest point; collinear and
    duplicate points are dropped.

    Args:
        points: Nonempty list of 2-D rational points

    Returns:
        Hull vertices, counterclockwise

    Raises:
        InputError: On empty input or points that are not 2-D
    """
    check_dimension(points, 2)
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    lower: List[RatVec] = []
    for p in pts:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)

    upper: List[RatVec] = []
    for p in reversed(pts):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)

    # Collinear input degenerates to the two segment endpoints.
    return lower[:-1] + upper[:-1]


def _phase_one_feasible(rows: List[List[Fraction]], rhs: List[Fraction]) -> bool:
    """
    Decide whether {lam >= 0 : rows @ lam = rhs} is nonempty.

    Minimizes the sum of artificial variables with Bland's anti-cycling rule.
    """
    m = len(rows)
    n = len(rows[0])

    tableau: List[List[Fraction]] = []
    for i in range(m):
        row = list(rows[i])
        b = rhs[i]
        if b < 0:
            row = [-v for v in row]
            b = -b
        artificial = [Fraction(0)] * m
        artificial[i] = Fraction(1)
        tableau.append(row + artificial + [b])

    basis = [n + i for i in range(m)]
    width = n + m + 1

    # Reduced costs of the phase-one objective; last entry is -w.
    objective = [Fraction(0)] * width
    for j in range(n):
        objective[j] = -sum((tableau[i][j] for i in range(m)), Fraction(0))
    objective[-1] = -sum((tableau[i][-1] for i in range(m)), Fraction(0))

    while True:
        entering = next((j for j in range(n + m) if objective[j] < 0), None)
        if entering is None:
            break

        leaving = None
        best_ratio = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            # Cannot happen: the phase-one objective is bounded below by zero.
            break

        pivot_row = tableau[leaving]
        pivot = pivot_row[entering]
        pivot_row = [v / pivot for v in pivot_row]
        tableau[leaving] = pivot_row
        for i in range(m):
            if i != leaving and tableau[i][entering] != 0:
                factor = tableau[i][entering]
                tableau[i] = [a - factor * b for a, b in zip(tableau[i], pivot_row)]
        factor = objective[entering]
        objective = [a - factor * b for a, b in zip(objective, pivot_row)]
        basis[leaving] = entering

    return objective[-1] == 0


def is_in_convex_hull(p: RatVec, generators: Sequence[RatVec]) -> bool:
    """
    Exact test whether p is a convex combination of generators.

    Raises:
        InputError: On an empty generator list or inconsistent dimensions
    """
    if not generators:
        raise InputError("generator list is empty", field="generators")
    dim = check_dimension(generators)
    if len(p) != dim:
        raise InputError(f"dimension mismatch: expected {dim}, got {len(p)}", field="p")

    if p in generators:
        return True
    for axis in range(dim):
        coords = [g[axis] for g in generators]
        if p[axis] < min(coords) or p[axis] > max(coords):
            return False

    gens = list(dict.fromkeys(generators))
    rows = [[g[axis] for g in gens] for axis in range(dim)]
    rows.append([Fraction(1)] * len(gens))
    rhs = list(p) + [Fraction(1)]
    return _phase_one_feasible(rows, rhs)


def extreme_points(points: Sequence[RatVec]) -> List[RatVec]:
    """
    Points that are not convex combinations of the others, deduplicated and sorted.

    Dimension 1 keeps min and max, dimension 2 goes through the monotone chain and
    higher dimensions test every point with the exact simplex.
    """
    dim = check_dimension(points)
    unique = sorted(set(points))
    if len(unique) <= 2:
        return unique
    if dim == 1:
        return [unique[0], unique[-1]]
    if dim == 2:
        return sorted(convex_hull_2d(unique))

    result = []
    for i, v in enumerate(unique):
        others = unique[:i] + unique[i + 1:]
        if not is_in_convex_hull(v, others):
            result.append(v)
    return result
