"""Exact rational and floating-point geometric primitives."""

from .hull import convex_hull_2d, extreme_points, is_in_convex_hull
from .overlap import convex_polygons_interior_overlap, penetration_depth, signed_area
from .rational import Rat, RatVec, format_rat, format_rat_vec, parse_rat, primitive, rat_vec
from .vectors import DEFAULT_TOLERANCE, FloatVec, Tolerance, as_float_vec, as_point_array

__all__ = [
    "Rat",
    "RatVec",
    "FloatVec",
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "parse_rat",
    "format_rat",
    "format_rat_vec",
    "rat_vec",
    "primitive",
    "as_float_vec",
    "as_point_array",
    "convex_hull_2d",
    "is_in_convex_hull",
    "extreme_points",
    "convex_polygons_interior_overlap",
    "penetration_depth",
    "signed_area",
]
