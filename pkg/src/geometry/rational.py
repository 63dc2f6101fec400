"""
Exact rational scalars and vectors.

Rat is fractions.Fraction (always in lowest terms, positive denominator, backed by
arbitrary-precision integers). RatVec is a tuple of Rat so vectors hash, compare
lexicographically and never change dimension.
"""

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

from ..errors import InputError

Rat = Fraction
RatVec = Tuple[Fraction, ...]

RatLike = Union[Fraction, int, str]


def parse_rat(value: RatLike) -> Fraction:
    """Parse "p/q", "p" or an integer into an exact rational."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"not a rational: {value!r}") from e
    raise InputError(f"not a rational: {value!r}")


def format_rat(value: Fraction) -> str:
    """Serialize as "p/q", omitting q when it is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_vec(coords: Iterable[RatLike]) -> RatVec:
    """Build a RatVec from rationals, integers or "p/q" strings."""
    vec = tuple(parse_rat(c) for c in coords)
    if not vec:
        raise InputError("vector must have dimension >= 1")
    return vec


def format_rat_vec(vec: RatVec) -> list[str]:
    return [format_rat(c) for c in vec]


def check_dimension(points: Sequence[RatVec], dimension: int | None = None) -> int:
    """Return the common dimension of points, raising InputError on mismatch."""
    if not points:
        raise InputError("point list is empty")
    dim = len(points[0]) if dimension is None else dimension
    for p in points:
        if len(p) != dim:
            raise InputError(f"dimension mismatch: expected {dim}, got {len(p)}")
    return dim


def dot(u: RatVec, v: RatVec) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: RatVec, v: RatVec) -> RatVec:
    return tuple(a - b for a, b in zip(u, v))


def add(u: RatVec, v: RatVec) -> RatVec:
    return tuple(a + b for a, b in zip(u, v))


def primitive(vec: RatVec) -> Tuple[int, ...]:
    """
    Scale a nonzero rational vector to coprime integers, keeping its direction.

    Raises:
        InputError: If the vector is zero
    """
    if all(c == 0 for c in vec):
        raise InputError("direction must be nonzero")
    lcm = 1
    for c in vec:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in vec]
    g = 0
    for i in ints:
        g = gcd(g, abs(i))
    return tuple(i // g for i in ints)
