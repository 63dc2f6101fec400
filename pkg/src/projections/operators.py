"""
Projection, reflection and membership residuals for every SetDescriptor kind.

Nonconvex sets can have several nearest points. The selection is deterministic and
the result is flagged unique=False:

- Sphere at its center: center + r * e1
- Ellipse on the major axis inside the evolute: the candidate with y >= 0
- PSphere: the first minimizer in parameter order starting from e1
- VPolytope: the first optimal face in (size, lexicographic) order
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import InputError, NumericalError
from ..geometry.vectors import DEFAULT_TOLERANCE, FloatVec, Tolerance, as_float_vec, check_same_dimension
from .sets import AffineLine, Ball, Ellipse, HalfSpace, Hyperplane, PSphere, SetDescriptor, Sphere, VPolytope

logger = logging.getLogger(__name__)

MAX_SOLVER_ITERATIONS = 200
PSPHERE_SAMPLES = 512
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ProjectionResult:
    """A selected nearest point and whether it is the only one."""

    point: FloatVec
    unique: bool = True
    note: Optional[str] = None


# ═══════════════════════════════════════════════════════════════════════
# Convex sets
# ═══════════════════════════════════════════════════════════════════════

def _project_line(S: AffineLine, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    p0 = np.asarray(S.point, dtype=float)
    d = np.asarray(S.direction, dtype=float)
    t = float(np.dot(x - p0, d) / np.dot(d, d))
    return ProjectionResult(point=p0 + t * d)


def _project_hyperplane(S: Hyperplane, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    n = np.asarray(S.normal, dtype=float)
    gap = float(np.dot(n, x)) - S.offset
    return ProjectionResult(point=x - (gap / float(np.dot(n, n))) * n)


def _project_halfspace(S: HalfSpace, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    n = np.asarray(S.normal, dtype=float)
    gap = float(np.dot(n, x)) - S.offset
    if gap >= 0.0:
        return ProjectionResult(point=x.copy())
    return ProjectionResult(point=x - (gap / float(np.dot(n, n))) * n)


def _project_ball(S: Ball, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    c = np.asarray(S.center, dtype=float)
    v = x - c
    norm = float(np.linalg.norm(v))
    if norm <= S.radius:
        return ProjectionResult(point=x.copy())
    return ProjectionResult(point=c + (S.radius / norm) * v)


def _project_vpolytope(S: VPolytope, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    """Brute force over affinely independent vertex subsets (faces up to dimension d)."""
    vertices = np.unique(np.asarray(S.vertices, dtype=float), axis=0)
    m, d = vertices.shape
    best_point: Optional[np.ndarray] = None
    best_dist = math.inf

    for size in range(1, min(d + 1, m) + 1):
        for subset in itertools.combinations(range(m), size):
            base = vertices[subset[0]]
            if size == 1:
                candidate = base
            else:
                D = vertices[list(subset[1:])] - base
                gram = D @ D.T
                if np.linalg.matrix_rank(gram) < size - 1:
                    continue
                alpha = np.linalg.solve(gram, D @ (x - base))
                if alpha.min() < -1e-12 or alpha.sum() > 1.0 + 1e-12:
                    continue
                candidate = base + alpha @ D
            dist = float(np.linalg.norm(x - candidate))
            if dist < best_dist - 1e-12:
                best_dist = dist
                best_point = candidate

    assert best_point is not None
    return ProjectionResult(point=np.array(best_point, dtype=float))


# ═══════════════════════════════════════════════════════════════════════
# Nonconvex sets
# ═══════════════════════════════════════════════════════════════════════

def _project_sphere(S: Sphere, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    c = np.asarray(S.center, dtype=float)
    v = x - c
    norm = float(np.linalg.norm(v))
    if norm < tol.eps:
        e1 = np.zeros_like(c)
        e1[0] = 1.0
        return ProjectionResult(point=c + S.radius * e1, unique=False, note="center of sphere")
    return ProjectionResult(point=c + (S.radius / norm) * v)


def _ellipse_root(a: float, b: float, x0: float, y0: float, target: float) -> float:
    """
    Root of F(t) = (a x0/(a^2+t))^2 + (b y0/(b^2+t))^2 - 1 on (-b^2, inf).

    F is convex and decreasing there, so Newton started at the left end of the
    bracket increases monotonically; bisection guards against rounding.
    """
    a2, b2 = a * a, b * b
    ax, by = a * x0, b * y0

    def F(t: float) -> Tuple[float, float]:
        ra = ax / (a2 + t)
        rb = by / (b2 + t)
        value = ra * ra + rb * rb - 1.0
        slope = -2.0 * (ra * ra / (a2 + t) + rb * rb / (b2 + t))
        return value, slope

    lo = -b2 + by
    hi = -b2 + math.hypot(ax, by)
    t = lo
    for _ in range(MAX_SOLVER_ITERATIONS):
        value, slope = F(t)
        if abs(value) < target:
            return t
        if value > 0.0:
            lo = t
        else:
            hi = t
        step = t - value / slope if slope < 0.0 else math.nan
        if not (lo < step < hi):
            step = 0.5 * (lo + hi)
        if step == t:
            # Bracket collapsed to adjacent floats; the caller snaps onto the curve.
            if abs(value) < 1e-6:
                return t
            break
        t = step

    raise NumericalError(
        f"ellipse projection did not reach residual {target:g} (got {abs(value):.3e})"
    )


def _project_ellipse(S: Ellipse, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    a, b = S.a, S.b
    u, v = float(x[0]), float(x[1])
    if a == b:
        return _project_sphere(Sphere(center=[0.0, 0.0], radius=a), x, tol)

    su = -1.0 if u < 0.0 else 1.0
    sv = -1.0 if v < 0.0 else 1.0
    x0, y0 = abs(u), abs(v)

    if y0 > 0.0:
        if x0 == 0.0:
            return ProjectionResult(point=np.array([0.0, sv * b]))
        t = _ellipse_root(a, b, x0, y0, tol.solver_residual)
        px = a * a * x0 / (a * a + t)
        py = b * b * y0 / (b * b + t)
        level = math.sqrt((px / a) ** 2 + (py / b) ** 2)
        px, py = px / level, py / level
        residual = abs((px / a) ** 2 + (py / b) ** 2 - 1.0)
        if residual >= tol.solver_residual:
            raise NumericalError(f"ellipse projection residual {residual:.3e}")
        return ProjectionResult(point=np.array([su * px, sv * py]))

    # On the major axis: two symmetric nearest points strictly inside the evolute.
    threshold = (a * a - b * b) / a
    if x0 < threshold:
        px = a * a * x0 / (a * a - b * b)
        py = b * math.sqrt(max(0.0, 1.0 - (px / a) ** 2))
        return ProjectionResult(
            point=np.array([su * px, py]),
            unique=py == 0.0,
            note="symmetric nearest points; selected y >= 0",
        )
    return ProjectionResult(point=np.array([su * a, 0.0]))


def _psphere_point(p: float, theta: float) -> Tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    e = 2.0 / p
    return math.copysign(abs(c) ** e, c), math.copysign(abs(s) ** e, s)


def _project_psphere(S: PSphere, x: FloatVec, tol: Tolerance) -> ProjectionResult:
    """Golden-section search over the signed parameterization, then Newton polish."""
    p = S.p
    u, v = float(x[0]), float(x[1])
    if u == 0.0 and v == 0.0:
        if p >= 2.0:
            return ProjectionResult(point=np.array([1.0, 0.0]), unique=False, note="origin")
        c = 2.0 ** (-1.0 / p)
        return ProjectionResult(point=np.array([c, c]), unique=False, note="origin")

    def dist2(theta: float) -> float:
        qx, qy = _psphere_point(p, theta)
        return (qx - u) ** 2 + (qy - v) ** 2

    step = 2.0 * math.pi / PSPHERE_SAMPLES
    samples = [dist2(k * step) for k in range(PSPHERE_SAMPLES)]

    minima = []
    for k in range(PSPHERE_SAMPLES):
        prev = samples[k - 1]
        nxt = samples[(k + 1) % PSPHERE_SAMPLES]
        if samples[k] <= prev and samples[k] <= nxt:
            minima.append(k)

    candidates = []
    for k in minima:
        lo, hi = (k - 1) * step, (k + 1) * step
        c1 = hi - _GOLDEN * (hi - lo)
        c2 = lo + _GOLDEN * (hi - lo)
        f1, f2 = dist2(c1), dist2(c2)
        for _ in range(MAX_SOLVER_ITERATIONS):
            if hi - lo < 1e-14:
                break
            if f1 <= f2:
                hi, c2, f2 = c2, c1, f1
                c1 = hi - _GOLDEN * (hi - lo)
                f1 = dist2(c1)
            else:
                lo, c1, f1 = c1, c2, f2
                c2 = lo + _GOLDEN * (hi - lo)
                f2 = dist2(c2)
        theta = _newton_polish(dist2, 0.5 * (lo + hi), lo, hi)
        candidates.append((dist2(theta), theta % (2.0 * math.pi)))

    if not candidates:
        raise NumericalError("p-sphere projection found no minimizer")

    best_d2 = min(d for d, _ in candidates)
    ties = [theta for d, theta in candidates if d - best_d2 <= 1e-12 * max(1.0, best_d2)]
    theta = min(ties)
    qx, qy = _psphere_point(p, theta)
    residual = abs(abs(qx) ** p + abs(qy) ** p - 1.0)
    if residual >= tol.solver_residual:
        raise NumericalError(f"p-sphere projection residual {residual:.3e}")

    distinct = {(round(math.cos(t), 9), round(math.sin(t), 9)) for t in ties}
    unique = len(distinct) == 1
    note = None if unique else "several nearest points; selected first in parameter order"
    return ProjectionResult(point=np.array([qx, qy]), unique=unique, note=note)


def _newton_polish(f: Callable[[float], float], theta: float, lo: float, hi: float) -> float:
    """A few Newton steps on f' with central differences, kept only if f decreases."""
    h = 1e-6
    best, best_f = theta, f(theta)
    for _ in range(3):
        fp, f0, fm = f(best + h), best_f, f(best - h)
        second = (fp - 2.0 * f0 + fm) / (h * h)
        if second <= 0.0:
            break
        candidate = best - ((fp - fm) / (2.0 * h)) / second
        if not (lo <= candidate <= hi):
            break
        fc = f(candidate)
        if fc >= best_f:
            break
        best, best_f = candidate, fc
    return best


# ═══════════════════════════════════════════════════════════════════════
# Public operators
# ═══════════════════════════════════════════════════════════════════════

_PROJECTORS: Dict[type, Callable[[SetDescriptor, FloatVec, Tolerance], ProjectionResult]] = {
    AffineLine: _project_line,
    Hyperplane: _project_hyperplane,
    HalfSpace: _project_halfspace,
    Ball: _project_ball,
    VPolytope: _project_vpolytope,
    Sphere: _project_sphere,
    Ellipse: _project_ellipse,
    PSphere: _project_psphere,
}


def _prepare(S: SetDescriptor, x) -> FloatVec:
    vec = as_float_vec(x)
    check_same_dimension(vec, S.dimension)
    return vec


def project(S: SetDescriptor, x, tol: Tolerance = DEFAULT_TOLERANCE) -> ProjectionResult:
    """
    Nearest point of S to x.

    Args:
        S: Constraint set
        x: Point with the dimension of S
        tol: Tolerance for degenerate-case detection

    Returns:
        Selected nearest point, flagged unique=False when there are several

    Raises:
        InputError: On non-finite input or a dimension mismatch
        NumericalError: When an ellipse or p-sphere solve misses its residual target
    """
    vec = _prepare(S, x)
    try:
        projector = _PROJECTORS[type(S)]
    except KeyError:
        raise InputError(f"unsupported set kind {type(S).__name__}") from None
    return projector(S, vec, tol)


def reflect(S: SetDescriptor, x, tol: Tolerance = DEFAULT_TOLERANCE) -> FloatVec:
    """Reflector 2 P_S(x) - x."""
    vec = _prepare(S, x)
    return 2.0 * project(S, vec, tol).point - vec


def distance(S: SetDescriptor, x, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    vec = _prepare(S, x)
    return float(np.linalg.norm(vec - project(S, vec, tol).point))


def membership_residual(S: SetDescriptor, x) -> float:
    """
    Nonnegative residual that vanishes exactly on S.

    Distance for convex sets, absolute value of the defining equation for the
    sphere, ellipse and p-sphere.
    """
    vec = _prepare(S, x)
    if isinstance(S, Sphere):
        return abs(float(np.linalg.norm(vec - np.asarray(S.center, dtype=float))) - S.radius)
    if isinstance(S, Ellipse):
        return abs((vec[0] / S.a) ** 2 + (vec[1] / S.b) ** 2 - 1.0)
    if isinstance(S, PSphere):
        return abs(abs(vec[0]) ** S.p + abs(vec[1]) ** S.p - 1.0)
    return distance(S, vec)
