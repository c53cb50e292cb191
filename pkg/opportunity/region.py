"""
The feasible region of ``(error, opportunity-difference)`` pairs.

The map ``F -> (err(F), d(F))`` is affine, so the region is the image of the
predictor box ``0 <= F <= P``: a zonotope, i.e. the Minkowski sum of one
segment per row, translated by ``(<P, Q>, 0)``. Row ``i`` contributes the
segment ``t * (dx_i, dy_i)`` for ``t`` in ``[0, 1]`` with

    dx_i = p_i (1 - 2 q_i)
    dy_i = p_i w_i,  w = Q1 / <P, Q1> - Q0 / <P, Q0>

The production path (:func:`zonotope_region`) walks the zonotope boundary
after sorting the segments by angle; :func:`brute_force_region` maps all
``2^n`` deterministic predictors and takes their hull, and serves as oracle.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distribution import PredictorVec
from .exceptions import ConstructionError, TooLarge
from .metrics import MetricPoint, metric_point, opportunity_weights

logger = logging.getLogger(__name__)

COLLINEAR_TOLERANCE = 1e-10
ZERO_GENERATOR = 1e-14
VERTEX_TOLERANCE = 1e-9
AXIS_TOLERANCE = 1e-12
BRUTE_FORCE_LIMIT = 20
BLOCK_BITS = 12


@dataclass(frozen=True)
class Generator2D:
    """Contribution of one row to the metric plane."""

    dx: float
    dy: float
    row_index: int

    @property
    def norm(self):
        return math.hypot(self.dx, self.dy)


@dataclass(frozen=True, eq=False)
class RegionPolygon:
    """
    Convex polygon of attainable metric points.

    Vertices run counter-clockwise from the lexicographically smallest
    ``(error, opp_diff)``. ``witnesses[k]`` is a deterministic predictor whose
    metric point is ``vertices[k]``. Segments and points are flagged
    ``degenerate`` and keep the same representation.
    """

    vertices: tuple
    witnesses: tuple
    degenerate: bool = False

    def __len__(self):
        return len(self.vertices)

    def points(self):
        return np.array([(v.error, v.opp_diff) for v in self.vertices], dtype=float)

    def witness_bits(self):
        """Witnesses as 0/1 pointwise decisions."""
        return [[int(fi > 0) for fi in w.f] for w in self.witnesses]

    @property
    def error_extent(self):
        errors = [v.error for v in self.vertices]
        return min(errors), max(errors)

    def is_convex(self, tol=VERTEX_TOLERANCE):
        if len(self.vertices) < 3:
            return True
        pts = self.points()
        k = len(pts)
        for i in range(k):
            o, a, b = pts[i], pts[(i + 1) % k], pts[(i + 2) % k]
            if _cross(o, a, b) < -tol:
                return False
        return True

    def is_point_symmetric(self, tol=VERTEX_TOLERANCE):
        """Every vertex mirrored through ``(1/2, 0)`` is again a vertex."""
        pts = self.points()
        for v in self.vertices:
            m = v.mirrored()
            distance = np.hypot(pts[:, 0] - m.error, pts[:, 1] - m.opp_diff)
            if distance.min() > tol:
                return False
        return True


# ---------------------------
# Geometry helpers
# ---------------------------
def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _turns_left(o, a, b):
    scale = math.hypot(a[0] - o[0], a[1] - o[1]) * math.hypot(b[0] - o[0], b[1] - o[1])
    return _cross(o, a, b) > COLLINEAR_TOLERANCE * scale


def convex_hull(points):
    """
    Andrew's monotone chain over ``(x, y, tag)`` tuples.

    Collinear and (near-)duplicate points are dropped; among duplicates the
    smallest tag is kept. Returns the hull counter-clockwise starting at the
    lexicographically smallest point.
    """
    unique = {}
    for x, y, tag in sorted(points):
        unique.setdefault((round(x, 12), round(y, 12)), (x, y, tag))
    pts = sorted(unique.values())
    if len(pts) <= 2:
        return pts

    lower = []
    for p in pts:
        while len(lower) >= 2 and not _turns_left(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and not _turns_left(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _canonical(vertices, witnesses):
    """Rotate so the lexicographically smallest vertex comes first."""
    keys = [(round(v.error, 12), round(v.opp_diff, 12)) for v in vertices]
    start = keys.index(min(keys))
    return vertices[start:] + vertices[:start], witnesses[start:] + witnesses[:start]


# ---------------------------
# Region construction
# ---------------------------
def generators(source):
    """
    One :class:`Generator2D` per row.

    Raises:
        UndefinedEO: a group has no positive-label mass.
    """
    source = source.to_float()
    dx = source.P * (1 - 2 * source.Q)
    dy = source.P * opportunity_weights(source)
    return [Generator2D(float(x), float(y), i) for i, (x, y) in enumerate(zip(dx, dy))]


def zonotope_region(source):
    """
    Exact region as a zonotope, in ``O(n log n)``.

    Generators are oriented into the upper half-plane, sorted by angle and
    parallel ones are merged; walking them forward then backward traces the
    boundary counter-clockwise from the bottom vertex. Each vertex carries the
    deterministic predictor realizing it.

    Raises:
        UndefinedEO: a group has no positive-label mass.
    """
    source = source.to_float()
    gens = generators(source)
    t = np.zeros(source.n)

    oriented = []
    for g in gens:
        if g.norm < ZERO_GENERATOR:
            continue
        if g.dy < 0 or (g.dy == 0 and g.dx < 0):
            t[g.row_index] = 1.0
            h = (-g.dx, -g.dy)
        else:
            h = (g.dx, g.dy)
        oriented.append((math.atan2(h[1], h[0]), g.row_index, h))
    oriented.sort()

    groups = []
    for _, row, h in oriented:
        if groups:
            gx, gy, members = groups[-1]
            unit = math.hypot(gx, gy) * math.hypot(*h)
            parallel = abs(gx * h[1] - gy * h[0]) <= COLLINEAR_TOLERANCE * unit
            if parallel and gx * h[0] + gy * h[1] > 0:
                groups[-1] = (gx + h[0], gy + h[1], members + [row])
                continue
        groups.append((h[0], h[1], [row]))

    dx = np.array([g.dx for g in gens])
    dy = np.array([g.dy for g in gens])
    x = math.fsum(source.P * source.Q) + math.fsum(t * dx)
    y = math.fsum(t * dy)

    vertices = [MetricPoint(x, y)]
    witnesses = [PredictorVec(t * source.P)]
    for sign in (1, -1):
        for gx, gy, members in groups:
            x, y = x + sign * gx, y + sign * gy
            t[members] = 1.0 - t[members]
            vertices.append(MetricPoint(x, y))
            witnesses.append(PredictorVec(t * source.P))
    if groups:
        # the walk closes on its starting vertex
        vertices.pop()
        witnesses.pop()

    degenerate = len(groups) < 2
    if degenerate:
        logger.info("Region is degenerate (%d distinct directions)", len(groups))

    vertices, witnesses = _canonical(vertices, witnesses)
    return RegionPolygon(tuple(vertices), tuple(witnesses), degenerate)


def _block_hull(base, dx, dy, start, stop):
    masks = np.arange(start, stop, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(dx))) & 1
    xs = base + bits @ dx
    ys = bits @ dy
    return convex_hull(zip(xs.tolist(), ys.tolist(), masks.tolist()))


def brute_force_region(source, threads=1):
    """
    Region as the hull of all ``2^n`` deterministic predictors (oracle).

    The mask space is split into blocks whose partial hulls are computed
    independently, optionally on ``threads`` workers, then merged.

    Raises:
        TooLarge: more than 20 rows.
        UndefinedEO: a group has no positive-label mass.
    """
    source = source.to_float()
    if source.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(
            f"brute force enumerates 2^{source.n} predictors (limit 2^{BRUTE_FORCE_LIMIT})"
        )
    gens = generators(source)
    dx = np.array([g.dx for g in gens])
    dy = np.array([g.dy for g in gens])
    base = math.fsum(source.P * source.Q)

    total = 1 << source.n
    block = 1 << min(source.n, BLOCK_BITS)
    bounds = [(lo, min(lo + block, total)) for lo in range(0, total, block)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        partial = pool.map(lambda b: _block_hull(base, dx, dy, *b), bounds)
        candidates = [p for hull in partial for p in hull]
    hull = convex_hull(candidates)

    vertices, witnesses = [], []
    for x, y, mask in hull:
        vertices.append(MetricPoint(x, y))
        bits = np.array([(mask >> i) & 1 for i in range(source.n)], dtype=float)
        witnesses.append(PredictorVec(bits * source.P))
    vertices, witnesses = _canonical(vertices, witnesses)
    return RegionPolygon(tuple(vertices), tuple(witnesses), len(vertices) < 3)


# ---------------------------
# Queries
# ---------------------------
def eo_slice(region):
    """
    Error interval attained by equal-opportunity predictors.

    Intersects the polygon with the axis ``opp_diff = 0``. The slice always
    contains both constant classifiers, so an empty result is a bug.

    Returns:
        tuple: ``(err_min, err_max)``.
    """
    pts = region.points()
    k = len(pts)
    xs = [x for x, y in pts if abs(y) <= AXIS_TOLERANCE]
    edges = [(0, 1)] if k == 2 else [(i, (i + 1) % k) for i in range(k)]
    for i, j in edges:
        (x0, y0), (x1, y1) = pts[i], pts[j]
        if (y0 < -AXIS_TOLERANCE and y1 > AXIS_TOLERANCE) or (
            y0 > AXIS_TOLERANCE and y1 < -AXIS_TOLERANCE
        ):
            xs.append(x0 + (x1 - x0) * (-y0) / (y1 - y0))
    if not xs:
        raise ConstructionError("the region does not meet the equal-opportunity axis")
    return float(min(xs)), float(max(xs))


def contains(region, pt, tol=VERTEX_TOLERANCE):
    """Point-in-convex-polygon test with tolerance ``tol`` (distance units)."""
    pts = region.points()
    q = np.array([pt.error, pt.opp_diff], dtype=float)
    if len(pts) == 1:
        return bool(np.hypot(*(q - pts[0])) <= tol)
    if len(pts) == 2:
        a, b = pts
        ab = b - a
        t = np.clip(np.dot(q - a, ab) / np.dot(ab, ab), 0.0, 1.0)
        return bool(np.hypot(*(q - (a + t * ab))) <= tol)
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        if _cross(a, b, q) / np.hypot(*(b - a)) < -tol:
            return False
    return True


def verify_region(source, region, tol=VERTEX_TOLERANCE):
    """
    Check the three structural claims on a computed region.

    Returns:
        dict: ``convex``, ``deterministic_witnesses`` (each witness is
        deterministic and maps onto its vertex) and ``point_symmetric``.
    """
    source = source.to_float()
    witnesses_ok = True
    for vertex, witness in zip(region.vertices, region.witnesses):
        mapped = metric_point(source, witness)
        if not witness.is_deterministic(source) or (
            abs(mapped.error - vertex.error) > tol
            or abs(mapped.opp_diff - vertex.opp_diff) > tol
        ):
            witnesses_ok = False
            break
    return {
        "convex": region.is_convex(tol),
        "deterministic_witnesses": witnesses_ok,
        "point_symmetric": region.is_point_symmetric(tol),
    }
