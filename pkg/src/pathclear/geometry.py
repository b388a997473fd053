"""Geometric primitives and the distance case analysis shared by every index.

Numeric model: double precision floats. The orientation predicate is exact
(float filter with an exact rational fallback), so every topological decision
(does a segment cross an edge?) is deterministic. Distance values carry the
usual floating-point rounding and are documented to 1e-9 relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateVertexRun,
    InvalidPath,
    NonSimplePolygon,
    PolygonsIntersect,
    SceneValidationError,
)

# Shewchuk's static filter bound for the 2D orientation determinant:
# if |det| exceeds this times the sum of the partial products' magnitudes,
# the float sign is the true sign.
_ORIENT_FILTER = (3.0 + 16.0 * 2.0**-53) * 2.0**-53

# Distance below which a point counts as lying on a boundary.
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a.x == self.b.x and self.a.y == self.b.y:
            raise ValueError("degenerate segment: endpoints coincide")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    def direction(self) -> tuple[float, float]:
        """Unit vector from a to b."""
        ln = self.length
        return (self.b.x - self.a.x) / ln, (self.b.y - self.a.y) / ln


@dataclass(frozen=True)
class Line:
    """Infinite line through `anchor` with unit `direction`."""

    anchor: Point
    direction: tuple[float, float]

    def __post_init__(self):
        dx, dy = self.direction
        if abs(math.hypot(dx, dy) - 1.0) > 1e-12:
            raise ValueError("line direction must be a unit vector")

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        ln = math.hypot(q.x - p.x, q.y - p.y)
        if ln == 0.0:
            raise ValueError("cannot build a line through two identical points")
        return cls(p, ((q.x - p.x) / ln, (q.y - p.y) / ln))


@dataclass(frozen=True)
class Slab:
    """Region between the two lines perpendicular to a segment at its endpoints."""

    base: Segment
    l1: Line
    l2: Line

    def contains(self, p: Point) -> bool:
        """Closed membership test: points on l1/l2 are inside."""
        ux, uy = self.base.direction()
        a, b = self.base.a, self.base.b
        return (
            (p.x - a.x) * ux + (p.y - a.y) * uy >= 0.0
            and (p.x - b.x) * ux + (p.y - b.y) * uy <= 0.0
        )


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of twice the signed area of triangle pqr: +1 ccw, -1 cw, 0 collinear.

    Exact for all finite double inputs: a float filter answers the easy cases
    and a rational fallback decides the rest.
    """
    detleft = (q.x - p.x) * (r.y - p.y)
    detright = (q.y - p.y) * (r.x - p.x)
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if abs(det) > _ORIENT_FILTER * detsum:
        return 1 if det > 0.0 else -1
    if detsum == 0.0:
        # Both products are exactly zero, so det is exactly zero.
        return 0
    return _orientation_exact(p, q, r)


def _orientation_exact(p: Point, q: Point, r: Point) -> int:
    det = (Fraction(q.x) - Fraction(p.x)) * (Fraction(r.y) - Fraction(p.y)) - (
        Fraction(q.y) - Fraction(p.y)
    ) * (Fraction(r.x) - Fraction(p.x))
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def orientation_signs(px, py, qx, qy, rx, ry) -> np.ndarray:
    """Vectorized orientation over numpy arrays, with exact fallback.

    Elements whose float filter is inconclusive are re-evaluated with the
    exact scalar predicate, so the returned signs are always true signs.
    """
    detleft = (qx - px) * (ry - py)
    detright = (qy - py) * (rx - px)
    det = detleft - detright
    detsum = np.abs(detleft) + np.abs(detright)
    signs = np.sign(det).astype(np.int8)
    unsure = np.flatnonzero(np.abs(det) <= _ORIENT_FILTER * detsum)
    if unsure.size:
        shape = det.shape
        bpx = np.broadcast_to(px, shape).reshape(-1)
        bpy = np.broadcast_to(py, shape).reshape(-1)
        bqx = np.broadcast_to(qx, shape).reshape(-1)
        bqy = np.broadcast_to(qy, shape).reshape(-1)
        brx = np.broadcast_to(rx, shape).reshape(-1)
        bry = np.broadcast_to(ry, shape).reshape(-1)
        flat = signs.reshape(-1)
        for i in unsure:
            flat[i] = orientation(
                Point(float(bpx[i]), float(bpy[i])),
                Point(float(bqx[i]), float(bqy[i])),
                Point(float(brx[i]), float(bry[i])),
            )
    return signs


def dist_point_segment(p: Point, s: Segment) -> tuple[float, Point]:
    """Distance from p to segment s and the closest point on s."""
    ax, ay, bx, by = s.a.x, s.a.y, s.b.x, s.b.y
    abx, aby = bx - ax, by - ay
    t = ((p.x - ax) * abx + (p.y - ay) * aby) / (abx * abx + aby * aby)
    if t <= 0.0:
        foot = s.a
    elif t >= 1.0:
        foot = s.b
    else:
        foot = Point(ax + t * abx, ay + t * aby)
    return math.hypot(p.x - foot.x, p.y - foot.y), foot


def dist_point_line(p: Point, line: Line) -> tuple[float, Point]:
    """Perpendicular distance from p to the line and the foot point."""
    dx, dy = line.direction
    rx, ry = p.x - line.anchor.x, p.y - line.anchor.y
    along = rx * dx + ry * dy
    foot = Point(line.anchor.x + along * dx, line.anchor.y + along * dy)
    return abs(rx * dy - ry * dx), foot


def _on_segment_collinear(p: Point, s: Segment) -> bool:
    # Assumes p is collinear with s; checks bounding-box membership.
    return (
        min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
        and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y)
    )


def segments_intersect(s1: Segment, s2: Segment) -> bool:
    """True if the closed segments share any point (touching counts)."""
    o1 = orientation(s1.a, s1.b, s2.a)
    o2 = orientation(s1.a, s1.b, s2.b)
    o3 = orientation(s2.a, s2.b, s1.a)
    o4 = orientation(s2.a, s2.b, s1.b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment_collinear(s2.a, s1):
        return True
    if o2 == 0 and _on_segment_collinear(s2.b, s1):
        return True
    if o3 == 0 and _on_segment_collinear(s1.a, s2):
        return True
    if o4 == 0 and _on_segment_collinear(s1.b, s2):
        return True
    return False


def _crossing_point(s1: Segment, s2: Segment) -> Point:
    # Assumes the segments intersect; returns one common point.
    for p, seg in (
        (s1.a, s2),
        (s1.b, s2),
        (s2.a, s1),
        (s2.b, s1),
    ):
        if orientation(seg.a, seg.b, p) == 0 and _on_segment_collinear(p, seg):
            return p
    # Proper crossing: solve the 2x2 system.
    ax, ay = s1.a.x, s1.a.y
    r_x, r_y = s1.b.x - ax, s1.b.y - ay
    cx, cy = s2.a.x, s2.a.y
    q_x, q_y = s2.b.x - cx, s2.b.y - cy
    denom = r_x * q_y - r_y * q_x
    t = ((cx - ax) * q_y - (cy - ay) * q_x) / denom
    return Point(ax + t * r_x, ay + t * r_y)


def dist_segment_segment(s1: Segment, s2: Segment) -> tuple[float, Point, Point]:
    """Distance between two segments with a witness pair (p1 on s1, p2 on s2).

    Zero iff the segments share a point. For disjoint segments the value is
    exactly the minimum of the four endpoint-to-segment distances, which is
    the computational form of the endpoint case analysis.
    """
    if segments_intersect(s1, s2):
        p = _crossing_point(s1, s2)
        return 0.0, p, p
    d1, f1 = dist_point_segment(s1.a, s2)
    d2, f2 = dist_point_segment(s1.b, s2)
    d3, f3 = dist_point_segment(s2.a, s1)
    d4, f4 = dist_point_segment(s2.b, s1)
    best = min(d1, d2, d3, d4)
    if best == d1:
        return d1, s1.a, f1
    if best == d2:
        return d2, s1.b, f2
    if best == d3:
        return d3, f3, s2.a
    return d4, f4, s2.b


def dist_segment_line(s: Segment, line: Line) -> float:
    """Distance from a segment to an infinite line (0 if they cross)."""
    dx, dy = line.direction
    sa = (s.a.x - line.anchor.x) * dy - (s.a.y - line.anchor.y) * dx
    sb = (s.b.x - line.anchor.x) * dy - (s.b.y - line.anchor.y) * dx
    if sa == 0.0 or sb == 0.0 or (sa > 0.0) != (sb > 0.0):
        return 0.0
    return min(abs(sa), abs(sb))


def slab_of(s: Segment) -> Slab:
    """The region bounded by the perpendiculars to s at its endpoints."""
    ux, uy = s.direction()
    normal = (-uy, ux)
    return Slab(base=s, l1=Line(s.a, normal), l2=Line(s.b, normal))


@dataclass(frozen=True)
class SimplePolygon:
    """A simple polygon, vertices counterclockwise.

    The constructor normalizes orientation and rejects repeated consecutive
    vertices and zero-area rings. Full simplicity (no edge crossings) is
    enforced scene-wide by validate_scene.
    """

    vertices: tuple[Point, ...]
    id: int

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(verts) < 3:
            raise NonSimplePolygon(self.id, "fewer than 3 vertices")
        for i, v in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            if v.x == w.x and v.y == w.y:
                raise DegenerateVertexRun(self.id)
        area2 = _signed_area2(verts)
        if area2 == 0.0:
            raise NonSimplePolygon(self.id, "zero signed area")
        if area2 < 0.0:
            verts = (verts[0],) + tuple(reversed(verts[1:]))
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_coords(cls, polygon_id: int, coords) -> "SimplePolygon":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords), polygon_id)

    def coords(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices], dtype=np.float64)

    def edges(self):
        verts = self.vertices
        return [
            Segment(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))
        ]


def _signed_area2(verts) -> float:
    acc = 0.0
    for i, v in enumerate(verts):
        w = verts[(i + 1) % len(verts)]
        acc += v.x * w.y - w.x * v.y
    return acc


class EdgeArrays:
    """Flat numpy view of every obstacle edge, sorted by (polygon id, edge index)."""

    __slots__ = ("ax", "ay", "bx", "by", "poly", "eidx")

    def __init__(self, ax, ay, bx, by, poly, eidx):
        self.ax, self.ay, self.bx, self.by = ax, ay, bx, by
        self.poly, self.eidx = poly, eidx

    def __len__(self):
        return len(self.ax)


@dataclass(frozen=True)
class Scene:
    """A validated set of pairwise-disjoint simple polygons.

    Construct through validate_scene; direct construction skips the
    simplicity and disjointness checks.
    """

    polygons: tuple[SimplePolygon, ...]

    @property
    def m(self) -> int:
        return len(self.polygons)

    @property
    def n(self) -> int:
        return sum(len(p.vertices) for p in self.polygons)

    def polygon(self, polygon_id: int) -> SimplePolygon:
        for p in self.polygons:
            if p.id == polygon_id:
                return p
        raise KeyError(polygon_id)

    def edge_arrays(self) -> EdgeArrays:
        cached = self.__dict__.get("_edges")
        if cached is None:
            cached = _build_edge_arrays(self.polygons)
            object.__setattr__(self, "_edges", cached)
        return cached

    def vertex_arrays(self):
        """All obstacle vertices as (xs, ys, poly ids, vertex indices)."""
        e = self.edge_arrays()
        return e.ax, e.ay, e.poly, e.eidx

    def bbox(self) -> tuple[float, float, float, float]:
        e = self.edge_arrays()
        if len(e) == 0:
            return (0.0, 0.0, 0.0, 0.0)
        return (
            float(np.min(e.ax)),
            float(np.min(e.ay)),
            float(np.max(e.ax)),
            float(np.max(e.ay)),
        )

    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox()
        return math.hypot(x1 - x0, y1 - y0)


def _build_edge_arrays(polygons) -> EdgeArrays:
    order = sorted(polygons, key=lambda p: p.id)
    parts_a, parts_poly, parts_idx = [], [], []
    for poly in order:
        c = poly.coords()
        parts_a.append(c)
        parts_poly.append(np.full(len(c), poly.id, dtype=np.int64))
        parts_idx.append(np.arange(len(c), dtype=np.int64))
    if not parts_a:
        z = np.zeros(0, dtype=np.float64)
        zi = np.zeros(0, dtype=np.int64)
        return EdgeArrays(z, z, z, z, zi, zi)
    a = np.concatenate(parts_a)
    b = np.concatenate([np.roll(c, -1, axis=0) for c in parts_a])
    return EdgeArrays(
        np.ascontiguousarray(a[:, 0]),
        np.ascontiguousarray(a[:, 1]),
        np.ascontiguousarray(b[:, 0]),
        np.ascontiguousarray(b[:, 1]),
        np.concatenate(parts_poly),
        np.concatenate(parts_idx),
    )


@dataclass(frozen=True)
class PolyPath:
    """The query path: an ordered polyline of at least two vertices."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(verts) < 2:
            raise InvalidPath("path needs at least 2 vertices")
        for v, w in zip(verts, verts[1:]):
            if v.x == w.x and v.y == w.y:
                raise InvalidPath("path has repeated consecutive vertices")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_coords(cls, coords) -> "PolyPath":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords))

    @property
    def k(self) -> int:
        return len(self.vertices)

    def segments(self):
        return [Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:])]


def point_in_polygon(p: Point, polygon: SimplePolygon) -> bool:
    """Crossing-number test, half-open edge rule; boundary points unspecified."""
    c = polygon.coords()
    return bool(_crossing_parity(p.x, p.y, c[:, 0], c[:, 1]))


def _crossing_parity(px, py, vx, vy) -> int:
    wx, wy = np.roll(vx, -1), np.roll(vy, -1)
    straddle = (vy <= py) != (wy <= py)
    if not np.any(straddle):
        return 0
    vx_, vy_ = vx[straddle], vy[straddle]
    wx_, wy_ = wx[straddle], wy[straddle]
    t = (py - vy_) / (wy_ - vy_)
    xs = vx_ + t * (wx_ - vx_)
    return int(np.count_nonzero(xs > px) % 2)


def _segment_boxes_overlap(ax, ay, bx, by, cx, cy, dx, dy):
    # Vectorized AABB-overlap filter between one segment set and another.
    lo1x, hi1x = np.minimum(ax, bx), np.maximum(ax, bx)
    lo1y, hi1y = np.minimum(ay, by), np.maximum(ay, by)
    lo2x, hi2x = np.minimum(cx, dx), np.maximum(cx, dx)
    lo2y, hi2y = np.minimum(cy, dy), np.maximum(cy, dy)
    return (lo1x <= hi2x) & (lo2x <= hi1x) & (lo1y <= hi2y) & (lo2y <= hi1y)


def _candidate_pairs(edges: EdgeArrays):
    """Edge-index pairs whose bounding boxes overlap, via uniform-grid binning."""
    n = len(edges)
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    lox = np.minimum(edges.ax, edges.bx)
    hix = np.maximum(edges.ax, edges.bx)
    loy = np.minimum(edges.ay, edges.by)
    hiy = np.maximum(edges.ay, edges.by)
    # Per-edge extent is positive (no degenerate edges), so the mean is too.
    exts = np.maximum(hix - lox, hiy - loy)
    cell = 2.0 * max(float(np.mean(exts)), float(np.median(exts)))
    gx0 = np.floor(lox / cell).astype(np.int64)
    gx1 = np.floor(hix / cell).astype(np.int64)
    gy0 = np.floor(loy / cell).astype(np.int64)
    gy1 = np.floor(hiy / cell).astype(np.int64)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i in range(n):
        for cx_ in range(gx0[i], gx1[i] + 1):
            for cy_ in range(gy0[i], gy1[i] + 1):
                buckets.setdefault((cx_, cy_), []).append(i)
    pairs = set()
    for members in buckets.values():
        if len(members) < 2:
            continue
        for ii in range(len(members)):
            for jj in range(ii + 1, len(members)):
                a, b = members[ii], members[jj]
                pairs.add((a, b) if a < b else (b, a))
    if not pairs:
        return np.zeros((0, 2), dtype=np.int64)
    arr = np.array(sorted(pairs), dtype=np.int64)
    mask = _segment_boxes_overlap(
        edges.ax[arr[:, 0]], edges.ay[arr[:, 0]], edges.bx[arr[:, 0]], edges.by[arr[:, 0]],
        edges.ax[arr[:, 1]], edges.ay[arr[:, 1]], edges.bx[arr[:, 1]], edges.by[arr[:, 1]],
    )
    return arr[mask]


def _polygon_sizes(scene_polygons):
    return {p.id: len(p.vertices) for p in scene_polygons}


def validate_scene(polygons) -> Scene:
    """Check simplicity of each polygon and pairwise disjointness, build a Scene.

    Raises NonSimplePolygon, DegenerateVertexRun, or PolygonsIntersect.
    Touching (boundary contact) counts as intersecting.
    """
    polys = tuple(polygons)
    ids = [p.id for p in polys]
    if len(set(ids)) != len(ids):
        raise SceneValidationError("polygon ids must be unique")
    scene = Scene(polys)
    edges = scene.edge_arrays()
    sizes = _polygon_sizes(polys)
    pairs = _candidate_pairs(edges)
    for i, j in pairs:
        pi, pj = int(edges.poly[i]), int(edges.poly[j])
        s1 = Segment(
            Point(float(edges.ax[i]), float(edges.ay[i])),
            Point(float(edges.bx[i]), float(edges.by[i])),
        )
        s2 = Segment(
            Point(float(edges.ax[j]), float(edges.ay[j])),
            Point(float(edges.bx[j]), float(edges.by[j])),
        )
        if pi == pj:
            size = sizes[pi]
            ei, ej = int(edges.eidx[i]), int(edges.eidx[j])
            if (ei + 1) % size == ej or (ej + 1) % size == ei:
                if _adjacent_edges_fold_back(s1, s2, ei, ej, size):
                    raise NonSimplePolygon(pi, "adjacent edges fold back")
                continue
            if segments_intersect(s1, s2):
                raise NonSimplePolygon(pi)
        else:
            if segments_intersect(s1, s2):
                raise PolygonsIntersect(min(pi, pj), max(pi, pj))
    _check_containment(scene)
    return scene


def _adjacent_edges_fold_back(s1, s2, ei, ej, size) -> bool:
    if (ei + 1) % size == ej:
        prev_pt, shared, next_pt = s1.a, s1.b, s2.b
    else:
        prev_pt, shared, next_pt = s2.a, s2.b, s1.b
    if orientation(prev_pt, shared, next_pt) != 0:
        return False
    dot = (prev_pt.x - shared.x) * (next_pt.x - shared.x) + (
        prev_pt.y - shared.y
    ) * (next_pt.y - shared.y)
    return dot > 0.0


def _check_containment(scene: Scene):
    # With no boundary crossings, one polygon contains another iff it contains
    # any single vertex of it.
    if scene.m < 2:
        return
    coords = [p.coords() for p in scene.polygons]
    x0 = np.array([c[:, 0].min() for c in coords])
    y0 = np.array([c[:, 1].min() for c in coords])
    x1 = np.array([c[:, 0].max() for c in coords])
    y1 = np.array([c[:, 1].max() for c in coords])
    for i, p in enumerate(scene.polygons):
        probe = p.vertices[0]
        hits = (x0 <= probe.x) & (probe.x <= x1) & (y0 <= probe.y) & (probe.y <= y1)
        hits[i] = False
        for j in np.flatnonzero(hits):
            q = scene.polygons[j]
            if point_in_polygon(probe, q):
                raise PolygonsIntersect(min(p.id, q.id), max(p.id, q.id))
