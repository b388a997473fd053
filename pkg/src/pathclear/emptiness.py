"""Emptiness structures: point location (D1) and segment intersection (D2).

D1 classifies a point as free space, inside an obstacle, or on a boundary
(within tolerance). D2 decides whether a query segment or line touches any
obstacle edge. Both are immutable after build and safe for concurrent reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bvh import EdgeBVH
from .geometry import BOUNDARY_TOL, Line, Point, Scene, Segment


class LocationKind(Enum):
    FREE_SPACE = "free"
    INSIDE = "inside"
    ON_BOUNDARY = "boundary"


@dataclass(frozen=True)
class Location:
    kind: LocationKind
    polygon_id: int | None = None


FREE = Location(LocationKind.FREE_SPACE)


@dataclass(frozen=True)
class Hit:
    polygon_id: int
    edge_index: int


class PointLocationIndex:
    """Uniform grid over polygon bounding boxes with exact per-polygon tests.

    Grid lookup narrows to the few polygons whose (tolerance-inflated) box
    contains the query point; an exact crossing-parity test and a vectorized
    boundary-distance check decide the classification.
    """

    def __init__(self, scene: Scene, tol: float = BOUNDARY_TOL):
        self.scene = scene
        self.tol = tol
        polys = sorted(scene.polygons, key=lambda p: p.id)
        self.ids = [p.id for p in polys]
        self.coords = [p.coords() for p in polys]
        m = len(polys)
        if m == 0:
            self.cell = 1.0
            self.grid: dict[tuple[int, int], list[int]] = {}
            self.bounds = (0.0, 0.0, 0.0, 0.0)
            return
        self.x0 = np.array([c[:, 0].min() for c in self.coords]) - tol
        self.y0 = np.array([c[:, 1].min() for c in self.coords]) - tol
        self.x1 = np.array([c[:, 0].max() for c in self.coords]) + tol
        self.y1 = np.array([c[:, 1].max() for c in self.coords]) + tol
        spans = np.maximum(self.x1 - self.x0, self.y1 - self.y0)
        self.cell = float(max(np.median(spans), np.mean(spans) * 0.25, 1e-12))
        self.bounds = (
            float(self.x0.min()),
            float(self.y0.min()),
            float(self.x1.max()),
            float(self.y1.max()),
        )
        self.grid = {}
        for j in range(m):
            gx0 = math.floor(self.x0[j] / self.cell)
            gx1 = math.floor(self.x1[j] / self.cell)
            gy0 = math.floor(self.y0[j] / self.cell)
            gy1 = math.floor(self.y1[j] / self.cell)
            for gx in range(gx0, gx1 + 1):
                for gy in range(gy0, gy1 + 1):
                    self.grid.setdefault((gx, gy), []).append(j)

    @property
    def item_count(self) -> int:
        return len(self.ids)

    def locate(self, p: Point) -> Location:
        if not self.ids:
            return FREE
        bx0, by0, bx1, by1 = self.bounds
        if p.x < bx0 or p.x > bx1 or p.y < by0 or p.y > by1:
            return FREE
        cand = self.grid.get(
            (math.floor(p.x / self.cell), math.floor(p.y / self.cell)), ()
        )
        hits = [
            j
            for j in cand
            if self.x0[j] <= p.x <= self.x1[j] and self.y0[j] <= p.y <= self.y1[j]
        ]
        # Boundary contact dominates containment; candidates are id-ordered.
        for j in hits:
            if self._boundary_distance(j, p) <= self.tol:
                return Location(LocationKind.ON_BOUNDARY, self.ids[j])
        for j in hits:
            if self._parity(j, p):
                return Location(LocationKind.INSIDE, self.ids[j])
        return FREE

    def _boundary_distance(self, j: int, p: Point) -> float:
        c = self.coords[j]
        vx, vy = c[:, 0], c[:, 1]
        wx, wy = np.roll(vx, -1), np.roll(vy, -1)
        ex, ey = wx - vx, wy - vy
        t = ((p.x - vx) * ex + (p.y - vy) * ey) / (ex * ex + ey * ey)
        np.clip(t, 0.0, 1.0, out=t)
        return float(np.min(np.hypot(p.x - (vx + t * ex), p.y - (vy + t * ey))))

    def _parity(self, j: int, p: Point) -> bool:
        c = self.coords[j]
        vx, vy = c[:, 0], c[:, 1]
        wx, wy = np.roll(vx, -1), np.roll(vy, -1)
        straddle = (vy <= p.y) != (wy <= p.y)
        if not np.any(straddle):
            return False
        t = (p.y - vy[straddle]) / (wy[straddle] - vy[straddle])
        xs = vx[straddle] + t * (wx[straddle] - vx[straddle])
        return bool(np.count_nonzero(xs > p.x) % 2)


class SegmentEmptinessIndex:
    """Edge hierarchy answering segment/line emptiness with exact predicates."""

    def __init__(self, scene: Scene, leaf_size: int = 8):
        self.scene = scene
        self.bvh = EdgeBVH(scene.edge_arrays(), leaf_size=leaf_size)

    @property
    def node_count(self) -> int:
        return self.bvh.node_count

    def segment_intersects(self, s: Segment) -> Hit | None:
        hit = self.bvh.segment_hit(s)
        if hit is None:
            return None
        return Hit(*hit)

    def line_intersects(self, line: Line) -> Hit | None:
        hit = self.bvh.line_hit(line)
        if hit is None:
            return None
        return Hit(*hit)


def build_point_location(scene: Scene, tol: float = BOUNDARY_TOL) -> PointLocationIndex:
    return PointLocationIndex(scene, tol=tol)


def build_segment_emptiness(scene: Scene, leaf_size: int = 8) -> SegmentEmptinessIndex:
    return SegmentEmptinessIndex(scene, leaf_size=leaf_size)
