"""Bounding-volume hierarchy over obstacle edges.

One structure serves two query families: exact emptiness tests (does a query
segment or line touch any edge?) and exact nearest-edge-to-point queries via
best-first traversal. Immutable after build; queries share no mutable state.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

from .geometry import (
    EdgeArrays,
    Line,
    Point,
    Segment,
    segments_intersect,
)

# Conservative float margin for corner-side filters: nodes whose corner signs
# are within this relative band are treated as straddling (never pruned).
_SIDE_GUARD = 8.0 * 2.0**-53


class _Node:
    __slots__ = ("x0", "y0", "x1", "y1", "left", "right", "start", "end")

    def __init__(self, x0, y0, x1, y1, left, right, start, end):
        self.x0, self.y0, self.x1, self.y1 = x0, y0, x1, y1
        self.left, self.right = left, right
        self.start, self.end = start, end


class EdgeBVH:
    """Median-split hierarchy over edges, bulk-built from EdgeArrays."""

    def __init__(self, edges: EdgeArrays, leaf_size: int = 8):
        self.edges = edges
        self.leaf_size = max(1, int(leaf_size))
        n = len(edges)
        self.size = n
        if n == 0:
            self.nodes: list[_Node] = []
            self.root = -1
            return
        lox = np.minimum(edges.ax, edges.bx)
        hix = np.maximum(edges.ax, edges.bx)
        loy = np.minimum(edges.ay, edges.by)
        hiy = np.maximum(edges.ay, edges.by)
        cx = 0.5 * (lox + hix)
        cy = 0.5 * (loy + hiy)
        perm = np.arange(n, dtype=np.int64)
        self.nodes = []
        self.root = self._build(perm, 0, n, lox, loy, hix, hiy, cx, cy)
        self.perm = perm
        # Permuted copies so leaves slice contiguously.
        self.pax = np.ascontiguousarray(edges.ax[perm])
        self.pay = np.ascontiguousarray(edges.ay[perm])
        self.pbx = np.ascontiguousarray(edges.bx[perm])
        self.pby = np.ascontiguousarray(edges.by[perm])
        self.ppoly = np.ascontiguousarray(edges.poly[perm])
        self.peidx = np.ascontiguousarray(edges.eidx[perm])

    def _build(self, perm, start, end, lox, loy, hix, hiy, cx, cy) -> int:
        sl = perm[start:end]
        x0 = float(np.min(lox[sl]))
        y0 = float(np.min(loy[sl]))
        x1 = float(np.max(hix[sl]))
        y1 = float(np.max(hiy[sl]))
        if end - start <= self.leaf_size:
            self.nodes.append(_Node(x0, y0, x1, y1, -1, -1, start, end))
            return len(self.nodes) - 1
        axis = cx if (x1 - x0) >= (y1 - y0) else cy
        mid = (end - start) // 2
        order = np.argpartition(axis[sl], mid)
        perm[start:end] = sl[order]
        left = self._build(perm, start, start + mid, lox, loy, hix, hiy, cx, cy)
        right = self._build(perm, start + mid, end, lox, loy, hix, hiy, cx, cy)
        self.nodes.append(_Node(x0, y0, x1, y1, left, right, start, end))
        return len(self.nodes) - 1

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    # -- emptiness -------------------------------------------------------

    def segment_hit(self, s: Segment):
        """(polygon id, edge index) of some edge touching s, or None.

        Exact: node filters are conservative, leaf tests use the robust
        intersection predicate, and touching counts as a hit.
        """
        if self.root < 0:
            return None
        sx0, sx1 = min(s.a.x, s.b.x), max(s.a.x, s.b.x)
        sy0, sy1 = min(s.a.y, s.b.y), max(s.a.y, s.b.y)
        dxs, dys = s.b.x - s.a.x, s.b.y - s.a.y
        stack = [self.root]
        nodes = self.nodes
        while stack:
            node = nodes[stack.pop()]
            if sx0 > node.x1 or node.x0 > sx1 or sy0 > node.y1 or node.y0 > sy1:
                continue
            if _box_strictly_one_side(node, s.a.x, s.a.y, dxs, dys):
                continue
            if node.left < 0:
                hit = self._leaf_segment_hit(node, s, sx0, sx1, sy0, sy1)
                if hit is not None:
                    return hit
            else:
                stack.append(node.left)
                stack.append(node.right)
        return None

    def _leaf_segment_hit(self, node, s, sx0, sx1, sy0, sy1):
        for i in range(node.start, node.end):
            ax, ay = self.pax[i], self.pay[i]
            bx, by = self.pbx[i], self.pby[i]
            if max(ax, bx) < sx0 or min(ax, bx) > sx1:
                continue
            if max(ay, by) < sy0 or min(ay, by) > sy1:
                continue
            edge = Segment(Point(float(ax), float(ay)), Point(float(bx), float(by)))
            if segments_intersect(s, edge):
                return int(self.ppoly[i]), int(self.peidx[i])
        return None

    def line_hit(self, line: Line):
        """(polygon id, edge index) of some edge touching the line, or None."""
        if self.root < 0:
            return None
        dx, dy = line.direction
        ax, ay = line.anchor.x, line.anchor.y
        stack = [self.root]
        nodes = self.nodes
        while stack:
            node = nodes[stack.pop()]
            if _box_strictly_one_side(node, ax, ay, dx, dy):
                continue
            if node.left < 0:
                for i in range(node.start, node.end):
                    sa = (self.pax[i] - ax) * dy - (self.pay[i] - ay) * dx
                    sb = (self.pbx[i] - ax) * dy - (self.pby[i] - ay) * dx
                    if sa == 0.0 or sb == 0.0 or (sa > 0.0) != (sb > 0.0):
                        return int(self.ppoly[i]), int(self.peidx[i])
            else:
                stack.append(node.left)
                stack.append(node.right)
        return None

    # -- proximity -------------------------------------------------------

    def nearest_edge(self, q: Point):
        """Exact nearest edge to q: (distance, polygon id, edge index).

        Cross-polygon ties break to the smaller polygon id, then smaller
        edge index (nodes at the best distance are still explored).
        """
        if self.root < 0:
            return None
        best_d = math.inf
        best_poly = best_eidx = -1
        qx, qy = q.x, q.y
        heap = [(_box_dist(self.nodes[self.root], qx, qy), self.root)]
        nodes = self.nodes
        while heap:
            lb, ni = heapq.heappop(heap)
            if lb > best_d:
                break
            node = nodes[ni]
            if node.left < 0:
                d, poly, eidx = self._leaf_nearest(node, qx, qy)
                if d < best_d or (
                    d == best_d and (poly, eidx) < (best_poly, best_eidx)
                ):
                    best_d, best_poly, best_eidx = d, poly, eidx
            else:
                for child in (node.left, node.right):
                    clb = _box_dist(nodes[child], qx, qy)
                    if clb <= best_d:
                        heapq.heappush(heap, (clb, child))
        return best_d, best_poly, best_eidx

    def _leaf_nearest(self, node, qx, qy):
        s, e = node.start, node.end
        d = _point_segment_dists(
            qx, qy, self.pax[s:e], self.pay[s:e], self.pbx[s:e], self.pby[s:e]
        )
        dmin = d.min()
        ties = np.flatnonzero(d == dmin)
        poly = self.ppoly[s:e][ties]
        eidx = self.peidx[s:e][ties]
        k = np.lexsort((eidx, poly))[0]
        return float(dmin), int(poly[k]), int(eidx[k])


def _point_segment_dists(qx, qy, ax, ay, bx, by):
    abx, aby = bx - ax, by - ay
    denom = abx * abx + aby * aby
    t = ((qx - ax) * abx + (qy - ay) * aby) / denom
    np.clip(t, 0.0, 1.0, out=t)
    fx = ax + t * abx
    fy = ay + t * aby
    return np.hypot(qx - fx, qy - fy)


def _box_dist(node, qx, qy):
    dx = max(node.x0 - qx, 0.0, qx - node.x1)
    dy = max(node.y0 - qy, 0.0, qy - node.y1)
    return math.hypot(dx, dy)


def _box_strictly_one_side(node, ax, ay, dx, dy):
    # True only if every corner of the box is strictly on one side of the
    # line through (ax, ay) with direction (dx, dy), with a float guard so
    # uncertain cases are never pruned.
    c1 = (node.x0 - ax) * dy - (node.y0 - ay) * dx
    c2 = (node.x1 - ax) * dy - (node.y0 - ay) * dx
    c3 = (node.x1 - ax) * dy - (node.y1 - ay) * dx
    c4 = (node.x0 - ax) * dy - (node.y1 - ay) * dx
    lo = min(c1, c2, c3, c4)
    hi = max(c1, c2, c3, c4)
    guard = _SIDE_GUARD * (
        (abs(node.x0) + abs(node.x1) + abs(ax)) * abs(dy)
        + (abs(node.y0) + abs(node.y1) + abs(ay)) * abs(dx)
    )
    return lo > guard or hi < -guard
