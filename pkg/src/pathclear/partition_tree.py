"""Halfplane-filtered partition tree over obstacle vertices (D4).

Answers: closest point of P inside slab(s) to a query segment s, and closest
point of P to a query line. Nodes carry the convex hull of their canonical
subset; a node entirely inside the slab and strictly on one side of the
segment's supporting line is answered in O(log hull) by an extreme-point
search, a node entirely outside the slab is pruned, anything else recurses.
The space budget t in [n, n^2] sets the leaf capacity ceil(n^2 / t): larger
budgets buy smaller canonical subsets and faster queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBudget
from .geometry import Point, Scene, Segment, Line
from .hull import convex_hull_indices, hull_extreme_index


@dataclass(frozen=True)
class VertexSet:
    """All obstacle vertices, tagged with owning polygon and vertex index."""

    xs: np.ndarray
    ys: np.ndarray
    poly: np.ndarray
    vidx: np.ndarray

    @classmethod
    def from_scene(cls, scene: Scene) -> "VertexSet":
        xs, ys, poly, vidx = scene.vertex_arrays()
        return cls(xs, ys, poly, vidx)

    @classmethod
    def from_points(cls, points) -> "VertexSet":
        pts = np.asarray(points, dtype=np.float64)
        n = len(pts)
        return cls(
            np.ascontiguousarray(pts[:, 0]),
            np.ascontiguousarray(pts[:, 1]),
            np.zeros(n, dtype=np.int64),
            np.arange(n, dtype=np.int64),
        )

    def __len__(self):
        return len(self.xs)


@dataclass(frozen=True)
class SlabQueryResult:
    found: bool
    point: Point | None = None
    polygon_id: int | None = None
    vertex_index: int | None = None
    distance: float = math.inf


_EMPTY = SlabQueryResult(found=False)


class _TreeNode:
    __slots__ = ("x0", "y0", "x1", "y1", "left", "right", "start", "end", "hx", "hy", "hrow")

    def __init__(self, x0, y0, x1, y1, left, right, start, end, hx, hy, hrow):
        self.x0, self.y0, self.x1, self.y1 = x0, y0, x1, y1
        self.left, self.right = left, right
        self.start, self.end = start, end
        self.hx, self.hy, self.hrow = hx, hy, hrow


class PartitionTree:
    def __init__(self, points: VertexSet, t: float):
        n = len(points)
        if n < 1:
            raise InvalidBudget("vertex set must be non-empty")
        if not (n <= t <= n * n):
            raise InvalidBudget(f"budget t={t} outside [n, n^2] = [{n}, {n * n}]")
        self.points = points
        self.t = float(t)
        self.leaf_cap = max(1, math.ceil(n * n / t))
        self.total_hull_vertices = 0
        perm = np.arange(n, dtype=np.int64)
        self.nodes: list[_TreeNode] = []
        self.root = self._build(perm, 0, n, 0)
        self.perm = perm
        self.px = np.ascontiguousarray(points.xs[perm])
        self.py = np.ascontiguousarray(points.ys[perm])
        self.ppoly = np.ascontiguousarray(points.poly[perm])
        self.pvidx = np.ascontiguousarray(points.vidx[perm])

    def _build(self, perm, start, end, depth) -> int:
        sl = perm[start:end]
        xs = self.points.xs[sl]
        ys = self.points.ys[sl]
        hull_local = convex_hull_indices(xs, ys)
        hx = np.ascontiguousarray(xs[hull_local])
        hy = np.ascontiguousarray(ys[hull_local])
        hrow = np.ascontiguousarray(sl[hull_local])
        self.total_hull_vertices += len(hull_local)
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        if end - start <= self.leaf_cap:
            self.nodes.append(
                _TreeNode(x0, y0, x1, y1, -1, -1, start, end, hx, hy, hrow)
            )
            return len(self.nodes) - 1
        # Median split, alternating by coordinate.
        axis = xs if depth % 2 == 0 else ys
        mid = (end - start) // 2
        order = np.argpartition(axis, mid)
        perm[start:end] = sl[order]
        left = self._build(perm, start, start + mid, depth + 1)
        right = self._build(perm, start + mid, end, depth + 1)
        self.nodes.append(
            _TreeNode(x0, y0, x1, y1, left, right, start, end, hx, hy, hrow)
        )
        return len(self.nodes) - 1

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    # -- queries ----------------------------------------------------------

    def closest_in_slab(self, s: Segment) -> SlabQueryResult:
        """Exact minimum distance from s to P restricted to the closed slab(s).

        For points inside the slab, distance to s equals perpendicular
        distance to the supporting line, which is what the hull extreme-point
        shortcut evaluates.
        """
        ax, ay = s.a.x, s.a.y
        ux, uy = s.direction()
        length = s.length
        return self._query(ax, ay, ux, uy, length)

    def closest_to_line(self, line: Line) -> SlabQueryResult:
        """Exact minimum perpendicular distance from the line over all of P."""
        ux, uy = line.direction
        return self._query(line.anchor.x, line.anchor.y, ux, uy, None)

    def _query(self, ax, ay, ux, uy, length):
        # length None: line query, both slab filters vacuous.
        best_d = math.inf
        best_row = -1
        nodes = self.nodes
        stack = [self.root]
        while stack:
            node = nodes[stack.pop()]
            tx0 = ux * (node.x0 - ax)
            tx1 = ux * (node.x1 - ax)
            ty0 = uy * (node.y0 - ay)
            ty1 = uy * (node.y1 - ay)
            cx0 = -uy * (node.x0 - ax)
            cx1 = -uy * (node.x1 - ax)
            cy0 = ux * (node.y0 - ay)
            cy1 = ux * (node.y1 - ay)
            smin = min(cx0, cx1) + min(cy0, cy1)
            smax = max(cx0, cx1) + max(cy0, cy1)
            if length is not None:
                pmin = min(tx0, tx1) + min(ty0, ty1)
                pmax = max(tx0, tx1) + max(ty0, ty1)
                if pmax < 0.0 or pmin > length:
                    continue  # entirely outside the closed slab
                inside = pmin >= 0.0 and pmax <= length
                lb_axis = max(0.0, -pmax, pmin - length)
            else:
                inside = True
                lb_axis = 0.0
            lb_side = smin if smin > 0.0 else (-smax if smax < 0.0 else 0.0)
            if max(lb_axis, lb_side) > best_d:
                continue
            if inside and (smin > 0.0 or smax < 0.0):
                # Whole subset in slab, strictly one side: extreme point
                # toward the supporting line is the subset's closest point.
                if smin > 0.0:
                    k = hull_extreme_index(node.hx, node.hy, uy, -ux)
                else:
                    k = hull_extreme_index(node.hx, node.hy, -uy, ux)
                vx, vy = node.hx[k], node.hy[k]
                d = abs(ux * (vy - ay) - uy * (vx - ax))
                if d < best_d:
                    best_d = d
                    best_row = int(node.hrow[k])
                continue
            if node.left < 0:
                res = self._scan_leaf(node, ax, ay, ux, uy, length, best_d)
                if res is not None and res[0] < best_d:
                    best_d, best_row = res
            else:
                stack.append(node.left)
                stack.append(node.right)
        if best_row < 0:
            return _EMPTY
        x = float(self.points.xs[best_row])
        y = float(self.points.ys[best_row])
        return SlabQueryResult(
            found=True,
            point=Point(x, y),
            polygon_id=int(self.points.poly[best_row]),
            vertex_index=int(self.points.vidx[best_row]),
            distance=float(best_d),
        )

    def _scan_leaf(self, node, ax, ay, ux, uy, length, best_d):
        s, e = node.start, node.end
        xs = self.px[s:e]
        ys = self.py[s:e]
        signed = ux * (ys - ay) - uy * (xs - ax)
        d = np.abs(signed)
        if length is not None:
            proj = ux * (xs - ax) + uy * (ys - ay)
            d = np.where((proj >= 0.0) & (proj <= length), d, np.inf)
        j = int(np.argmin(d))
        dj = float(d[j])
        if not math.isfinite(dj):
            return None
        return dj, int(self.perm[s + j])


def build_partition_tree(points: VertexSet, t: float) -> PartitionTree:
    return PartitionTree(points, t)
