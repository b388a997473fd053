"""Nearest obstacle to a query point (D3).

Best-first search over the edge hierarchy with exact distance refinement:
identical answers to the segment-Voronoi reference design, with ties broken
to the smaller polygon id and then the smaller edge index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bvh import EdgeBVH
from .errors import EmptyScene
from .geometry import Point, Scene, Segment, dist_point_segment


@dataclass(frozen=True)
class NearestEdge:
    polygon_id: int
    edge_index: int
    distance: float
    witness: Point
    edge: Segment


class NearestSiteIndex:
    def __init__(self, scene: Scene, leaf_size: int = 8):
        self.scene = scene
        self.bvh = EdgeBVH(scene.edge_arrays(), leaf_size=leaf_size)

    @property
    def node_count(self) -> int:
        return self.bvh.node_count

    def nearest_polygon_to_point(self, q: Point) -> NearestEdge:
        """Exact nearest edge over all polygons, with the closest point on it."""
        found = self.bvh.nearest_edge(q)
        if found is None:
            raise EmptyScene("no obstacles")
        _, poly, eidx = found
        edge = self.edge_segment(poly, eidx)
        d, foot = dist_point_segment(q, edge)
        return NearestEdge(poly, eidx, d, foot, edge)

    def edge_segment(self, poly: int, eidx: int) -> Segment:
        e = self.scene.edge_arrays()
        row = self._row(poly, eidx)
        return Segment(
            Point(float(e.ax[row]), float(e.ay[row])),
            Point(float(e.bx[row]), float(e.by[row])),
        )

    def _row(self, poly: int, eidx: int) -> int:
        lookup = self.__dict__.get("_rows")
        if lookup is None:
            e = self.scene.edge_arrays()
            lookup = {
                (int(p), int(i)): row
                for row, (p, i) in enumerate(zip(e.poly, e.eidx))
            }
            self._rows = lookup
        return lookup[(poly, eidx)]


def build_nearest_site(scene: Scene, leaf_size: int = 8) -> NearestSiteIndex:
    return NearestSiteIndex(scene, leaf_size=leaf_size)
