"""Composition layer: build the four structures, answer proximity and
path-clearance queries.

Query order follows the two-phase contract: emptiness first (point location
on path vertices, then segment emptiness), proximity second (nearest site at
vertices, slab queries per segment). The per-segment clearance is
min(endpoint term a, endpoint term b, slab term), which is exactly the
decomposition of the segment-to-polygon distance into its endpoint cases.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .emptiness import LocationKind, PointLocationIndex, SegmentEmptinessIndex
from .errors import EmptyScene, InvalidBudget, InvalidClearance
from .geometry import (
    BOUNDARY_TOL,
    Line,
    Point,
    PolyPath,
    Scene,
    Segment,
    dist_point_line,
    dist_point_segment,
    dist_segment_segment,
)
from .nearest_site import NearestSiteIndex
from .partition_tree import PartitionTree, SlabQueryResult, VertexSet

HAS_CLEARANCE = "HasClearance"
VIOLATED = "Violated"


def parse_t_policy(policy: str, n: int) -> int:
    """Resolve a budget policy string against the scene size.

    Forms: "n", "n^<exp>", "n2cap:<bytes>" (n^2 capped at bytes/16 stored
    hull vertices). The result is clamped to the admissible [n, n^2].
    """
    policy = policy.strip()
    if n <= 0:
        return 1
    if policy == "n":
        t = n
    elif policy.startswith("n^"):
        try:
            exp = float(policy[2:])
        except ValueError as exc:
            raise InvalidBudget(f"bad t policy {policy!r}") from exc
        t = int(round(n**exp))
    elif policy.startswith("n2cap:"):
        try:
            cap_bytes = int(policy[6:])
        except ValueError as exc:
            raise InvalidBudget(f"bad t policy {policy!r}") from exc
        t = min(n * n, max(n, cap_bytes // 16))
    else:
        raise InvalidBudget(f"unknown t policy {policy!r}")
    return max(n, min(t, n * n))


@dataclass(frozen=True)
class IndexConfig:
    t_policy: str = "n^1.5"
    boundary_tol: float = BOUNDARY_TOL
    verdict_only: bool = False
    workers: int | None = None
    d2_leaf_size: int = 8
    d3_leaf_size: int = 8


@dataclass(frozen=True)
class BuildStats:
    build_ms: dict
    t: int
    d1_items: int
    d2_nodes: int
    d3_nodes: int
    d4_nodes: int
    d4_hull_vertices: int


@dataclass(frozen=True)
class SceneIndex:
    scene: Scene
    d1: PointLocationIndex
    d2: SegmentEmptinessIndex
    d3: NearestSiteIndex
    d4: PartitionTree | None
    config: IndexConfig
    stats: BuildStats


@dataclass(frozen=True)
class NearestResult:
    polygon_id: int
    distance: float
    hit: bool
    witness: tuple[Point, Point] | None


@dataclass(frozen=True)
class ClearanceReport:
    verdict: str | None
    c: float | None
    min_clearance: float
    intersection: bool
    witness: tuple[Point, Point, int] | None
    per_segment: tuple[tuple[int, float], ...]

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.min_clearance)


def build_scene_index(scene: Scene, config: IndexConfig | None = None) -> SceneIndex:
    config = config or IndexConfig()
    build_ms = {}
    t0 = time.perf_counter()
    d1 = PointLocationIndex(scene, tol=config.boundary_tol)
    build_ms["d1"] = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    d2 = SegmentEmptinessIndex(scene, leaf_size=config.d2_leaf_size)
    build_ms["d2"] = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    d3 = NearestSiteIndex(scene, leaf_size=config.d3_leaf_size)
    build_ms["d3"] = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    if scene.n > 0:
        t = parse_t_policy(config.t_policy, scene.n)
        d4 = PartitionTree(VertexSet.from_scene(scene), t)
        d4_nodes, d4_hulls = d4.node_count, d4.total_hull_vertices
    else:
        t, d4, d4_nodes, d4_hulls = 0, None, 0, 0
    build_ms["d4"] = (time.perf_counter() - t0) * 1e3
    stats = BuildStats(
        build_ms=build_ms,
        t=t,
        d1_items=d1.item_count,
        d2_nodes=d2.node_count,
        d3_nodes=d3.node_count,
        d4_nodes=d4_nodes,
        d4_hull_vertices=d4_hulls,
    )
    return SceneIndex(scene, d1, d2, d3, d4, config, stats)


def nearest_polygon_to_line(index: SceneIndex, line: Line) -> NearestResult:
    """Closest obstacle to a line: emptiness first, then the vertex minimum."""
    if index.scene.m == 0:
        raise EmptyScene("no obstacles")
    hit = index.d2.line_intersects(line)
    if hit is not None:
        return NearestResult(hit.polygon_id, 0.0, True, None)
    res = index.d4.closest_to_line(line)
    _, foot = dist_point_line(res.point, line)
    return NearestResult(res.polygon_id, res.distance, False, (foot, res.point))


def nearest_polygon_to_segment(index: SceneIndex, s: Segment) -> NearestResult:
    """Closest obstacle to a segment via the two-subproblem decomposition."""
    if index.scene.m == 0:
        raise EmptyScene("no obstacles")
    for endpoint in (s.a, s.b):
        loc = index.d1.locate(endpoint)
        if loc.kind is not LocationKind.FREE_SPACE:
            return NearestResult(loc.polygon_id, 0.0, True, (endpoint, endpoint))
    hit = index.d2.segment_intersects(s)
    if hit is not None:
        edge = index.d3.edge_segment(hit.polygon_id, hit.edge_index)
        _, p_on_s, p_on_obs = dist_segment_segment(s, edge)
        return NearestResult(hit.polygon_id, 0.0, True, (p_on_s, p_on_obs))
    term_a = index.d3.nearest_polygon_to_point(s.a)
    term_b = index.d3.nearest_polygon_to_point(s.b)
    slab = index.d4.closest_in_slab(s)
    return _combine_terms(s, term_a, term_b, slab)


def _combine_terms(s, term_a, term_b, slab: SlabQueryResult) -> NearestResult:
    # Tie order: endpoint a, endpoint b, slab.
    best = NearestResult(term_a.polygon_id, term_a.distance, False, (s.a, term_a.witness))
    if term_b.distance < best.distance:
        best = NearestResult(term_b.polygon_id, term_b.distance, False, (s.b, term_b.witness))
    if slab.found and slab.distance < best.distance:
        _, foot = dist_point_segment(slab.point, s)
        best = NearestResult(slab.polygon_id, slab.distance, False, (foot, slab.point))
    return best


def path_clearance(
    index: SceneIndex, path: PolyPath, c: float, workers: int | None = None
) -> ClearanceReport:
    """Decide whether the path keeps distance >= c from every obstacle."""
    if c is None or not (c > 0.0) or math.isinf(c):
        raise InvalidClearance(f"clearance must be a positive finite value, got {c}")
    return _evaluate(index, path, c, workers=workers)


def min_clearance(index: SceneIndex, path: PolyPath) -> float:
    """Minimum clearance of the path (inf for an empty scene)."""
    return _evaluate(index, path, None, workers=None).min_clearance


def _zero_report(c, witness) -> ClearanceReport:
    return ClearanceReport(
        verdict=None if c is None else VIOLATED,
        c=c,
        min_clearance=0.0,
        intersection=True,
        witness=witness,
        per_segment=(),
    )


def _map(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(item) for item in items]


def _evaluate(index, path, c, workers=None) -> ClearanceReport:
    workers = workers if workers is not None else index.config.workers
    vertices = list(path.vertices)
    segments = path.segments()

    # Step 1: point-locate the path vertices.
    locations = _map(index.d1.locate, vertices, workers)
    for v, loc in zip(vertices, locations):
        if loc.kind is not LocationKind.FREE_SPACE:
            return _zero_report(c, (v, v, loc.polygon_id))

    # Step 2: segment emptiness.
    hits = _map(index.d2.segment_intersects, segments, workers)
    for s, hit in zip(segments, hits):
        if hit is not None:
            edge = index.d3.edge_segment(hit.polygon_id, hit.edge_index)
            _, p_on_path, p_on_obs = dist_segment_segment(s, edge)
            return _zero_report(c, (p_on_path, p_on_obs, hit.polygon_id))

    if index.scene.m == 0:
        per = tuple((i, math.inf) for i in range(len(segments)))
        return ClearanceReport(
            verdict=None if c is None else HAS_CLEARANCE,
            c=c,
            min_clearance=math.inf,
            intersection=False,
            witness=None,
            per_segment=per,
        )

    verdict_only = index.config.verdict_only and c is not None

    # Steps 3 and 4: nearest site at vertices, slab query per segment.
    if verdict_only:
        return _evaluate_verdict_only(index, vertices, segments, c)
    vterms = _map(index.d3.nearest_polygon_to_point, vertices, workers)
    sterms = _map(index.d4.closest_in_slab, segments, workers)

    per_segment = []
    best = None  # (clearance, segment index, witness)
    for i, s in enumerate(segments):
        clearance, witness = _segment_result(s, vterms[i], vterms[i + 1], sterms[i])
        per_segment.append((i, clearance))
        if best is None or clearance < best[0]:
            best = (clearance, i, witness)
    verdict = None if c is None else (HAS_CLEARANCE if best[0] >= c else VIOLATED)
    return ClearanceReport(
        verdict=verdict,
        c=c,
        min_clearance=best[0],
        intersection=best[0] == 0.0,
        witness=best[2],
        per_segment=tuple(per_segment),
    )


def _segment_result(s, term_a, term_b, slab: SlabQueryResult):
    clearance = term_a.distance
    witness = (s.a, term_a.witness, term_a.polygon_id)
    if term_b.distance < clearance:
        clearance = term_b.distance
        witness = (s.b, term_b.witness, term_b.polygon_id)
    if slab.found and slab.distance < clearance:
        clearance = slab.distance
        _, foot = dist_point_segment(slab.point, s)
        witness = (foot, slab.point, slab.polygon_id)
    return clearance, witness


def _evaluate_verdict_only(index, vertices, segments, c) -> ClearanceReport:
    # Early exit as soon as the running minimum falls below c; the reported
    # minimum is then the partial one, which already certifies the verdict.
    vterms = {}
    best = None
    per_segment = []
    for i, s in enumerate(segments):
        for j in (i, i + 1):
            if j not in vterms:
                vterms[j] = index.d3.nearest_polygon_to_point(vertices[j])
        slab = index.d4.closest_in_slab(s)
        clearance, witness = _segment_result(s, vterms[i], vterms[i + 1], slab)
        per_segment.append((i, clearance))
        if best is None or clearance < best[0]:
            best = (clearance, i, witness)
        if best[0] < c:
            return ClearanceReport(
                verdict=VIOLATED,
                c=c,
                min_clearance=best[0],
                intersection=best[0] == 0.0,
                witness=best[2],
                per_segment=tuple(per_segment),
            )
    return ClearanceReport(
        verdict=HAS_CLEARANCE,
        c=c,
        min_clearance=best[0],
        intersection=False,
        witness=best[2],
        per_segment=tuple(per_segment),
    )
