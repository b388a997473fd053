"""Randomized oracle-equivalence suites, runnable from the CLI.

Each suite compares an indexed operation against its brute-force oracle on
seeded random instances and reports a pass/fail count. Deterministic for a
fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import build_scene_index, min_clearance, nearest_polygon_to_segment
from .generator import generate_scene, random_path
from .geometry import Point, PolyPath, Segment
from .hull import hull_extreme_index
from .oracle import oracle_clearance, oracle_edge_distance, oracle_nearest_polygon_to_segment
from .partition_tree import PartitionTree, VertexSet

REL_TOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    notes: list = field(default_factory=list)

    def record(self, ok: bool, note: str = ""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if note and len(self.notes) < 5:
                self.notes.append(note)


def _close(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=1e-12)


def _random_segment(rng, bbox, max_len_frac=0.4):
    x0, y0, x1, y1 = bbox
    span = max(x1 - x0, y1 - y0)
    while True:
        ax = float(rng.uniform(x0, x1))
        ay = float(rng.uniform(y0, y1))
        ang = float(rng.uniform(0, 2 * math.pi))
        ln = float(rng.uniform(1e-3, max_len_frac)) * span
        bx, by = ax + ln * math.cos(ang), ay + ln * math.sin(ang)
        if (ax, ay) != (bx, by):
            return Segment(Point(ax, ay), Point(bx, by))


def check_path_equivalence(rng, trials) -> SuiteResult:
    result = SuiteResult("path_clearance vs oracle")
    scenes = max(1, trials // 20)
    for _ in range(scenes):
        m = int(rng.integers(1, 30))
        scene = generate_scene(int(rng.integers(2**31)), m, int(rng.integers(3 * m, 40 * m)))
        index = build_scene_index(scene)
        for _ in range(min(20, trials)):
            k = int(rng.integers(2, 20))
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), k))
            got = min_clearance(index, path)
            want = oracle_clearance(scene, path).min_clearance
            result.record(_close(got, want), f"min {got} vs {want}")
    return result


def check_segment_equivalence(rng, trials) -> SuiteResult:
    result = SuiteResult("nearest_polygon_to_segment vs oracle")
    m = 20
    scene = generate_scene(int(rng.integers(2**31)), m, 400)
    index = build_scene_index(scene)
    for _ in range(trials):
        s = _random_segment(rng, (0, 0, 100, 100))
        got = nearest_polygon_to_segment(index, s)
        pid, dist, _ = oracle_nearest_polygon_to_segment(scene, s)
        ok = _close(got.distance, dist)
        result.record(ok, f"dist {got.distance} vs {dist}")
    return result


def check_slab_exactness(rng, trials) -> SuiteResult:
    result = SuiteResult("closest_in_slab vs linear scan")
    n = 500
    pts = rng.uniform(0, 100, (n, 2))
    tree = PartitionTree(VertexSet.from_points(pts), t=n ** 1.5)
    for _ in range(trials):
        s = _random_segment(rng, (0, 0, 100, 100))
        res = tree.closest_in_slab(s)
        ux, uy = s.direction()
        proj = (pts[:, 0] - s.a.x) * ux + (pts[:, 1] - s.a.y) * uy
        mask = (proj >= 0.0) & (proj <= s.length)
        if not mask.any():
            result.record(not res.found, "found on empty slab")
            continue
        signed = ux * (pts[:, 1] - s.a.y) - uy * (pts[:, 0] - s.a.x)
        want = float(np.min(np.abs(signed[mask])))
        result.record(res.found and _close(res.distance, want), f"{res.distance} vs {want}")
    return result


def check_emptiness(rng, trials) -> SuiteResult:
    result = SuiteResult("segment emptiness vs oracle distance")
    scene = generate_scene(int(rng.integers(2**31)), 25, 500)
    index = build_scene_index(scene)
    for _ in range(trials):
        s = _random_segment(rng, (0, 0, 100, 100), max_len_frac=0.8)
        hit = index.d2.segment_intersects(s)
        d = oracle_edge_distance(scene, s)
        result.record((hit is not None) == (d == 0.0), f"hit={hit} d={d}")
    return result


def check_hull_extreme(rng, trials) -> SuiteResult:
    result = SuiteResult("hull extreme point: binary search vs scan")
    for _ in range(trials):
        size = int(rng.integers(3, 200))
        ang = np.sort(rng.uniform(0, 2 * math.pi, size))
        if np.min(np.diff(ang)) < 1e-9:
            continue
        hx, hy = np.cos(ang), np.sin(ang)
        roll = int(rng.integers(size))
        hx, hy = np.roll(hx, roll), np.roll(hy, roll)
        th = float(rng.uniform(0, 2 * math.pi))
        dx, dy = math.cos(th), math.sin(th)
        got = hull_extreme_index(hx, hy, dx, dy)
        want = int(np.argmax(hx * dx + hy * dy))
        result.record(got == want, f"{got} vs {want}")
    return result


def check_point_location(rng, trials) -> SuiteResult:
    result = SuiteResult("locate vs point-in-polygon scan")
    scene = generate_scene(int(rng.integers(2**31)), 25, 500)
    index = build_scene_index(scene)
    from .oracle import containing_polygon
    from .emptiness import LocationKind

    for _ in range(trials):
        p = Point(float(rng.uniform(0, 100)), float(rng.uniform(0, 100)))
        loc = index.d1.locate(p)
        if loc.kind is LocationKind.ON_BOUNDARY:
            result.record(True)
            continue
        want = containing_polygon(scene, p)
        got = loc.polygon_id if loc.kind is LocationKind.INSIDE else None
        result.record(got == want, f"{got} vs {want}")
    return result


ALL_SUITES = [
    check_path_equivalence,
    check_segment_equivalence,
    check_slab_exactness,
    check_emptiness,
    check_hull_extreme,
    check_point_location,
]


def run_checks(seed: int, trials: int):
    """Run every suite; returns (results, all_passed)."""
    rng = np.random.default_rng(seed)
    results = [suite(rng, trials) for suite in ALL_SUITES]
    return results, all(r.failed == 0 for r in results)
