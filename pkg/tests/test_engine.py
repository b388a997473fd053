import math

import numpy as np
import pytest

from pathclear.engine import (
    HAS_CLEARANCE,
    VIOLATED,
    IndexConfig,
    build_scene_index,
    min_clearance,
    nearest_polygon_to_line,
    nearest_polygon_to_segment,
    parse_t_policy,
    path_clearance,
)
from pathclear.errors import EmptyScene, InvalidBudget, InvalidClearance
from pathclear.geometry import Line, Point, PolyPath, Segment, validate_scene
from pathclear.generator import generate_scene, random_path
from pathclear.oracle import oracle_clearance, oracle_nearest_polygon_to_segment

from conftest import square


@pytest.fixture(scope="module")
def medium_index():
    scene = generate_scene(71, 25, 500)
    return scene, build_scene_index(scene)


class TestTPolicy:
    def test_forms(self):
        assert parse_t_policy("n", 100) == 100
        assert parse_t_policy("n^1.5", 100) == 1000
        assert parse_t_policy("n^2", 100) == 10000
        assert parse_t_policy("n2cap:16000", 100) == 1000
        assert parse_t_policy("n2cap:1", 100) == 100  # clamped up to n

    def test_bad_policy(self):
        with pytest.raises(InvalidBudget):
            parse_t_policy("quadratic", 10)
        with pytest.raises(InvalidBudget):
            parse_t_policy("n^x", 10)


class TestBuild:
    def test_empty_scene_unbounded_clearance(self):
        index = build_scene_index(validate_scene([]))
        path = PolyPath.from_coords([(0, 0), (10, 10)])
        assert math.isinf(min_clearance(index, path))
        report = path_clearance(index, path, 123.0)
        assert report.verdict == HAS_CLEARANCE and report.unbounded
        assert report.witness is None

    def test_single_square_consistent(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        assert index.stats.d1_items == 1
        assert index.stats.d2_nodes >= 1
        assert index.stats.d4_hull_vertices >= 4

    def test_budget_recorded(self):
        scene = generate_scene(73, 20, 1000)
        index = build_scene_index(scene, IndexConfig(t_policy="n^1.5"))
        n = scene.n
        assert index.stats.t == parse_t_policy("n^1.5", n)
        assert index.d4.total_hull_vertices <= 4 * index.stats.t


class TestNearestPolygonToLine:
    def test_separating_line(self):
        scene = validate_scene([square(0, 0, 0), square(1, 3.5, 0)])
        index = build_scene_index(scene)
        res = nearest_polygon_to_line(index, Line(Point(2, 0), (0.0, 1.0)))
        assert not res.hit
        assert res.polygon_id == 0 and res.distance == 1.0

    def test_line_through_square(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_line(index, Line(Point(0, 2.5), (1.0, 0.0)))
        assert res.hit and res.distance == 0.0 and res.polygon_id == 0

    def test_tangent_line_distance_zero(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_line(index, Line(Point(0, 2), (1.0, 0.0)))
        assert res.distance == 0.0

    def test_empty_scene(self):
        index = build_scene_index(validate_scene([]))
        with pytest.raises(EmptyScene):
            nearest_polygon_to_line(index, Line(Point(0, 0), (1.0, 0.0)))

    def test_matches_vertex_scan(self, medium_index, rng):
        scene, index = medium_index
        e = scene.edge_arrays()
        for _ in range(200):
            anchor = Point(rng.uniform(0, 100), rng.uniform(0, 100))
            theta = rng.uniform(0, 2 * math.pi)
            line = Line(anchor, (math.cos(theta), math.sin(theta)))
            res = nearest_polygon_to_line(index, line)
            if res.hit:
                continue
            dx, dy = line.direction
            d = np.abs((e.ax - anchor.x) * dy - (e.ay - anchor.y) * dx)
            assert math.isclose(res.distance, float(d.min()), rel_tol=1e-9, abs_tol=1e-12)


class TestNearestPolygonToSegment:
    def test_slab_term_corner(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_segment(index, Segment(Point(0, 0), Point(5, 0)))
        assert res.distance == 2.0
        assert (res.witness[1].x, res.witness[1].y) == (2.0, 2.0)

    def test_endpoint_term_corner(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_segment(index, Segment(Point(0, 4), Point(1, 4)))
        assert math.isclose(res.distance, math.sqrt(2), rel_tol=1e-12)

    def test_hit_via_point_location(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_segment(index, Segment(Point(2.5, 2.5), Point(2.6, 2.6)))
        assert res.hit and res.distance == 0.0 and res.polygon_id == 0

    def test_hit_via_crossing(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        res = nearest_polygon_to_segment(index, Segment(Point(0, 2.5), Point(5, 2.5)))
        assert res.hit and res.distance == 0.0

    def test_empty_scene(self):
        index = build_scene_index(validate_scene([]))
        with pytest.raises(EmptyScene):
            nearest_polygon_to_segment(index, Segment(Point(0, 0), Point(1, 1)))

    def test_matches_oracle_random(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(500):
            p = rng.uniform(-5, 105, 4)
            if (p[0], p[1]) == (p[2], p[3]):
                continue
            s = Segment(Point(p[0], p[1]), Point(p[2], p[3]))
            got = nearest_polygon_to_segment(index, s)
            pid, dist, _ = oracle_nearest_polygon_to_segment(scene, s)
            assert math.isclose(got.distance, dist, rel_tol=1e-9, abs_tol=1e-12)

    def test_decomposition_identity(self, medium_index, rng):
        # For a non-intersecting segment the combined distance is the
        # minimum of the three terms, each of which is an upper bound.
        scene, index = medium_index
        for _ in range(200):
            p = rng.uniform(0, 100, 4)
            if (p[0], p[1]) == (p[2], p[3]):
                continue
            s = Segment(Point(p[0], p[1]), Point(p[2], p[3]))
            res = nearest_polygon_to_segment(index, s)
            if res.hit:
                continue
            term_a = index.d3.nearest_polygon_to_point(s.a).distance
            term_b = index.d3.nearest_polygon_to_point(s.b).distance
            slab = index.d4.closest_in_slab(s)
            terms = [term_a, term_b] + ([slab.distance] if slab.found else [])
            assert math.isclose(res.distance, min(terms), rel_tol=1e-12, abs_tol=1e-12)
            for term in terms:
                assert term >= res.distance - 1e-12


class TestPathClearance:
    def test_square_path_examples(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        path = PolyPath.from_coords([(0, 0), (5, 0), (5, 5)])
        report = path_clearance(index, path, 1.0)
        assert report.verdict == HAS_CLEARANCE and report.min_clearance == 2.0
        report = path_clearance(index, path, 2.5)
        assert report.verdict == VIOLATED and report.min_clearance == 2.0

    def test_threshold_is_inclusive(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        path = PolyPath.from_coords([(0, 0), (5, 0), (5, 5)])
        assert path_clearance(index, path, 2.0).verdict == HAS_CLEARANCE
        assert path_clearance(index, path, math.nextafter(2.0, 3.0)).verdict == VIOLATED

    def test_crossing_path_sets_flag(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        report = path_clearance(index, PolyPath.from_coords([(0, 2.5), (5, 2.5)]), 0.5)
        assert report.verdict == VIOLATED
        assert report.min_clearance == 0.0 and report.intersection

    def test_invalid_clearance(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        path = PolyPath.from_coords([(0, 0), (1, 0)])
        for bad in (0.0, -1.0, math.inf):
            with pytest.raises(InvalidClearance):
                path_clearance(index, path, bad)

    def test_single_segment_equals_nearest_query(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(100):
            p = rng.uniform(0, 100, 4)
            if (p[0], p[1]) == (p[2], p[3]):
                continue
            path = PolyPath.from_coords([(p[0], p[1]), (p[2], p[3])])
            got = min_clearance(index, path)
            res = nearest_polygon_to_segment(index, Segment(*path.vertices))
            assert math.isclose(got, res.distance, rel_tol=1e-12, abs_tol=1e-12)

    def test_repeated_corridor_same_as_simple_subpath(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        once = min_clearance(index, PolyPath.from_coords([(0, 0), (0, 5)]))
        repeated = min_clearance(
            index, PolyPath.from_coords([(0, 0), (0, 5), (0, 0), (0, 5)])
        )
        assert once == repeated

    def test_matches_oracle_random(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(150):
            k = int(rng.integers(2, 12))
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), k))
            got = min_clearance(index, path)
            want = oracle_clearance(scene, path).min_clearance
            if want == 0.0:
                assert got == 0.0
            else:
                assert math.isclose(got, want, rel_tol=1e-9)

    def test_zero_cases_confirmed_by_oracle(self, medium_index, rng):
        scene, index = medium_index
        zeros = 0
        for _ in range(300):
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), 4))
            report = path_clearance(index, path, 1e-6)
            if report.intersection:
                zeros += 1
                assert oracle_clearance(scene, path).min_clearance == 0.0
        assert zeros > 0

    def test_per_segment_minimum_is_min_clearance(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(50):
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), 6))
            report = path_clearance(index, path, 0.1)
            if not report.per_segment:
                continue
            assert report.min_clearance == min(d for _, d in report.per_segment)

    def test_concurrent_equals_sequential(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(25):
            k = int(rng.integers(2, 10))
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), k))
            seq = path_clearance(index, path, 0.5, workers=None)
            par = path_clearance(index, path, 0.5, workers=4)
            assert seq == par

    def test_verdict_only_mode_agrees(self, rng):
        scene = generate_scene(79, 15, 300)
        full = build_scene_index(scene)
        fast = build_scene_index(scene, IndexConfig(verdict_only=True))
        for _ in range(60):
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), 8))
            c = float(rng.uniform(0.01, 20.0))
            a = path_clearance(full, path, c)
            b = path_clearance(fast, path, c)
            assert a.verdict == b.verdict
            if b.verdict == HAS_CLEARANCE:
                assert a.min_clearance == b.min_clearance

    def test_witness_realizes_min(self, medium_index, rng):
        scene, index = medium_index
        for _ in range(60):
            path = PolyPath.from_coords(random_path(rng, (0, 0, 100, 100), 5))
            report = path_clearance(index, path, 0.25)
            if report.witness is None:
                continue
            p, q, _ = report.witness
            assert math.isclose(
                math.hypot(p.x - q.x, p.y - q.y),
                report.min_clearance,
                rel_tol=1e-9,
                abs_tol=1e-12,
            )
