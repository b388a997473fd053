import json

import pytest

from pathclear.engine import build_scene_index, min_clearance, path_clearance
from pathclear.errors import FileFormatError, PolygonsIntersect
from pathclear.geometry import PolyPath, validate_scene
from pathclear.generator import generate_scene
from pathclear.sceneio import (
    dump_scene,
    load_path,
    load_scene,
    path_from_dict,
    path_to_dict,
    report_to_dict,
    scene_from_dict,
    scene_to_dict,
)

from conftest import square


class TestSceneRoundTrip:
    def test_value_identical(self):
        scene = generate_scene(3, 6, 40)
        doc = scene_to_dict(scene)
        again = scene_to_dict(scene_from_dict(doc))
        assert doc == again
        assert json.dumps(doc) == json.dumps(again)

    def test_awkward_floats_roundtrip(self):
        scene = validate_scene(
            [square(0, 0.1, 0.2, side=1e-3), square(1, 1 / 3, 5.0, side=0.7)]
        )
        doc = json.loads(json.dumps(scene_to_dict(scene)))
        assert scene_to_dict(scene_from_dict(doc)) == scene_to_dict(scene)

    def test_cw_input_canonicalized_once(self):
        doc = {
            "version": 1,
            "polygons": [{"id": 0, "vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]}],
        }
        once = scene_to_dict(scene_from_dict(doc))
        twice = scene_to_dict(scene_from_dict(once))
        assert once == twice

    def test_file_roundtrip(self, tmp_path):
        scene = generate_scene(5, 4, 20)
        p = tmp_path / "scene.json"
        dump_scene(scene, str(p))
        dump_scene(load_scene(str(p)), str(tmp_path / "scene2.json"))
        assert p.read_bytes() == (tmp_path / "scene2.json").read_bytes()


class TestSceneErrors:
    def test_bad_version(self):
        with pytest.raises(FileFormatError) as err:
            scene_from_dict({"version": 99, "polygons": []})
        assert err.value.field == "version"

    def test_missing_polygons(self):
        with pytest.raises(FileFormatError):
            scene_from_dict({"version": 1})

    def test_bad_vertex(self):
        doc = {"version": 1, "polygons": [{"id": 0, "vertices": [[0, 0], [1], [1, 1]]}]}
        with pytest.raises(FileFormatError) as err:
            scene_from_dict(doc)
        assert "vertices[1]" in str(err.value)

    def test_non_integer_id(self):
        doc = {"version": 1, "polygons": [{"id": "a", "vertices": [[0, 0], [1, 0], [0, 1]]}]}
        with pytest.raises(FileFormatError):
            scene_from_dict(doc)

    def test_geometry_errors_propagate(self):
        doc = {
            "version": 1,
            "polygons": [
                {"id": 0, "vertices": [[0, 0], [2, 0], [2, 2], [0, 2]]},
                {"id": 1, "vertices": [[1, 1], [3, 1], [3, 3], [1, 3]]},
            ],
        }
        with pytest.raises(PolygonsIntersect):
            scene_from_dict(doc)


class TestPathIO:
    def test_roundtrip_with_c(self):
        path = PolyPath.from_coords([(0, 0), (1.5, 2.25)])
        doc = path_to_dict(path, c=0.75)
        again, c = path_from_dict(doc)
        assert again == path and c == 0.75

    def test_c_optional(self):
        _, c = path_from_dict({"vertices": [[0, 0], [1, 1]]})
        assert c is None

    def test_bad_c(self):
        with pytest.raises(FileFormatError):
            path_from_dict({"vertices": [[0, 0], [1, 1]], "c": -2})

    def test_too_few_vertices(self):
        with pytest.raises(FileFormatError):
            path_from_dict({"vertices": [[0, 0]]})

    def test_load_path_file(self, tmp_path):
        p = tmp_path / "path.json"
        p.write_text('{"vertices": [[0,0],[3,4]], "c": 2}')
        path, c = load_path(str(p))
        assert path.k == 2 and c == 2.0

    def test_malformed_json(self, tmp_path):
        p = tmp_path / "path.json"
        p.write_text("{nope")
        with pytest.raises(FileFormatError):
            load_path(str(p))


class TestReportSerialization:
    def test_regular_report(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        report = path_clearance(index, PolyPath.from_coords([(0, 0), (5, 0)]), 1.0)
        doc = report_to_dict(report)
        assert doc["verdict"] == "HasClearance"
        assert doc["min_clearance"] == 2.0 and doc["unbounded"] is False
        assert doc["witness"]["obstacle_point"] == [2.0, 2.0]
        assert doc["per_segment"] == [{"segment": 0, "clearance": 2.0}]
        json.dumps(doc)

    def test_unbounded_sentinel_not_float_inf(self):
        index = build_scene_index(validate_scene([]))
        report = path_clearance(index, PolyPath.from_coords([(0, 0), (1, 1)]), 1.0)
        doc = report_to_dict(report)
        assert doc["unbounded"] is True and doc["min_clearance"] is None
        assert doc["per_segment"][0]["clearance"] is None
        text = json.dumps(doc)
        assert "Infinity" not in text

    def test_intersection_report(self, unit_square_scene):
        index = build_scene_index(unit_square_scene)
        report = path_clearance(index, PolyPath.from_coords([(0, 2.5), (5, 2.5)]), 1.0)
        doc = report_to_dict(report)
        assert doc["intersection"] is True and doc["min_clearance"] == 0.0
        assert doc["per_segment"] == []
