"""Scene, path, and report JSON interchange.

Scene files: {"version": 1, "polygons": [{"id": int, "vertices": [[x, y], ...]}]}
Path files:  {"vertices": [[x, y], ...], "c": optional positive number}

Numbers are emitted with Python's shortest round-trip float representation
(at most 17 significant digits), so load(dump(scene)) is value-identical.
"""

from __future__ import annotations

import json
import math

from .engine import ClearanceReport, NearestResult
from .errors import FileFormatError
from .geometry import PolyPath, Scene, SimplePolygon, validate_scene

SCENE_VERSION = 1


def scene_to_dict(scene: Scene) -> dict:
    return {
        "version": SCENE_VERSION,
        "polygons": [
            {"id": p.id, "vertices": [[v.x, v.y] for v in p.vertices]}
            for p in scene.polygons
        ],
    }


def scene_from_dict(doc: dict) -> Scene:
    if not isinstance(doc, dict):
        raise FileFormatError("scene document must be a JSON object")
    if doc.get("version") != SCENE_VERSION:
        raise FileFormatError(f"unsupported scene version {doc.get('version')!r}", "version")
    raw = doc.get("polygons")
    if not isinstance(raw, list):
        raise FileFormatError("polygons must be a list", "polygons")
    polygons = []
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict) or "id" not in entry or "vertices" not in entry:
            raise FileFormatError("polygon entries need id and vertices", f"polygons[{k}]")
        pid = entry["id"]
        if not isinstance(pid, int):
            raise FileFormatError("polygon id must be an integer", f"polygons[{k}].id")
        verts = _parse_vertices(entry["vertices"], f"polygons[{k}].vertices", minimum=3)
        polygons.append(SimplePolygon.from_coords(pid, verts))
    return validate_scene(polygons)


def _parse_vertices(raw, field, minimum):
    if not isinstance(raw, list) or len(raw) < minimum:
        raise FileFormatError(f"need at least {minimum} vertices", field)
    out = []
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(c, (int, float)) and math.isfinite(c) for c in pair)
        ):
            raise FileFormatError("vertex must be [x, y] with finite numbers", f"{field}[{i}]")
        out.append((float(pair[0]), float(pair[1])))
    return out


def path_to_dict(path: PolyPath, c: float | None = None) -> dict:
    doc = {"vertices": [[v.x, v.y] for v in path.vertices]}
    if c is not None:
        doc["c"] = c
    return doc


def path_from_dict(doc: dict) -> tuple[PolyPath, float | None]:
    if not isinstance(doc, dict):
        raise FileFormatError("path document must be a JSON object")
    verts = _parse_vertices(doc.get("vertices"), "vertices", minimum=2)
    c = doc.get("c")
    if c is not None:
        if not isinstance(c, (int, float)) or not math.isfinite(c) or c <= 0:
            raise FileFormatError("c must be a positive finite number", "c")
        c = float(c)
    return PolyPath.from_coords(verts), c


def load_scene(path: str) -> Scene:
    with open(path, encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"invalid JSON: {exc}") from exc
    return scene_from_dict(doc)


def dump_scene(scene: Scene, path: str):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(scene_to_dict(scene), f)
        f.write("\n")


def load_path(path: str) -> tuple[PolyPath, float | None]:
    with open(path, encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"invalid JSON: {exc}") from exc
    return path_from_dict(doc)


def report_to_dict(report: ClearanceReport) -> dict:
    """ClearanceReport wire format shared by the CLI and the HTTP service."""
    unbounded = report.unbounded
    witness = None
    if report.witness is not None:
        p, q, pid = report.witness
        witness = {
            "path_point": [p.x, p.y],
            "obstacle_point": [q.x, q.y],
            "polygon_id": pid,
        }
    return {
        "verdict": report.verdict,
        "c": report.c,
        "min_clearance": None if unbounded else report.min_clearance,
        "unbounded": unbounded,
        "intersection": report.intersection,
        "witness": witness,
        "per_segment": [
            {"segment": i, "clearance": None if math.isinf(d) else d}
            for i, d in report.per_segment
        ],
    }


def nearest_to_dict(result: NearestResult) -> dict:
    witness = None
    if result.witness is not None:
        p, q = result.witness
        witness = {"query_point": [p.x, p.y], "obstacle_point": [q.x, q.y]}
    return {
        "polygon_id": result.polygon_id,
        "distance": result.distance,
        "hit": result.hit,
        "witness": witness,
    }
