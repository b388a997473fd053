"""HTTP query service over one immutable scene index.

Endpoints:
  GET  /health            -> "ok"
  GET  /scene             -> scene file JSON
  POST /query   {path, c} -> ClearanceReport JSON
  POST /nearest {segment} -> nearest-polygon result JSON

Invalid geometry answers 400 with a structured reason; c <= 0 answers 422.
Requests share the index concurrently; nothing is mutated after startup.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .engine import SceneIndex, nearest_polygon_to_segment, path_clearance
from .errors import ClearanceError, EmptyScene, InvalidClearance
from .geometry import Point, PolyPath, Segment
from .sceneio import nearest_to_dict, report_to_dict, scene_to_dict


class QueryBody(BaseModel):
    path: list[list[float]]
    c: float


class NearestBody(BaseModel):
    segment: list[list[float]]


def _coords(raw, what):
    out = []
    for pair in raw:
        if len(pair) != 2 or not all(math.isfinite(v) for v in pair):
            raise HTTPException(
                status_code=400,
                detail={"error": f"{what} vertices must be finite [x, y] pairs"},
            )
        out.append((pair[0], pair[1]))
    return out


def create_app(index: SceneIndex, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="pathclear", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    scene_doc = scene_to_dict(index.scene)

    @app.get("/health", response_class=PlainTextResponse)
    def health():
        return "ok"

    @app.get("/scene")
    def scene():
        return scene_doc

    @app.post("/query")
    def query(body: QueryBody):
        if not math.isfinite(body.c) or body.c <= 0:
            raise HTTPException(
                status_code=422, detail={"error": "c must be a positive finite number"}
            )
        try:
            path = PolyPath.from_coords(_coords(body.path, "path"))
            report = path_clearance(index, path, body.c)
        except InvalidClearance as exc:
            raise HTTPException(status_code=422, detail={"error": str(exc)}) from exc
        except (ClearanceError, ValueError) as exc:
            raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
        return report_to_dict(report)

    @app.post("/nearest")
    def nearest(body: NearestBody):
        coords = _coords(body.segment, "segment")
        if len(coords) != 2:
            raise HTTPException(
                status_code=400, detail={"error": "segment must be two [x, y] pairs"}
            )
        try:
            s = Segment(Point(*coords[0]), Point(*coords[1]))
            result = nearest_polygon_to_segment(index, s)
        except EmptyScene as exc:
            raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
        except (ClearanceError, ValueError) as exc:
            raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
        return nearest_to_dict(result)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
