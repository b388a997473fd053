"""Brute-force ground truth: no preprocessing, every pair inspected.

Every index structure is tested against this module, so it stays a direct
transcription of the definitions: distance from each path segment to each
obstacle edge, zero on any containment or crossing. The whole
(segment, edge) matrix is evaluated in one broadcasted numpy pass, which
keeps the work honestly Theta(n*k) while staying benchmark-viable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyScene
from .geometry import (
    Point,
    PolyPath,
    Scene,
    Segment,
    dist_segment_segment,
    segments_intersect,
)

_GUARD = 16.0 * 2.0**-53


@dataclass(frozen=True)
class OracleReport:
    min_clearance: float
    witness: tuple[Point, Point, int] | None
    per_segment: tuple[tuple[int, float, int | None], ...]


def _clipped_foot_dist(px, py, ax, ay, bx, by):
    # Distance from points to segments, all broadcastable arrays.
    abx, aby = bx - ax, by - ay
    t = ((px - ax) * abx + (py - ay) * aby) / (abx * abx + aby * aby)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (ax + t * abx), py - (ay + t * aby))


def _cross_guarded(ax, ay, bx, by, px, py):
    t1 = (bx - ax) * (py - ay)
    t2 = (by - ay) * (px - ax)
    det = t1 - t2
    unsure = np.abs(det) <= _GUARD * (np.abs(t1) + np.abs(t2))
    return det, unsure


def _pairwise_distances(sax, say, sbx, sby, edges):
    """(k, n) matrix of segment-to-edge distances; exact zeros on contact.

    Segment endpoints arrive as (k, 1) columns; edge arrays broadcast along
    the rows. Uncertain orientation signs are re-decided exactly. Large
    matrices are assembled in edge blocks so temporaries stay cache-sized.
    """
    k = len(sax)
    n = len(edges)
    block = max(1024, (1 << 19) // max(k, 1))
    if n > block:
        out = np.empty((k, n))
        for lo in range(0, n, block):
            hi = min(lo + block, n)
            out[:, lo:hi] = _pairwise_block(
                sax, say, sbx, sby, edges, slice(lo, hi)
            )
        return out
    return _pairwise_block(sax, say, sbx, sby, edges, slice(0, n))


def _pairwise_block(sax, say, sbx, sby, edges, sl):
    ax, ay, bx, by = edges.ax[sl], edges.ay[sl], edges.bx[sl], edges.by[sl]
    d = np.minimum(
        np.minimum(
            _clipped_foot_dist(sax, say, ax, ay, bx, by),
            _clipped_foot_dist(sbx, sby, ax, ay, bx, by),
        ),
        np.minimum(
            _clipped_foot_dist(ax, ay, sax, say, sbx, sby),
            _clipped_foot_dist(bx, by, sax, say, sbx, sby),
        ),
    )
    o1, u1 = _cross_guarded(sax, say, sbx, sby, ax, ay)
    o2, u2 = _cross_guarded(sax, say, sbx, sby, bx, by)
    o3, u3 = _cross_guarded(ax, ay, bx, by, sax, say)
    o4, u4 = _cross_guarded(ax, ay, bx, by, sbx, sby)
    crossing = ((o1 > 0) != (o2 > 0)) & ((o3 > 0) != (o4 > 0))
    unsure = u1 | u2 | u3 | u4
    if np.any(unsure):
        sax_b = np.broadcast_to(sax, crossing.shape)
        say_b = np.broadcast_to(say, crossing.shape)
        sbx_b = np.broadcast_to(sbx, crossing.shape)
        sby_b = np.broadcast_to(sby, crossing.shape)
        rows, cols = np.nonzero(unsure)
        for i, j in zip(rows, cols):
            seg = Segment(
                Point(float(sax_b[i, j]), float(say_b[i, j])),
                Point(float(sbx_b[i, j]), float(sby_b[i, j])),
            )
            edge = Segment(
                Point(float(ax[j]), float(ay[j])), Point(float(bx[j]), float(by[j]))
            )
            crossing[i, j] = segments_intersect(seg, edge)
    d[crossing] = 0.0
    return d


def _poly_slices(edges):
    """Start offsets of each polygon's run in the sorted edge arrays."""
    if len(edges) == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    change = np.flatnonzero(np.diff(edges.poly)) + 1
    starts = np.concatenate(([0], change))
    ids = edges.poly[starts]
    return starts, ids


def _vertex_containment(scene: Scene, xs, ys):
    """For each query point, the id of the polygon strictly containing it."""
    edges = scene.edge_arrays()
    kv = len(xs)
    out: list[int | None] = [None] * kv
    if len(edges) == 0:
        return out
    px = np.asarray(xs)[:, None]
    py = np.asarray(ys)[:, None]
    vy, wy = edges.ay[None, :], edges.by[None, :]
    straddle = (vy <= py) != (wy <= py)
    denom = np.where(wy == vy, 1.0, wy - vy)
    t = (py - vy) / denom
    cross_x = edges.ax[None, :] + t * (edges.bx - edges.ax)[None, :]
    crossed = straddle & (cross_x > px)
    starts, ids = _poly_slices(edges)
    counts = np.add.reduceat(crossed.astype(np.int64), starts, axis=1)
    odd = counts % 2 == 1
    for i in range(kv):
        hits = np.flatnonzero(odd[i])
        if hits.size:
            out[i] = int(ids[hits[0]])
    return out


def containing_polygon(scene: Scene, p: Point) -> int | None:
    """Id of the polygon strictly containing p, else None (crossing parity)."""
    return _vertex_containment(scene, [p.x], [p.y])[0]


def oracle_clearance(scene: Scene, path: PolyPath) -> OracleReport:
    """Minimum clearance of the path by exhaustive pairwise inspection."""
    k = path.k - 1
    if scene.m == 0:
        per = tuple((i, math.inf, None) for i in range(k))
        return OracleReport(math.inf, None, per)
    edges = scene.edge_arrays()
    vx = [v.x for v in path.vertices]
    vy = [v.y for v in path.vertices]
    inside = _vertex_containment(scene, vx, vy)

    sax = np.array(vx[:-1])[:, None]
    say = np.array(vy[:-1])[:, None]
    sbx = np.array(vx[1:])[:, None]
    sby = np.array(vy[1:])[:, None]
    d = _pairwise_distances(sax, say, sbx, sby, edges)

    per_segment = []
    best = (math.inf, -1, -1)  # distance, segment index, edge row
    for i in range(k):
        if inside[i] is not None or inside[i + 1] is not None:
            pid = inside[i] if inside[i] is not None else inside[i + 1]
            per_segment.append((i, 0.0, pid))
            if best[0] > 0.0:
                best = (0.0, i, -1)
            continue
        j = int(np.argmin(d[i]))
        dj = float(d[i, j])
        per_segment.append((i, dj, int(edges.poly[j])))
        if dj < best[0]:
            best = (dj, i, j)

    dist, i, j = best
    if j == -1:
        # A path vertex sits strictly inside an obstacle.
        vi = next(idx for idx, pid in enumerate(inside) if pid is not None)
        v = path.vertices[vi]
        witness = (v, v, inside[vi])
    else:
        s = path.segments()[i]
        edge = Segment(
            Point(float(edges.ax[j]), float(edges.ay[j])),
            Point(float(edges.bx[j]), float(edges.by[j])),
        )
        _, p_on_path, p_on_obs = dist_segment_segment(s, edge)
        witness = (p_on_path, p_on_obs, int(edges.poly[j]))
    return OracleReport(dist, witness, tuple(per_segment))


def _segment_row(s: Segment, edges):
    return _pairwise_distances(
        np.array([[s.a.x]]),
        np.array([[s.a.y]]),
        np.array([[s.b.x]]),
        np.array([[s.b.y]]),
        edges,
    )[0]


def oracle_nearest_polygon_to_segment(scene: Scene, s: Segment):
    """Exhaustive nearest obstacle to a segment: (id, distance, witness pair).

    Region distance: a segment with an endpoint inside an obstacle reports
    that obstacle at distance zero. Equidistant ties give the smallest id.
    """
    if scene.m == 0:
        raise EmptyScene("no obstacles")
    inside = _vertex_containment(scene, [s.a.x, s.b.x], [s.a.y, s.b.y])
    for endpoint, pid in zip((s.a, s.b), inside):
        if pid is not None:
            return pid, 0.0, (endpoint, endpoint)
    edges = scene.edge_arrays()
    d = _segment_row(s, edges)
    j = int(np.argmin(d))
    edge = Segment(
        Point(float(edges.ax[j]), float(edges.ay[j])),
        Point(float(edges.bx[j]), float(edges.by[j])),
    )
    _, p_on_s, p_on_obs = dist_segment_segment(s, edge)
    return int(edges.poly[j]), float(d[j]), (p_on_s, p_on_obs)


def oracle_edge_distance(scene: Scene, s: Segment) -> float:
    """Minimum distance from s to any obstacle edge (boundary only)."""
    edges = scene.edge_arrays()
    if len(edges) == 0:
        return math.inf
    return float(np.min(_segment_row(s, edges)))
