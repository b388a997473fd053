"""Deterministic random scene generation for tests and benchmarks.

Polygons are star-shaped (sorted angles, jittered radii), which makes them
simple by construction; placement rejection-samples disk positions so the
disks, and hence the polygons, stay pairwise disjoint.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PlacementFailure
from .geometry import Scene, SimplePolygon, validate_scene


def generate_scene(
    seed: int,
    m: int,
    target_n: int,
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 100.0, 100.0),
    max_tries: int = 200,
) -> Scene:
    """Scene of m disjoint star polygons with about target_n total vertices."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > 0 and target_n < 3 * m:
        raise ValueError("target_n must be at least 3*m")
    if m == 0:
        return validate_scene([])
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = bbox
    width, height = x1 - x0, y1 - y0
    if width <= 0 or height <= 0:
        raise ValueError("bbox must have positive extent")

    # Disk packing budget: keep total disk area well under the box area.
    r_max = 0.35 * math.sqrt(width * height / m)
    r_min = 0.3 * r_max
    gap = 0.05 * r_max

    centers = np.zeros((m, 2))
    radii = np.zeros(m)
    placed = 0
    for i in range(m):
        r = float(rng.uniform(r_min, r_max))
        if x0 + r >= x1 - r or y0 + r >= y1 - r:
            raise PlacementFailure(
                f"bbox too small for a polygon of radius {r:.3g}"
            )
        ok = False
        for _ in range(max_tries):
            cx = float(rng.uniform(x0 + r, x1 - r))
            cy = float(rng.uniform(y0 + r, y1 - r))
            if placed == 0:
                ok = True
            else:
                d = np.hypot(centers[:placed, 0] - cx, centers[:placed, 1] - cy)
                ok = bool(np.all(d > radii[:placed] + r + gap))
            if ok:
                centers[i] = (cx, cy)
                radii[i] = r
                placed += 1
                break
        if not ok:
            raise PlacementFailure(
                f"could not place polygon {i} of {m} after {max_tries} tries"
            )

    counts = _vertex_counts(rng, m, target_n)
    polygons = []
    for i in range(m):
        polygons.append(
            _star_polygon(rng, i, centers[i], radii[i], counts[i])
        )
    return validate_scene(polygons)


def _vertex_counts(rng, m, target_n):
    base = target_n // m
    counts = np.full(m, base, dtype=np.int64)
    counts[: target_n - base * m] += 1
    counts = np.maximum(counts, 3)
    return counts


def _star_polygon(rng, polygon_id, center, radius, count) -> SimplePolygon:
    # Angular gaps drawn from [0.6, 1.0] shares keep every gap below pi, so
    # the center stays in the kernel and the ring is simple by construction.
    gaps = rng.uniform(0.6, 1.0, count)
    offsets = np.concatenate(([0.0], np.cumsum(gaps[:-1])))
    angles = rng.uniform(0.0, 2.0 * math.pi) + 2.0 * math.pi * offsets / gaps.sum()
    radii = rng.uniform(0.35 * radius, radius, count)
    xs = center[0] + radii * np.cos(angles)
    ys = center[1] + radii * np.sin(angles)
    return SimplePolygon.from_coords(polygon_id, zip(xs, ys))


def random_path(rng, bbox, k_vertices: int, step_frac: float = 0.15):
    """Random-walk polyline with k_vertices vertices inside bbox."""
    x0, y0, x1, y1 = bbox
    span = max(x1 - x0, y1 - y0)
    pts = [(float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))]
    while len(pts) < k_vertices:
        px, py = pts[-1]
        ang = float(rng.uniform(0.0, 2.0 * math.pi))
        step = float(rng.uniform(0.2, 1.0)) * step_frac * span
        q = (
            min(max(px + step * math.cos(ang), x0), x1),
            min(max(py + step * math.sin(ang), y0), y1),
        )
        if q != pts[-1]:
            pts.append(q)
    return pts
