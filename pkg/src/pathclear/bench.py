"""Benchmark harness: build/query timings across scene sizes and budgets.

Emits one CSV row per (scene, configuration) trial plus a brute-force
baseline row per scene. Timings are wall clock; everything else in a row is
deterministic for a given seed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from dataclasses import dataclass

import numpy as np

from .engine import IndexConfig, build_scene_index, min_clearance
from .generator import generate_scene, random_path
from .geometry import PolyPath
from .oracle import oracle_clearance

CSV_HEADER = [
    "n",
    "m",
    "k",
    "seed",
    "structure",
    "t_policy",
    "t",
    "build_ms",
    "mean_query_us",
    "p95_query_us",
    "d1_items",
    "d2_nodes",
    "d3_nodes",
    "d4_nodes",
    "d4_hull_vertices",
    "clearance_digest",
]


@dataclass
class BenchRecord:
    n: int
    m: int
    k: int
    seed: int
    structure: str
    t_policy: str
    t: int
    build_ms: float
    mean_query_us: float
    p95_query_us: float
    d1_items: int
    d2_nodes: int
    d3_nodes: int
    d4_nodes: int
    d4_hull_vertices: int
    clearance_digest: str

    def row(self):
        return [
            self.n,
            self.m,
            self.k,
            self.seed,
            self.structure,
            self.t_policy,
            self.t,
            f"{self.build_ms:.3f}",
            f"{self.mean_query_us:.3f}",
            f"{self.p95_query_us:.3f}",
            self.d1_items,
            self.d2_nodes,
            self.d3_nodes,
            self.d4_nodes,
            self.d4_hull_vertices,
            self.clearance_digest,
        ]


def _digest(values) -> str:
    payload = ",".join(f"{v:.17g}" for v in values).encode()
    return hashlib.sha1(payload).hexdigest()[:12]


def _time_queries(fn, paths):
    times = []
    values = []
    for path in paths:
        t0 = time.perf_counter()
        values.append(fn(path))
        times.append((time.perf_counter() - t0) * 1e6)
    arr = np.array(times)
    return float(arr.mean()), float(np.percentile(arr, 95)), values


def bench_scene(n, seed, t_policies, k=16, paths_per_scene=32, include_baseline=True):
    """Records for one generated scene at every budget policy."""
    m = max(1, n // 20)
    scene = generate_scene(seed, m, n)
    rng = np.random.default_rng(seed + 1)
    paths = [
        PolyPath.from_coords(random_path(rng, scene.bbox(), k + 1))
        for _ in range(paths_per_scene)
    ]
    records = []
    for policy in t_policies:
        config = IndexConfig(t_policy=policy)
        t0 = time.perf_counter()
        index = build_scene_index(scene, config)
        build_ms = (time.perf_counter() - t0) * 1e3
        mean_us, p95_us, values = _time_queries(
            lambda p: min_clearance(index, p), paths
        )
        records.append(
            BenchRecord(
                n=scene.n,
                m=scene.m,
                k=k,
                seed=seed,
                structure="engine",
                t_policy=policy,
                t=index.stats.t,
                build_ms=build_ms,
                mean_query_us=mean_us,
                p95_query_us=p95_us,
                d1_items=index.stats.d1_items,
                d2_nodes=index.stats.d2_nodes,
                d3_nodes=index.stats.d3_nodes,
                d4_nodes=index.stats.d4_nodes,
                d4_hull_vertices=index.stats.d4_hull_vertices,
                clearance_digest=_digest(values),
            )
        )
    if include_baseline:
        mean_us, p95_us, values = _time_queries(
            lambda p: oracle_clearance(scene, p).min_clearance, paths
        )
        records.append(
            BenchRecord(
                n=scene.n,
                m=scene.m,
                k=k,
                seed=seed,
                structure="brute",
                t_policy="",
                t=0,
                build_ms=0.0,
                mean_query_us=mean_us,
                p95_query_us=p95_us,
                d1_items=0,
                d2_nodes=0,
                d3_nodes=0,
                d4_nodes=0,
                d4_hull_vertices=0,
                clearance_digest=_digest(values),
            )
        )
    return records


def run_bench(
    sizes,
    t_policies,
    seeds,
    k=16,
    paths_per_scene=32,
    include_baseline=True,
    out=None,
):
    """Full sweep; writes CSV to `out` (or returns it as a string)."""
    buffer = None
    if out is None:
        buffer = io.StringIO()
        out = buffer
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    records = []
    for n in sizes:
        for seed in seeds:
            for rec in bench_scene(
                n,
                seed,
                t_policies,
                k=k,
                paths_per_scene=paths_per_scene,
                include_baseline=include_baseline,
            ):
                records.append(rec)
                writer.writerow(rec.row())
    if buffer is not None:
        return buffer.getvalue(), records
    return None, records


def loglog_slope(ns, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    ns = np.asarray(ns, dtype=float)
    times = np.asarray(times, dtype=float)
    return float(np.polyfit(np.log(ns), np.log(times), 1)[0])


def mean_query_by_n(records, structure):
    """n -> mean of mean_query_us across seeds for one structure."""
    acc: dict[int, list[float]] = {}
    for rec in records:
        if rec.structure == structure:
            acc.setdefault(rec.n, []).append(rec.mean_query_us)
    return {n: float(np.mean(v)) for n, v in sorted(acc.items())}


def slope_report(records, structure="engine", t_policy=None):
    """Log-log slope of mean query time in n for one structure/policy."""
    filtered = [
        r
        for r in records
        if r.structure == structure and (t_policy is None or r.t_policy == t_policy)
    ]
    by_n = mean_query_by_n(filtered, structure)
    ns = list(by_n.keys())
    if len(ns) < 2:
        raise ValueError("need at least two scene sizes for a slope")
    return loglog_slope(ns, [by_n[n] for n in ns])
