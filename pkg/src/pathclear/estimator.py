"""Estimator-style facade over the clearance engine.

Fitting builds the scene index; prediction answers clearance verdicts. The
class follows scikit-learn conventions (params in __init__, fit returns
self, attributes learned from data end in an underscore) so it composes
with the wider ecosystem's tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .engine import (
    HAS_CLEARANCE,
    IndexConfig,
    build_scene_index,
    min_clearance,
    path_clearance,
)
from .geometry import PolyPath, Scene, SimplePolygon, validate_scene


def as_scene(obstacles) -> Scene:
    """Coerce a Scene, SimplePolygon iterable, or vertex-array iterable."""
    if isinstance(obstacles, Scene):
        return obstacles
    polys = []
    for i, item in enumerate(obstacles):
        if isinstance(item, SimplePolygon):
            polys.append(item)
        else:
            polys.append(SimplePolygon.from_coords(i, item))
    return validate_scene(polys)


def as_path(path) -> PolyPath:
    if isinstance(path, PolyPath):
        return path
    return PolyPath.from_coords(path)


class ClearanceQueryEngine(BaseEstimator):
    """Decide whether query paths keep clearance c from the fitted obstacles.

    Parameters
    ----------
    c : float, default 1.0
        Clearance threshold used by predict; query() may override per call.
    t_policy : str, default "n^1.5"
        Space budget for the slab structure: "n", "n^<exp>", or
        "n2cap:<bytes>".
    boundary_tol : float
        Distance below which a point counts as touching a boundary.
    verdict_only : bool
        Allow early exit during proximity evaluation once the verdict is
        certain (per-segment output may then be partial).
    workers : int or None
        Evaluate per-segment queries with a thread pool of this size.
    """

    def __init__(
        self,
        c: float = 1.0,
        t_policy: str = "n^1.5",
        boundary_tol: float = 1e-9,
        verdict_only: bool = False,
        workers: int | None = None,
    ):
        self.c = c
        self.t_policy = t_policy
        self.boundary_tol = boundary_tol
        self.verdict_only = verdict_only
        self.workers = workers

    def fit(self, X, y=None):
        """Build the query structures from the obstacle set X."""
        scene = as_scene(X)
        config = IndexConfig(
            t_policy=self.t_policy,
            boundary_tol=self.boundary_tol,
            verdict_only=self.verdict_only,
            workers=self.workers,
        )
        self.index_ = build_scene_index(scene, config)
        self.n_obstacles_ = scene.m
        self.n_vertices_ = scene.n
        return self

    def _check_fitted(self):
        if not hasattr(self, "index_"):
            raise NotFittedError(
                "This ClearanceQueryEngine instance is not fitted yet; "
                "call fit with an obstacle set first."
            )

    def predict(self, X, c: float | None = None) -> np.ndarray:
        """Boolean verdict per path: does it keep clearance >= c?"""
        self._check_fitted()
        c = self.c if c is None else c
        return np.array(
            [
                path_clearance(self.index_, as_path(p), c).verdict == HAS_CLEARANCE
                for p in X
            ],
            dtype=bool,
        )

    def decision_function(self, X, c: float | None = None) -> np.ndarray:
        """Signed margin per path: min clearance minus the threshold."""
        self._check_fitted()
        c = self.c if c is None else c
        return np.array(
            [min_clearance(self.index_, as_path(p)) - c for p in X], dtype=float
        )

    def query(self, path, c: float | None = None):
        """Full ClearanceReport for one path."""
        self._check_fitted()
        return path_clearance(self.index_, as_path(path), self.c if c is None else c)

    def min_clearance_of(self, path) -> float:
        self._check_fitted()
        return min_clearance(self.index_, as_path(path))
