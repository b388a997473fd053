"""pathclear: preprocess polygonal obstacle scenes, answer path-clearance
queries in time sublinear in the obstacle complexity."""

__version__ = "0.1.0"

from .engine import (
    HAS_CLEARANCE,
    VIOLATED,
    ClearanceReport,
    IndexConfig,
    NearestResult,
    SceneIndex,
    build_scene_index,
    min_clearance,
    nearest_polygon_to_line,
    nearest_polygon_to_segment,
    parse_t_policy,
    path_clearance,
)
from .errors import (
    ClearanceError,
    DegenerateVertexRun,
    EmptyScene,
    FileFormatError,
    InvalidBudget,
    InvalidClearance,
    InvalidPath,
    NonSimplePolygon,
    PlacementFailure,
    PolygonsIntersect,
    SceneValidationError,
)
from .estimator import ClearanceQueryEngine, as_path, as_scene
from .generator import generate_scene
from .geometry import (
    Line,
    Point,
    PolyPath,
    Scene,
    Segment,
    SimplePolygon,
    Slab,
    dist_point_line,
    dist_point_segment,
    dist_segment_segment,
    orientation,
    slab_of,
    validate_scene,
)
from .oracle import OracleReport, oracle_clearance, oracle_nearest_polygon_to_segment
from .partition_tree import PartitionTree, SlabQueryResult, VertexSet, build_partition_tree

__all__ = [
    "HAS_CLEARANCE",
    "VIOLATED",
    "ClearanceError",
    "ClearanceQueryEngine",
    "ClearanceReport",
    "DegenerateVertexRun",
    "EmptyScene",
    "FileFormatError",
    "IndexConfig",
    "InvalidBudget",
    "InvalidClearance",
    "InvalidPath",
    "Line",
    "NearestResult",
    "NonSimplePolygon",
    "OracleReport",
    "PartitionTree",
    "PlacementFailure",
    "Point",
    "PolyPath",
    "PolygonsIntersect",
    "Scene",
    "SceneIndex",
    "SceneValidationError",
    "Segment",
    "SimplePolygon",
    "Slab",
    "SlabQueryResult",
    "VertexSet",
    "as_path",
    "as_scene",
    "build_partition_tree",
    "build_scene_index",
    "dist_point_line",
    "dist_point_segment",
    "dist_segment_segment",
    "generate_scene",
    "min_clearance",
    "nearest_polygon_to_line",
    "nearest_polygon_to_segment",
    "oracle_clearance",
    "oracle_nearest_polygon_to_segment",
    "orientation",
    "parse_t_policy",
    "path_clearance",
    "slab_of",
    "validate_scene",
]
