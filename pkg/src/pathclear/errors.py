"""Exception types shared across the package."""


class ClearanceError(Exception):
    """Base class for all pathclear errors."""


class SceneValidationError(ClearanceError):
    """A scene failed validation; subclasses carry the offending polygon ids."""


class NonSimplePolygon(SceneValidationError):
    def __init__(self, polygon_id, reason="edges cross"):
        self.polygon_id = polygon_id
        self.reason = reason
        super().__init__(f"polygon {polygon_id} is not simple: {reason}")


class DegenerateVertexRun(SceneValidationError):
    def __init__(self, polygon_id):
        self.polygon_id = polygon_id
        super().__init__(f"polygon {polygon_id} has repeated consecutive vertices")


class PolygonsIntersect(SceneValidationError):
    def __init__(self, id1, id2):
        self.id1, self.id2 = id1, id2
        super().__init__(f"polygons {id1} and {id2} intersect")


class InvalidPath(ClearanceError):
    """Query path is malformed (fewer than two vertices, repeated vertices, ...)."""


class EmptyScene(ClearanceError):
    """Proximity query against a scene with no obstacles."""


class InvalidBudget(ClearanceError):
    """Partition-tree space budget outside the admissible [n, n^2] range."""


class InvalidClearance(ClearanceError):
    """Clearance threshold c must be positive."""


class PlacementFailure(ClearanceError):
    """Random scene generator could not place all polygons in the bounding box."""


class FileFormatError(ClearanceError):
    """Scene or path file does not match the documented JSON schema."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{message} (field: {field})")
