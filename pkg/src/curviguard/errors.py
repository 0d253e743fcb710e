"""Exception types shared across the package."""


class CurviguardError(Exception):
    """Base class for all library errors."""


class GeometryError(CurviguardError):
    pass


class DegenerateChord(GeometryError):
    """Arc endpoints coincide within tolerance."""


class OverlapNotPointwise(GeometryError):
    """Segment and degenerate (straight) arc overlap along a subsegment.

    Carries the overlap interval as two points on the query segment.
    """

    def __init__(self, p, q):
        super().__init__(f"collinear overlap between {p} and {q}")
        self.interval = (p, q)


class PointNotOnArc(GeometryError):
    pass


class NoIntersection(GeometryError):
    """Expected line/arc intersection does not exist (inconsistent state)."""


class ValidationError(CurviguardError):
    """Base for polygon validation failures (CLI exit code 2)."""


class EmptyPolygon(ValidationError):
    pass


class NotSimple(ValidationError):
    def __init__(self, i, j, witness=None):
        super().__init__(f"edges {i} and {j} intersect improperly")
        self.edges = (i, j)
        self.witness = witness


class WrongOrientation(ValidationError):
    """Boundary is clockwise; callers may auto-fix by reversing."""


class NotMonotone(ValidationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPiecewiseConvex(ValidationError):
    pass


class NotLocallyConvex(ValidationError):
    pass


class DegenerateGeometry(CurviguardError):
    """Coincident sweep events beyond lexicographic tie-breaking."""


class InvalidCrescent(CurviguardError):
    """A forced triangle has non-positive area."""


class NonSimpleRegion(CurviguardError):
    """Remainder region handed to the triangulator is not simple."""


class CycleDetected(CurviguardError):
    """Triangulation dual graph is not a tree."""


class ColoringContract(CurviguardError):
    """Vertex coloring violates the promises the guard mapping relies on."""


class PointOutside(CurviguardError):
    """Visibility query endpoint lies outside the polygon."""


class SizeLimitExceeded(CurviguardError):
    """Brute-force search refused: instance too large."""


class InvalidFamilyParameter(CurviguardError):
    """Generator size/seed outside the family's validity range (CLI exit 4)."""


class UnknownFamily(CurviguardError):
    pass
