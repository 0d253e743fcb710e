"""curviguard: guard sets for polygons with circular-arc edges."""

from .geometry import ArcGeometry, Orientation, Point, epsilon, set_epsilon
from .polygon import CurvilinearPolygon, PolygonClass, Room, RoomKind, validate

__all__ = [
    "ArcGeometry",
    "CurvilinearPolygon",
    "Orientation",
    "Point",
    "PolygonClass",
    "Room",
    "RoomKind",
    "epsilon",
    "set_epsilon",
    "validate",
]

__version__ = "0.1.0"
