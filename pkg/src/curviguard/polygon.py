"""Curvilinear polygon model: construction, classification, rooms, JSON I/O."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

from . import geometry as g
from .errors import (
    EmptyPolygon,
    NotSimple,
    OverlapNotPointwise,
    ValidationError,
)
from .geometry import ArcGeometry, Point

# Edge curves are chains of one or more arc pieces; most algorithms require
# single-piece edges (chains are admitted for locally convex polygons only).
EdgeCurve = list[ArcGeometry]


@dataclass(frozen=True)
class PolygonClass:
    is_linear: bool
    is_convex: bool
    is_piecewise_convex: bool
    is_piecewise_concave: bool
    is_locally_convex: bool


class RoomKind(Enum):
    DEGENERATE = "degenerate"
    EMPTY = "empty"
    NON_EMPTY = "non_empty"


@dataclass(frozen=True)
class Room:
    edge_index: int
    arc: ArcGeometry
    kind: RoomKind

    @property
    def chord(self) -> tuple[Point, Point]:
        return (self.arc.start, self.arc.end)


@dataclass
class RoomPointSets:
    """Vertex sets driving auxiliary-vertex placement for one non-empty room."""

    edge_index: int
    inside: list[int]          # vertex indices strictly inside the room or on the open chord
    on_chord: list[int]        # subset of `inside` lying on the open chord
    hull_selected: list[int]   # extremal vertices, endpoints included
    extremal: list[int] = field(default_factory=list)  # hull_selected minus the endpoints, ordered


class CurvilinearPolygon:
    """A simple closed region bounded by circular-arc (or straight) edges.

    Vertices are kept in counterclockwise order; edge ``i`` joins vertex ``i``
    to vertex ``i+1 (mod n)``.
    """

    def __init__(self, vertices: list[Point], edges: list[EdgeCurve]):
        if len(vertices) < 2:
            raise EmptyPolygon("polygon needs at least two vertices")
        if len(edges) != len(vertices):
            raise ValidationError("edge count must match vertex count")
        self.vertices: list[Point] = [(float(x), float(y)) for x, y in vertices]
        self.edges: list[EdgeCurve] = edges
        for x, y in self.vertices:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValidationError("vertex coordinates must be finite")
        n = len(vertices)
        for i, chain in enumerate(edges):
            if not chain:
                raise ValidationError(f"edge {i} has no pieces")
            if not g.close(chain[0].start, self.vertices[i]):
                raise ValidationError(f"edge {i} does not start at vertex {i}")
            if not g.close(chain[-1].end, self.vertices[(i + 1) % n]):
                raise ValidationError(f"edge {i} does not end at vertex {(i + 1) % n}")
            for a, b in zip(chain, chain[1:]):
                if not g.close(a.end, b.start):
                    raise ValidationError(f"edge {i} chain is not contiguous")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_bulges(cls, vertices: list[Point], bulges: list[float]) -> "CurvilinearPolygon":
        n = len(vertices)
        edges = [
            [g.arc_from_bulge(vertices[i], vertices[(i + 1) % n], bulges[i])]
            for i in range(n)
        ]
        return cls(vertices, edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_arc(self, i: int) -> ArcGeometry:
        chain = self.edges[i]
        if len(chain) != 1:
            raise ValidationError(f"edge {i} is a multi-piece chain")
        return chain[0]

    def single_piece(self) -> bool:
        return all(len(chain) == 1 for chain in self.edges)

    def pieces(self) -> list[tuple[int, ArcGeometry]]:
        """Flattened (edge_index, piece) list in boundary order."""
        out = []
        for i, chain in enumerate(self.edges):
            for piece in chain:
                out.append((i, piece))
        return out

    def signed_area(self) -> float:
        ring = [piece.start for _, piece in self.pieces()]
        area = g.shoelace(ring)
        for _, piece in self.pieces():
            area += piece.segment_area()
        return area

    def reversed(self) -> "CurvilinearPolygon":
        n = self.n
        verts = [self.vertices[0]] + self.vertices[:0:-1]
        edges: list[EdgeCurve] = []
        for i in range(n):
            # edge i of the reversed polygon retraces original edge n-1-i
            chain = self.edges[n - 1 - i]
            edges.append([piece.reversed() for piece in reversed(chain)])
        return CurvilinearPolygon(verts, edges)

    def with_ccw_orientation(self) -> "CurvilinearPolygon":
        return self if self.signed_area() > 0 else self.reversed()

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs: list[float] = []
        ys: list[float] = []
        for _, piece in self.pieces():
            for p in (piece.start, piece.end):
                xs.append(p[0])
                ys.append(p[1])
            for p in g.arc_x_extrema(piece) + g.arc_y_extrema(piece):
                xs.append(p[0])
                ys.append(p[1])
        return (min(xs), min(ys), max(xs), max(ys))

    # -- containment ----------------------------------------------------------

    def contains(self, p: Point, eps: float | None = None) -> bool:
        """Closed containment: interior or within eps of the boundary."""
        from .kernels import polygon_arrays, point_inside

        return point_inside(polygon_arrays(self), p[0], p[1], g._eps(eps))

    # -- serialization ----------------------------------------------------------

    def to_json_obj(self) -> dict:
        edges = []
        for chain in self.edges:
            if len(chain) == 1:
                edges.append({"bulge": chain[0].bulge})
            else:
                items = []
                for piece in chain[:-1]:
                    items.append({"bulge": piece.bulge, "via": [piece.end[0], piece.end[1]]})
                items.append({"bulge": chain[-1].bulge})
                edges.append({"chain": items})
        return {"vertices": [[x, y] for x, y in self.vertices], "edges": edges}

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CurvilinearPolygon":
        verts = [(float(x), float(y)) for x, y in obj["vertices"]]
        n = len(verts)
        raw_edges = obj.get("edges")
        if raw_edges is None:
            raw_edges = [{"bulge": 0.0}] * n
        if len(raw_edges) != n:
            raise ValidationError("edge list length must match vertex count")
        edges: list[EdgeCurve] = []
        for i, spec in enumerate(raw_edges):
            a, b = verts[i], verts[(i + 1) % n]
            if "chain" in spec:
                chain: EdgeCurve = []
                cur = a
                items = spec["chain"]
                for j, item in enumerate(items):
                    last = j == len(items) - 1
                    if last:
                        nxt = tuple(map(float, item["via"])) if "via" in item else b
                        if not g.close(nxt, b):
                            raise ValidationError(f"edge {i} chain does not end at vertex {(i + 1) % n}")
                        nxt = b
                    else:
                        nxt = tuple(map(float, item["via"]))
                    chain.append(g.arc_from_bulge(cur, nxt, float(item.get("bulge", 0.0))))
                    cur = nxt
                edges.append(chain)
            else:
                edges.append([g.arc_from_bulge(a, b, float(spec.get("bulge", 0.0)))])
        return cls(verts, edges)

    @classmethod
    def loads(cls, text: str) -> "CurvilinearPolygon":
        return cls.from_json_obj(json.loads(text))


# -- classification -------------------------------------------------------------


def _adjacent(i: int, j: int, n: int) -> bool:
    return (i + 1) % n == j or (j + 1) % n == i


def check_simple(poly: CurvilinearPolygon, eps: float | None = None) -> None:
    """Pairwise piece intersection test, O(n^2); raises NotSimple."""
    e = g._eps(eps)
    pieces = poly.pieces()
    m = len(pieces)
    for a in range(m):
        ea, pa = pieces[a]
        for b in range(a + 1, m):
            eb, pb = pieces[b]
            try:
                pts = g.arc_arc_intersections(pa, pb, e)
            except OverlapNotPointwise as exc:
                raise NotSimple(ea, eb, witness=exc.interval[0]) from exc
            allowed: list[Point] = []
            if b == a + 1:
                allowed.append(pa.end)
            if a == 0 and b == m - 1:
                allowed.append(pa.start)
            for p in pts:
                if not any(g.close(p, q, 8.0 * e) for q in allowed):
                    raise NotSimple(ea, eb, witness=p)


def classify(poly: CurvilinearPolygon, eps: float | None = None) -> PolygonClass:
    """Class flags for an already counterclockwise polygon."""
    e = g._eps(eps)
    single = poly.single_piece()
    bulges = [piece.bulge for _, piece in poly.pieces()]
    is_linear = single and all(abs(b) <= e for b in bulges)
    outward = all(b <= e for b in bulges)
    inward = all(b >= -e for b in bulges)
    is_piecewise_convex = single and outward
    is_piecewise_concave = single and inward and any(b > e for b in bulges)

    # joints interior to a chain must keep turning outward (left)
    joints_ok = True
    for chain in poly.edges:
        for p1, p2 in zip(chain, chain[1:]):
            t_in = g.tangent_at_param(p1, 1.0)
            t_out = g.tangent_at_param(p2, 0.0)
            if g.cross(t_in[0], t_in[1], t_out[0], t_out[1]) < -e:
                joints_ok = False
    is_locally_convex = outward and joints_ok

    is_convex = is_piecewise_convex and _all_vertex_turns_left(poly, e)
    return PolygonClass(
        is_linear=is_linear,
        is_convex=is_convex,
        is_piecewise_convex=is_piecewise_convex,
        is_piecewise_concave=is_piecewise_concave,
        is_locally_convex=is_locally_convex,
    )


def _all_vertex_turns_left(poly: CurvilinearPolygon, e: float) -> bool:
    n = poly.n
    for i in range(n):
        chain_in = poly.edges[(i - 1) % n]
        chain_out = poly.edges[i]
        t_in = g.tangent_at_param(chain_in[-1], 1.0)
        t_out = g.tangent_at_param(chain_out[0], 0.0)
        if g.cross(t_in[0], t_in[1], t_out[0], t_out[1]) < -e:
            return False
    return True


def validate(poly: CurvilinearPolygon, eps: float | None = None, auto_orient: bool = True) -> tuple[CurvilinearPolygon, PolygonClass]:
    """Simplicity + orientation check; returns the CCW polygon and its class.

    Raises NotSimple / EmptyPolygon / WrongOrientation (the latter only when
    auto_orient is disabled).
    """
    if poly.n < 2:
        raise EmptyPolygon("need n >= 2")
    check_simple(poly, eps)
    if poly.signed_area() <= 0:
        if not auto_orient:
            from .errors import WrongOrientation

            raise WrongOrientation("boundary is clockwise")
        poly = poly.reversed()
    return poly, classify(poly, eps)


# -- rooms ------------------------------------------------------------------


class RoomSide(Enum):
    INTERIOR = "interior"
    CHORD = "chord"
    OUTSIDE = "outside"


def room_locate(arc: ArcGeometry, p: Point, eps: float | None = None) -> RoomSide:
    """Locate ``p`` relative to the room of ``arc``: strictly inside the
    region between arc and chord, on the open chord, or neither."""
    e = g._eps(eps)
    if arc.is_segment:
        return RoomSide.OUTSIDE
    a, b = arc.start, arc.end
    chord_len = g.dist(a, b)
    # on the open chord (endpoints excluded by an eps band)
    t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (chord_len * chord_len)
    side = g.cross(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]) / chord_len
    if abs(side) <= e:
        if e / chord_len < t < 1.0 - e / chord_len:
            return RoomSide.CHORD
        return RoomSide.OUTSIDE
    # room side of the chord carries the bulge sign (left positive)
    if (side > 0) != (arc.bulge > 0):
        return RoomSide.OUTSIDE
    if g.dist(p, arc.center) >= arc.radius - e:
        return RoomSide.OUTSIDE
    return RoomSide.INTERIOR


def rooms(poly: CurvilinearPolygon, eps: float | None = None) -> list[Room]:
    """One room per edge, kind assigned by direct point tests (O(n^2) oracle)."""
    e = g._eps(eps)
    out = []
    n = poly.n
    for i in range(n):
        arc = poly.edge_arc(i)
        if abs(arc.bulge) <= e:
            out.append(Room(i, arc, RoomKind.DEGENERATE))
            continue
        occupied = False
        for j, v in enumerate(poly.vertices):
            if j == i or j == (i + 1) % n:
                continue
            if room_locate(arc, v, e) != RoomSide.OUTSIDE:
                occupied = True
                break
        out.append(Room(i, arc, RoomKind.NON_EMPTY if occupied else RoomKind.EMPTY))
    return out


def naive_room_point_sets(poly: CurvilinearPolygon, eps: float | None = None) -> list[RoomPointSets]:
    """Hull-selected room vertex sets by direct containment tests.

    This is the quadratic oracle counterpart of the sweep in the
    approximation module; results for the two paths must agree.
    """
    e = g._eps(eps)
    out = []
    n = poly.n
    for room in rooms(poly, e):
        if room.kind != RoomKind.NON_EMPTY:
            continue
        i = room.edge_index
        inside: list[int] = []
        on_chord: list[int] = []
        for j, v in enumerate(poly.vertices):
            if j == i or j == (i + 1) % n:
                continue
            where = room_locate(room.arc, v, e)
            if where == RoomSide.INTERIOR:
                inside.append(j)
            elif where == RoomSide.CHORD:
                inside.append(j)
                on_chord.append(j)
        sets = RoomPointSets(i, inside, on_chord, [])
        sets.hull_selected, sets.extremal = select_extremal(poly, room, inside, on_chord, e)
        out.append(sets)
    return out


def select_extremal(
    poly: CurvilinearPolygon,
    room: Room,
    inside: list[int],
    on_chord: list[int],
    eps: float | None = None,
) -> tuple[list[int], list[int]]:
    """Hull-based selection of the extremal room vertices.

    Returns (selected including endpoints, selected minus endpoints ordered
    from vertex ``i`` toward vertex ``i+1``).
    """
    e = g._eps(eps)
    i = room.edge_index
    n = poly.n
    vi, vj = poly.vertices[i], poly.vertices[(i + 1) % n]
    interior = [j for j in inside if j not in set(on_chord)]
    if not interior:
        # all candidates on the open chord: keep them, ordered along it
        order = sorted(on_chord, key=lambda j: g.dist(vi, poly.vertices[j]))
        return [i, (i + 1) % n] + order, order

    pts = [poly.vertices[j] for j in interior] + [vi, vj]
    hull = g.convex_hull(pts, e)
    idx_of = {}
    for j in interior:
        idx_of[poly.vertices[j]] = j
    # locate endpoints on the hull and walk from vi to vj the long way round
    def hull_find(p: Point) -> int:
        for k, q in enumerate(hull):
            if g.close(p, q, 8.0 * e):
                return k
        return -1

    ki, kj = hull_find(vi), hull_find(vj)
    if ki < 0 or kj < 0:
        # endpoints merged away by degeneracy; fall back to chord ordering
        order = sorted(interior, key=lambda j: g.dist(vi, poly.vertices[j]))
        return [i, (i + 1) % n] + order, order
    chain: list[int] = []
    k = ki
    while True:
        k = (k + 1) % len(hull)
        if k == kj:
            break
        j = idx_of.get(hull[k])
        if j is not None:
            chain.append(j)
    if not chain:
        # the counterclockwise walk hit vj first; room vertices on the other side
        chain = []
        k = kj
        while True:
            k = (k + 1) % len(hull)
            if k == ki:
                break
            j = idx_of.get(hull[k])
            if j is not None:
                chain.append(j)
        chain.reverse()
    return [i, (i + 1) % n] + chain, chain
