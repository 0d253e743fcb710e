"""Linear approximation of a piecewise-convex polygon.

Pipeline: split arcs at interior horizontal-tangent points, decompose into
y-monotone subpolygons, sweep each subpolygon once to collect per-room
candidate vertex sets, reduce them to the extremal sets by a hull, and place
one auxiliary boundary vertex per extremal vertex (one per empty room).  The
resulting vertex ring is the linear stand-in polygon the triangulation and
coloring stages work on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import geometry as g
from . import monotone as mono
from .errors import NoIntersection, NotPiecewiseConvex
from .geometry import ArcGeometry, Point
from .polygon import CurvilinearPolygon, Room, RoomKind, RoomSide, room_locate, select_extremal


@dataclass(frozen=True)
class ApproxVertex:
    pos: Point
    kind: str                  # "orig" or "aux"
    orig_index: int | None = None
    edge_index: int | None = None
    ordinal: int | None = None


@dataclass
class RoomPlan:
    edge_index: int
    empty: bool
    chord_case: bool = False
    c_star: list[int] = field(default_factory=list)
    aux_points: list[Point] = field(default_factory=list)
    aux_params: list[float] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)


@dataclass
class PolygonalApproximation:
    source: CurvilinearPolygon
    ring: list[ApproxVertex]
    plans: dict[int, RoomPlan]
    sectors: list[ArcGeometry | None]    # per ring edge, the sub-arc it stands for
    candidate_sets: dict[int, set[int]]  # sweep output per edge (diagnostics)
    bridges: list[tuple[Point, Point]]
    subpolygon_count: int

    @property
    def size(self) -> int:
        return len(self.ring)

    def positions(self) -> list[Point]:
        return [v.pos for v in self.ring]

    def debug_dump(self) -> dict:
        return {
            "ring": [
                {
                    "pos": list(v.pos),
                    "kind": v.kind,
                    "orig_index": v.orig_index,
                    "edge_index": v.edge_index,
                    "ordinal": v.ordinal,
                }
                for v in self.ring
            ],
            "candidate_sets": {str(k): sorted(v) for k, v in self.candidate_sets.items()},
            "extremal_sets": {
                str(k): plan.c_star for k, plan in self.plans.items() if not plan.empty
            },
            "bridges": [[list(p), list(q)] for p, q in self.bridges],
            "subpolygons": self.subpolygon_count,
            "flags": {str(k): plan.flags for k, plan in self.plans.items() if plan.flags},
        }


def _require_piecewise_convex(poly: CurvilinearPolygon, eps: float) -> None:
    if not poly.single_piece():
        raise NotPiecewiseConvex("multi-piece edges are not supported by this pipeline")
    for i in range(poly.n):
        if poly.edge_arc(i).bulge > eps:
            raise NotPiecewiseConvex(f"edge {i} bulges toward the interior")
    if poly.signed_area() <= 0:
        raise NotPiecewiseConvex("polygon must be counterclockwise")


def split_at_extrema(
    poly: CurvilinearPolygon, eps: float | None = None
) -> tuple[list[Point], list[tuple[str, int]], list[mono.RingEdge]]:
    """Cut every arc at its interior horizontal-tangent points.

    Returns (node positions, node tags, ring edges); tags are
    ("orig", vertex index) or ("ext", edge index).
    """
    e = g._eps(eps)
    nodes: list[Point] = []
    tags: list[tuple[str, int]] = []
    edges: list[mono.RingEdge] = []
    for i in range(poly.n):
        arc = poly.edge_arc(i)
        nodes.append(poly.vertices[i])
        tags.append(("orig", i))
        cuts = []
        for p in g.arc_y_extrema(arc, e):
            s = arc.param_of(p, e)
            if s is not None and 0.0 < s < 1.0:
                cuts.append(s)
        cuts.sort()
        pieces = arc.split_at(cuts) if cuts else [arc]
        for k, piece in enumerate(pieces):
            edges.append(mono.RingEdge(piece, source=i))
            if k < len(pieces) - 1:
                nodes.append(piece.end)
                tags.append(("ext", i))
    return nodes, tags, edges


@dataclass
class MonotoneSubpolygon:
    """One y-monotone face of the decomposition (curve pieces plus bridges)."""

    items: list[mono.FaceEdge]

    def horizontal_crossings(self, y: float) -> int:
        count = 0
        for fe in self.items:
            y1, y2 = fe.arc.start[1], fe.arc.end[1]
            lo, hi = min(y1, y2), max(y1, y2)
            if lo <= y < hi:
                count += 1
        return count


def decompose_monotone(
    nodes: list[Point], edges: list[mono.RingEdge], eps: float | None = None
) -> tuple[list[MonotoneSubpolygon], list[tuple[int, int]]]:
    diagonals = mono.monotone_diagonals(nodes, edges, eps)
    faces = mono.extract_faces(nodes, edges, diagonals)
    return [MonotoneSubpolygon(f) for f in faces], diagonals


def sweep_collect(
    sub: MonotoneSubpolygon,
    nodes: list[Point],
    tags: list[tuple[str, int]],
    poly: CurvilinearPolygon,
    sets: dict[int, set[int]],
    eps: float | None = None,
) -> None:
    """One downward sweep over a monotone subpolygon, growing the per-arc
    candidate vertex sets."""
    e = g._eps(eps)
    items = sub.items
    m = len(items)
    if m < 3:
        return

    def key(pos: int):
        tail = items[pos].tail
        return mono.sweep_key(nodes[tail], tail)

    top = min(range(m), key=key)
    bot = max(range(m), key=key)

    # walking ccw from the top descends the left chain
    left_edges: list[mono.FaceEdge] = []
    i = top
    while i != bot:
        left_edges.append(items[i])
        i = (i + 1) % m
    right_edges_up: list[mono.FaceEdge] = []
    while i != top:
        right_edges_up.append(items[i])
        i = (i + 1) % m
    right_edges = list(reversed(right_edges_up))  # top-down

    def node_key(node: int):
        return mono.sweep_key(nodes[node], node)

    events: list[tuple[tuple, str, int, int]] = []
    for j, fe in enumerate(left_edges[1:], start=1):
        events.append((node_key(fe.tail), "left", fe.tail, j))
    for j, fe in enumerate(right_edges[1:], start=1):
        events.append((node_key(fe.head), "right", fe.head, j))
    events.sort(key=lambda ev: ev[0])

    s_left: set[int] = set()
    s_right: set[int] = set()
    lp = 0  # current left edge index
    rp = 0  # current right edge index

    def left_lower_key(j: int):
        return node_key(left_edges[j].head)

    def right_lower_key(j: int):
        return node_key(right_edges[j].tail)

    def flush(fe: mono.FaceEdge, bucket: set[int]) -> None:
        if fe is not None and not fe.bridge and fe.source is not None:
            sets.setdefault(fe.source, set()).update(bucket)

    def try_add(node: int, fe: mono.FaceEdge, bucket: set[int]) -> None:
        if fe is None or fe.bridge or fe.source is None:
            return
        tag_kind, tag_idx = tags[node]
        if tag_kind != "orig":
            return
        k = fe.source
        if tag_idx == k or tag_idx == (k + 1) % poly.n:
            return
        if room_locate(poly.edge_arc(k), nodes[node], e) != RoomSide.OUTSIDE:
            bucket.add(tag_idx)

    # defensive corner tests for the extreme vertices themselves
    top_node = items[top].tail
    try_add(top_node, right_edges[0] if right_edges else None, s_right)
    try_add(top_node, left_edges[0] if left_edges else None, s_left)

    for _, side, node, j in events:
        k_v = node_key(node)
        if side == "left":
            e_up = left_edges[j - 1]
            flush(e_up, s_left)
            s_left = set()
            lp = j
            while rp + 1 < len(right_edges) and right_lower_key(rp) < k_v:
                rp += 1
            try_add(node, right_edges[rp] if right_edges else None, s_right)
        else:
            e_up = right_edges[j - 1]
            flush(e_up, s_right)
            s_right = set()
            rp = j
            while lp + 1 < len(left_edges) and left_lower_key(lp) < k_v:
                lp += 1
            try_add(node, left_edges[lp] if left_edges else None, s_left)

    bot_node = items[bot].tail
    try_add(bot_node, right_edges[-1] if right_edges else None, s_right)
    try_add(bot_node, left_edges[-1] if left_edges else None, s_left)
    flush(left_edges[-1] if left_edges else None, s_left)
    flush(right_edges[-1] if right_edges else None, s_right)


def compute_ci_star(
    poly: CurvilinearPolygon,
    edge_index: int,
    candidates: set[int],
    eps: float | None = None,
) -> tuple[list[int], bool]:
    """Reduce a sweep candidate set to the ordered extremal set.

    Returns (ordered vertex indices, chord-interior-only case flag).
    """
    e = g._eps(eps)
    arc = poly.edge_arc(edge_index)
    inside: list[int] = []
    on_chord: list[int] = []
    for j in sorted(candidates):
        where = room_locate(arc, poly.vertices[j], e)
        if where == RoomSide.INTERIOR:
            inside.append(j)
        elif where == RoomSide.CHORD:
            inside.append(j)
            on_chord.append(j)
    if not inside:
        return [], False
    room = Room(edge_index, arc, RoomKind.NON_EMPTY)
    _, chain = select_extremal(poly, room, inside, on_chord, e)
    chord_case = len(inside) == len(on_chord)
    return chain, chord_case


def place_auxiliary(
    poly: CurvilinearPolygon, plan: RoomPlan, eps: float | None = None
) -> None:
    """Fill the plan's auxiliary points (one per extremal vertex, ordered
    along the arc; the angular midpoint for an empty room)."""
    e = g._eps(eps)
    arc = poly.edge_arc(plan.edge_index)
    if plan.empty:
        plan.aux_points = [arc.point_at(0.5)]
        plan.aux_params = [0.5]
        return
    a, b = arc.start, arc.end
    mid = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
    placed: list[tuple[float, Point, int]] = []
    for c_idx in plan.c_star:
        c = poly.vertices[c_idx]
        if plan.chord_case:
            # perpendicular to the chord through the on-chord vertex
            nx, ny = g.normalize(-(b[1] - a[1]), b[0] - a[0])
            hits = g.line_arc_intersections(c, (c[0] + nx, c[1] + ny), arc, e)
        else:
            hits = g.line_arc_intersections(mid, c, arc, e)
            # keep hits on the ray from the chord midpoint through the vertex
            dx, dy = c[0] - mid[0], c[1] - mid[1]
            hits = [p for p in hits if (p[0] - mid[0]) * dx + (p[1] - mid[1]) * dy > 0.0]
        if not hits:
            raise NoIntersection(
                f"no auxiliary intersection for vertex {c_idx} in room {plan.edge_index}"
            )
        if len(hits) > 1:
            plan.flags.append(f"near_tangent_vertex_{c_idx}")
            hits.sort(key=lambda p: (p[0] - mid[0]) * (c[0] - mid[0]) + (p[1] - mid[1]) * (c[1] - mid[1]))
        w = hits[-1] if not plan.chord_case else hits[0]
        s = arc.param_of(w, e)
        if s is None:
            raise NoIntersection(f"auxiliary point off the arc in room {plan.edge_index}")
        placed.append((s, w, c_idx))
    placed.sort(key=lambda it: it[0])
    if [c for _, _, c in placed] != plan.c_star:
        plan.flags.append("reordered_to_arc_order")
        plan.c_star = [c for _, _, c in placed]
    plan.aux_params = [s for s, _, _ in placed]
    plan.aux_points = [p for _, p, _ in placed]
    if len(plan.c_star) == 1:
        plan.flags.append("single_extremal_vertex")


def build_polygonal_approximation(
    poly: CurvilinearPolygon, eps: float | None = None
) -> PolygonalApproximation:
    """Full linear-approximation pipeline for a piecewise-convex polygon."""
    e = g._eps(eps)
    _require_piecewise_convex(poly, e)

    nodes, tags, ring_edges = split_at_extrema(poly, e)
    subs, diagonals = decompose_monotone(nodes, ring_edges, e)
    sets: dict[int, set[int]] = {}
    for sub in subs:
        sweep_collect(sub, nodes, tags, poly, sets, e)

    plans: dict[int, RoomPlan] = {}
    for i in range(poly.n):
        arc = poly.edge_arc(i)
        if abs(arc.bulge) <= e:
            continue
        chain, chord_case = compute_ci_star(poly, i, sets.get(i, set()), e)
        plan = RoomPlan(edge_index=i, empty=not chain, chord_case=chord_case, c_star=chain)
        place_auxiliary(poly, plan, e)
        plans[i] = plan

    ring: list[ApproxVertex] = []
    sectors: list[ArcGeometry | None] = []
    for i in range(poly.n):
        ring.append(ApproxVertex(pos=poly.vertices[i], kind="orig", orig_index=i))
        arc = poly.edge_arc(i)
        plan = plans.get(i)
        if plan is None:
            sectors.append(None)
            continue
        for k, w in enumerate(plan.aux_points):
            ring.append(ApproxVertex(pos=w, kind="aux", edge_index=i, ordinal=k + 1))
        sectors.extend(arc.split_at(plan.aux_params))

    approx = PolygonalApproximation(
        source=poly,
        ring=ring,
        plans=plans,
        sectors=sectors,
        candidate_sets=sets,
        bridges=[(nodes[a], nodes[b]) for a, b in diagonals],
        subpolygon_count=len(subs),
    )
    return approx
