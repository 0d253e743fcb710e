"""Plane-sweep machinery shared by the approximation and triangulation stages.

Works on rings of directed curve pieces whose interiors are y-monotone
(callers split arcs at interior horizontal-tangent points first).  Provides
the monotone decomposition (with bridge diagonals), planar face extraction,
and the stack triangulation of monotone linear rings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import geometry as g
from .errors import DegenerateGeometry, NonSimpleRegion
from .geometry import ArcGeometry, Point, TAU


@dataclass(frozen=True)
class RingEdge:
    """Directed boundary piece; ``source`` is the owning polygon edge index."""

    arc: ArcGeometry
    source: int | None = None
    bridge: bool = False


def sweep_key(p: Point, tie: int = 0) -> tuple[float, float, int]:
    """Events ordered top-down, ties left-to-right then by index."""
    return (-p[1], p[0], tie)


class EventKind(Enum):
    START = "start"
    END = "end"
    SPLIT = "split"
    MERGE = "merge"
    REGULAR_LEFT = "regular_left"
    REGULAR_RIGHT = "regular_right"


def _turn_is_convex(t_in: tuple[float, float], t_out: tuple[float, float], eps: float) -> bool:
    return g.cross(t_in[0], t_in[1], t_out[0], t_out[1]) >= -eps


def classify_events(nodes: list[Point], edges: list[RingEdge], eps: float) -> list[EventKind]:
    n = len(nodes)
    kinds: list[EventKind] = []
    for i in range(n):
        prev_edge = edges[(i - 1) % n]
        next_edge = edges[i]
        prev_node = nodes[(i - 1) % n]
        next_node = nodes[(i + 1) % n]
        here = nodes[i]
        k_here = sweep_key(here, i)
        prev_above = sweep_key(prev_node, (i - 1) % n) < k_here
        next_above = sweep_key(next_node, (i + 1) % n) < k_here
        t_in = g.tangent_at_param(prev_edge.arc, 1.0)
        t_out = g.tangent_at_param(next_edge.arc, 0.0)
        convex = _turn_is_convex(t_in, t_out, eps)
        if not prev_above and not next_above:
            kinds.append(EventKind.START if convex else EventKind.SPLIT)
        elif prev_above and next_above:
            kinds.append(EventKind.END if convex else EventKind.MERGE)
        elif prev_above and not next_above:
            kinds.append(EventKind.REGULAR_LEFT)   # interior to the right
        else:
            kinds.append(EventKind.REGULAR_RIGHT)
    return kinds


def _x_at(edge: RingEdge, upper: Point, lower: Point, y: float) -> float:
    arc = edge.arc
    if arc.is_segment:
        y1, y2 = arc.start[1], arc.end[1]
        if abs(y1 - y2) < 1e-300:
            return min(arc.start[0], arc.end[0])
        t = (y - y1) / (y2 - y1)
        t = min(max(t, 0.0), 1.0)
        return arc.start[0] + t * (arc.end[0] - arc.start[0])
    c, r = arc.center, arc.radius
    d2 = r * r - (y - c[1]) * (y - c[1])
    if d2 < 0.0:
        d2 = 0.0
    mid = arc.midpoint()
    side = 1.0 if mid[0] >= c[0] else -1.0
    return c[0] + side * math.sqrt(d2)


@dataclass
class _StatusEdge:
    index: int          # ring edge index (edge from node index to index+1)
    upper: Point
    lower: Point
    edge: RingEdge
    helper: int = -1
    helper_is_merge: bool = False

    def x_at(self, y: float) -> float:
        return _x_at(self.edge, self.upper, self.lower, y)


class _Status:
    """Sweep status: active left-bounding edges ordered by x at the sweep line."""

    def __init__(self):
        self.edges: list[_StatusEdge] = []

    def insert(self, e: _StatusEdge, y: float) -> None:
        x = e.x_at(y)
        pos = 0
        while pos < len(self.edges) and self.edges[pos].x_at(y) < x:
            pos += 1
        self.edges.insert(pos, e)

    def remove(self, index: int) -> _StatusEdge | None:
        for k, e in enumerate(self.edges):
            if e.index == index:
                return self.edges.pop(k)
        return None

    def left_of(self, x: float, y: float) -> _StatusEdge | None:
        best = None
        best_x = -math.inf
        for e in self.edges:
            ex = e.x_at(y)
            if ex <= x and ex >= best_x:
                best_x = ex
                best = e
        return best


def monotone_diagonals(nodes: list[Point], edges: list[RingEdge], eps: float | None = None) -> list[tuple[int, int]]:
    """Bridge diagonals making every face of ring+diagonals y-monotone."""
    e = g._eps(eps)
    n = len(nodes)
    seen: dict[tuple[float, float], int] = {}
    for i, p in enumerate(nodes):
        key = (round(p[0] / (4.0 * e)), round(p[1] / (4.0 * e)))
        if key in seen:
            raise DegenerateGeometry(f"coincident event vertices {seen[key]} and {i}")
        seen[key] = i
    kinds = classify_events(nodes, edges, e)
    order = sorted(range(n), key=lambda i: sweep_key(nodes[i], i))
    status = _Status()
    diagonals: list[tuple[int, int]] = []

    def status_edge(i: int) -> _StatusEdge:
        a, b = nodes[i], nodes[(i + 1) % n]
        up, lo = (a, b) if sweep_key(a, i) < sweep_key(b, (i + 1) % n) else (b, a)
        return _StatusEdge(index=i, upper=up, lower=lo, edge=edges[i])

    def fix_helper(se: _StatusEdge, v: int) -> None:
        if se.helper_is_merge:
            diagonals.append((v, se.helper))
        se.helper = v
        se.helper_is_merge = False

    for i in order:
        v = nodes[i]
        y = v[1]
        kind = kinds[i]
        if kind == EventKind.START:
            se = status_edge(i)
            se.helper = i
            status.insert(se, y)
        elif kind == EventKind.END:
            se = status.remove((i - 1) % n)
            if se is not None and se.helper_is_merge:
                diagonals.append((i, se.helper))
        elif kind == EventKind.SPLIT:
            left = status.left_of(v[0], y)
            if left is not None:
                diagonals.append((i, left.helper))
                left.helper = i
                left.helper_is_merge = False
            se = status_edge(i)
            se.helper = i
            status.insert(se, y)
        elif kind == EventKind.MERGE:
            se = status.remove((i - 1) % n)
            if se is not None and se.helper_is_merge:
                diagonals.append((i, se.helper))
            left = status.left_of(v[0], y)
            if left is not None:
                fix_helper(left, i)
                left.helper_is_merge = True
        elif kind == EventKind.REGULAR_LEFT:
            se = status.remove((i - 1) % n)
            if se is not None and se.helper_is_merge:
                diagonals.append((i, se.helper))
            se2 = status_edge(i)
            se2.helper = i
            status.insert(se2, y)
        else:  # REGULAR_RIGHT
            left = status.left_of(v[0], y)
            if left is not None:
                fix_helper(left, i)
    return diagonals


# -- planar face extraction ---------------------------------------------------


@dataclass
class FaceEdge:
    tail: int
    head: int
    arc: ArcGeometry
    source: int | None
    bridge: bool


def _departure_angle(arc: ArcGeometry) -> tuple[float, float]:
    t = g.tangent_at_param(arc, 0.0)
    ang = math.atan2(t[1], t[0]) % TAU
    kappa = 0.0 if arc.is_segment else (1.0 / arc.radius if arc.sweep > 0 else -1.0 / arc.radius)
    return ang, kappa


def extract_faces(
    nodes: list[Point],
    edges: list[RingEdge],
    diagonals: list[tuple[int, int]],
) -> list[list[FaceEdge]]:
    """Counterclockwise interior faces of the ring plus internal diagonals.

    Ring pieces appear forward only (interior on their left); diagonals in
    both directions, so no outer face is produced.
    """
    n = len(nodes)
    half: list[FaceEdge] = []
    for i, e in enumerate(edges):
        half.append(FaceEdge(i, (i + 1) % n, e.arc, e.source, e.bridge))
    seen_diag = set()
    for a, b in diagonals:
        key = (min(a, b), max(a, b))
        if key in seen_diag or a == b:
            continue
        seen_diag.add(key)
        seg = ArcGeometry(nodes[a], nodes[b], 0.0)
        half.append(FaceEdge(a, b, seg, None, True))
        half.append(FaceEdge(b, a, seg.reversed(), None, True))

    out_at: dict[int, list[tuple[float, float, int]]] = {}
    for hid, h in enumerate(half):
        ang, kappa = _departure_angle(h.arc)
        out_at.setdefault(h.tail, []).append((ang, kappa, hid))
    for v in out_at:
        out_at[v].sort()

    def next_half(hid: int) -> int:
        h = half[hid]
        rev = h.arc.reversed()
        ang, kappa = _departure_angle(rev)
        cands = out_at[h.head]
        # strict cyclic predecessor of the reversed direction
        best = None
        for a, k, j in cands:
            if (a, k) < (ang, kappa):
                best = (a, k, j)
        if best is None:
            best = cands[-1]
        return best[2]

    visited = [False] * len(half)
    faces: list[list[FaceEdge]] = []
    for hid in range(len(half)):
        if visited[hid]:
            continue
        ring: list[FaceEdge] = []
        cur = hid
        while not visited[cur]:
            visited[cur] = True
            ring.append(half[cur])
            cur = next_half(cur)
        if cur != hid:
            raise NonSimpleRegion("face walk did not close")
        faces.append(ring)
    return faces


def face_area(face: list[FaceEdge]) -> float:
    area = g.shoelace([fe.arc.start for fe in face])
    for fe in face:
        area += fe.arc.segment_area()
    return area


def split_pinched(face: list[FaceEdge]) -> list[list[FaceEdge]]:
    """Split a face ring that revisits a node into simple loops."""
    out: list[list[FaceEdge]] = []
    stack_nodes: list[int] = []
    stack_edges: list[FaceEdge] = []
    for fe in face:
        if fe.tail in stack_nodes:
            k = stack_nodes.index(fe.tail)
            loop = stack_edges[k:]
            if loop:
                out.append(loop)
            del stack_nodes[k:]
            del stack_edges[k:]
        stack_nodes.append(fe.tail)
        stack_edges.append(fe)
    if stack_edges:
        out.append(stack_edges)
    return out


# -- monotone stack triangulation (linear rings) ------------------------------


def triangulate_monotone_ring(nodes: list[Point], ids: list[int]) -> list[tuple[int, int, int]]:
    """Stack triangulation of a y-monotone linear ring given CCW.

    ``ids`` are caller vertex identifiers parallel to ``nodes``; output
    triangles are id triples in counterclockwise order.
    """
    m = len(nodes)
    if m < 3:
        return []
    if m == 3:
        tri = (ids[0], ids[1], ids[2])
        return [tri]
    keys = [sweep_key(p, i) for i, p in enumerate(nodes)]
    top = min(range(m), key=lambda i: keys[i])
    bot = max(range(m), key=lambda i: keys[i])

    # left chain: ccw from top to bottom; right chain: the rest
    left: list[int] = []
    i = top
    while i != bot:
        i = (i + 1) % m
        if i != bot:
            left.append(i)
    right: list[int] = []
    i = bot
    while True:
        i = (i + 1) % m
        if i == top:
            break
        right.append(i)
    right.reverse()  # top to bottom

    on_left = set(left)
    merged = sorted(left + right + [top, bot], key=lambda i: keys[i])

    def side(i: int) -> int:
        if i == top or i == bot:
            return 0
        return 1 if i in on_left else 2

    tris: list[tuple[int, int, int]] = []

    def emit(a: int, b: int, c: int) -> None:
        o = g.cross(
            nodes[b][0] - nodes[a][0], nodes[b][1] - nodes[a][1],
            nodes[c][0] - nodes[a][0], nodes[c][1] - nodes[a][1],
        )
        if o >= 0:
            tris.append((ids[a], ids[b], ids[c]))
        else:
            tris.append((ids[a], ids[c], ids[b]))

    stack = [merged[0], merged[1]]
    for k in range(2, m - 1):
        u = merged[k]
        if side(stack[-1]) != 0 and side(u) != side(stack[-1]):
            while len(stack) > 1:
                emit(u, stack[-1], stack[-2])
                stack.pop()
            stack = [merged[k - 1], u]
        else:
            v = stack.pop()
            while stack:
                w = stack[-1]
                turn = g.cross(
                    nodes[v][0] - nodes[u][0], nodes[v][1] - nodes[u][1],
                    nodes[w][0] - nodes[u][0], nodes[w][1] - nodes[u][1],
                )
                # diagonal u-w lies inside iff (u, v, w) turns toward the interior
                ok = turn < 0.0 if side(u) == 1 else turn > 0.0
                if not ok:
                    break
                emit(u, v, w)
                v = stack.pop()
            stack.append(v)
            stack.append(u)
    u = merged[m - 1]
    while len(stack) > 1:
        emit(u, stack[-1], stack[-2])
        stack.pop()
    return tris
