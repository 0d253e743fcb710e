"""Low-level predicates and constructions on points, segments and circular arcs.

Bulge convention: an edge from ``start`` to ``end`` with bulge ``b`` is the
circular arc with ``b = tan(theta/4)`` where ``theta`` is the subtended angle.
Positive bulge puts the arc on the left of the directed chord, negative on the
right, ``b == 0`` degenerates to a straight segment.  The arc midpoint is
displaced from the chord midpoint by ``b * |chord| / 2`` along the left normal.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateChord,
    OverlapNotPointwise,
    PointNotOnArc,
)

Point = tuple[float, float]

TAU = 2.0 * math.pi

_EPS = float(os.environ.get("CURVIGUARD_EPSILON", "1e-9"))


def epsilon() -> float:
    """Current global coordinate tolerance."""
    return _EPS


def set_epsilon(value: float) -> None:
    if value <= 0:
        raise ValueError("epsilon must be positive")
    global _EPS
    _EPS = float(value)


def _eps(eps: float | None) -> float:
    return _EPS if eps is None else eps


class Orientation(Enum):
    COUNTERCLOCKWISE = 1
    CLOCKWISE = -1
    COLLINEAR = 0


def cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def orientation(p: Point, q: Point, r: Point, eps: float | None = None) -> Orientation:
    """Classify the turn p -> q -> r by the sign of the 2x2 determinant."""
    det = cross(q[0] - p[0], q[1] - p[1], r[0] - p[0], r[1] - p[1])
    e = _eps(eps)
    if det > e:
        return Orientation.COUNTERCLOCKWISE
    if det < -e:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def dist(p: Point, q: Point) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def close(p: Point, q: Point, eps: float | None = None) -> bool:
    e = _eps(eps)
    return abs(p[0] - q[0]) <= e and abs(p[1] - q[1]) <= e


def normalize(vx: float, vy: float) -> tuple[float, float]:
    n = math.hypot(vx, vy)
    if n == 0.0:
        raise ValueError("cannot normalize zero vector")
    return vx / n, vy / n


@dataclass(frozen=True)
class ArcGeometry:
    """A directed circular arc (or straight segment when ``bulge == 0``)."""

    start: Point
    end: Point
    bulge: float

    @property
    def is_segment(self) -> bool:
        return self.bulge == 0.0

    @property
    def chord_length(self) -> float:
        return dist(self.start, self.end)

    @property
    def center(self) -> Point:
        b = self.bulge
        if b == 0.0:
            raise ValueError("segment has no center")
        (x0, y0), (x1, y1) = self.start, self.end
        mx, my = (x0 + x1) / 2.0, (y0 + y1) / 2.0
        length = self.chord_length
        nx, ny = normalize(-(y1 - y0), x1 - x0)  # left normal of the chord
        d = length * (b * b - 1.0) / (4.0 * b)
        return (mx + nx * d, my + ny * d)

    @property
    def radius(self) -> float:
        b = self.bulge
        if b == 0.0:
            raise ValueError("segment has no radius")
        return self.chord_length * (1.0 + b * b) / (4.0 * abs(b))

    @property
    def sweep(self) -> float:
        """Signed subtended angle, counterclockwise positive.

        Positive bulge (arc left of the chord) is traversed clockwise, so the
        sweep sign is the negated bulge sign.
        """
        return -4.0 * math.atan(self.bulge)

    @property
    def start_angle(self) -> float:
        c = self.center
        return math.atan2(self.start[1] - c[1], self.start[0] - c[0])

    def point_at(self, s: float) -> Point:
        """Point at arc parameter ``s`` in [0, 1] (chord interpolation for segments)."""
        if self.is_segment:
            return (
                self.start[0] + s * (self.end[0] - self.start[0]),
                self.start[1] + s * (self.end[1] - self.start[1]),
            )
        c = self.center
        r = self.radius
        a = self.start_angle + s * self.sweep
        return (c[0] + r * math.cos(a), c[1] + r * math.sin(a))

    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def reversed(self) -> "ArcGeometry":
        return ArcGeometry(self.end, self.start, -self.bulge)

    def param_of(self, p: Point, eps: float | None = None) -> float | None:
        """Arc parameter of ``p`` if it lies on the arc, else None."""
        e = _eps(eps)
        if self.is_segment:
            dx, dy = self.end[0] - self.start[0], self.end[1] - self.start[1]
            length2 = dx * dx + dy * dy
            t = ((p[0] - self.start[0]) * dx + (p[1] - self.start[1]) * dy) / length2
            if t < -e or t > 1.0 + e:
                return None
            q = self.point_at(min(max(t, 0.0), 1.0))
            if dist(p, q) > 4.0 * e + 1e-12 * math.sqrt(length2):
                return None
            return min(max(t, 0.0), 1.0)
        c, r = self.center, self.radius
        if abs(dist(p, c) - r) > 8.0 * e + 4.0 * e * r:
            return None
        phi = math.atan2(p[1] - c[1], p[0] - c[0])
        sw = self.sweep
        tol = (8.0 * e + 4.0 * e * r) / r
        if sw > 0:
            delta = (phi - self.start_angle) % TAU
        else:
            delta = (self.start_angle - phi) % TAU
        if delta > abs(sw) + tol:
            if delta > TAU - tol:  # wrapped just below the start
                delta = 0.0
            else:
                return None
        return min(delta / abs(sw), 1.0)

    def split_at(self, params: list[float]) -> list["ArcGeometry"]:
        """Cut at increasing interior parameters, preserving direction."""
        pts = [self.start] + [self.point_at(s) for s in params] + [self.end]
        if self.is_segment:
            return [ArcGeometry(pts[i], pts[i + 1], 0.0) for i in range(len(pts) - 1)]
        bounds = [0.0] + list(params) + [1.0]
        out = []
        for i in range(len(pts) - 1):
            sub_sweep = (bounds[i + 1] - bounds[i]) * self.sweep
            out.append(ArcGeometry(pts[i], pts[i + 1], -math.tan(sub_sweep / 4.0)))
        return out

    def segment_area(self) -> float:
        """Signed area between the arc and its chord (CCW sweep positive)."""
        if self.is_segment:
            return 0.0
        r = self.radius
        sw = self.sweep
        return 0.5 * r * r * (sw - math.sin(sw))


def arc_from_bulge(start: Point, end: Point, bulge: float, eps: float | None = None) -> ArcGeometry:
    """Build an arc, checking the chord is non-degenerate."""
    if dist(start, end) <= _eps(eps):
        raise DegenerateChord(f"chord endpoints coincide: {start}")
    return ArcGeometry(start, end, float(bulge))


def tangent_direction(arc: ArcGeometry, p: Point, eps: float | None = None) -> tuple[float, float]:
    """Unit tangent at ``p`` in the arc's traversal direction."""
    if arc.is_segment:
        if arc.param_of(p, eps) is None:
            raise PointNotOnArc(f"{p} not on segment {arc.start}-{arc.end}")
        return normalize(arc.end[0] - arc.start[0], arc.end[1] - arc.start[1])
    s = arc.param_of(p, eps)
    if s is None:
        raise PointNotOnArc(f"{p} not on arc")
    return tangent_at_param(arc, s)


def tangent_at_param(arc: ArcGeometry, s: float) -> tuple[float, float]:
    if arc.is_segment:
        return normalize(arc.end[0] - arc.start[0], arc.end[1] - arc.start[1])
    c = arc.center
    a = arc.start_angle + s * arc.sweep
    # d/ds of (cos a, sin a) scaled by sweep sign
    sign = 1.0 if arc.sweep > 0 else -1.0
    return (-math.sin(a) * sign, math.cos(a) * sign)


def curvature_sign(arc: ArcGeometry) -> float:
    """+1 when the arc turns left along traversal, -1 right, 0 straight."""
    if arc.is_segment:
        return 0.0
    return 1.0 if arc.sweep > 0 else -1.0


def _segment_params(a: Point, b: Point, p: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if abs(dx) >= abs(dy):
        return (p[0] - a[0]) / dx if dx != 0 else 0.0
    return (p[1] - a[1]) / dy


def segment_segment_intersections(
    a: Point, b: Point, c: Point, d: Point, eps: float | None = None
) -> list[Point]:
    """Proper and touching intersections of closed segments ab and cd.

    Collinear overlap raises OverlapNotPointwise carrying the interval.
    """
    e = _eps(eps)
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = cross(r[0], r[1], s[0], s[1])
    acx, acy = c[0] - a[0], c[1] - a[1]
    scale = max(abs(r[0]) + abs(r[1]), abs(s[0]) + abs(s[1]), 1.0)
    if abs(denom) <= e * scale:
        if abs(cross(acx, acy, r[0], r[1])) > e * scale:
            return []  # parallel, disjoint lines
        # collinear: project c,d on ab
        t0 = _segment_params(a, b, c)
        t1 = _segment_params(a, b, d)
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        if hi < lo - e:
            return []
        p = (a[0] + lo * r[0], a[1] + lo * r[1])
        q = (a[0] + hi * r[0], a[1] + hi * r[1])
        if dist(p, q) <= e:
            return [p]
        raise OverlapNotPointwise(p, q)
    t = cross(acx, acy, s[0], s[1]) / denom
    u = cross(acx, acy, r[0], r[1]) / denom
    tol = e / scale
    if -tol <= t <= 1.0 + tol and -tol <= u <= 1.0 + tol:
        t = min(max(t, 0.0), 1.0)
        return [(a[0] + t * r[0], a[1] + t * r[1])]
    return []


def circle_line_params(
    a: Point, b: Point, center: Point, radius: float, eps: float | None = None
) -> list[float]:
    """Parameters t with |a + t(b-a) - center| = radius, tangency deduplicated."""
    e = _eps(eps)
    dx, dy = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - center[0], a[1] - center[1]
    qa = dx * dx + dy * dy
    if qa == 0.0:
        return []
    qb = 2.0 * (fx * dx + fy * dy)
    qc = fx * fx + fy * fy - radius * radius
    disc = qb * qb - 4.0 * qa * qc
    # treat a near-tangent configuration as a single touch
    tang_tol = 4.0 * e * radius * qa
    if disc < -tang_tol:
        return []
    if disc <= tang_tol:
        return [-qb / (2.0 * qa)]
    root = math.sqrt(disc)
    return sorted([(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)])


def _on_arc_filter(arc: ArcGeometry, pts: list[Point], eps: float) -> list[Point]:
    out = []
    for p in pts:
        if arc.param_of(p, eps) is not None:
            out.append(p)
    return out


def _dedup(points: list[Point], eps: float) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if not any(close(p, q, eps) for q in out):
            out.append(p)
    return out


def segment_arc_intersections(
    a: Point, b: Point, arc: ArcGeometry, eps: float | None = None
) -> list[Point]:
    """Intersections of the closed segment ab with the closed arc.

    Sorted by parameter along ab; a tangential touch yields one point.
    """
    e = _eps(eps)
    if arc.is_segment:
        return segment_segment_intersections(a, b, arc.start, arc.end, e)
    ts = circle_line_params(a, b, arc.center, arc.radius, e)
    scale = max(dist(a, b), 1e-30)
    tol = e / scale
    pts = []
    for t in ts:
        if -tol <= t <= 1.0 + tol:
            t = min(max(t, 0.0), 1.0)
            pts.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return _dedup(_on_arc_filter(arc, pts, e), e)


def line_arc_intersections(
    p: Point, q: Point, arc: ArcGeometry, eps: float | None = None
) -> list[Point]:
    """Intersections of the infinite line pq with the closed arc."""
    e = _eps(eps)
    if arc.is_segment:
        r = (q[0] - p[0], q[1] - p[1])
        s = (arc.end[0] - arc.start[0], arc.end[1] - arc.start[1])
        denom = cross(r[0], r[1], s[0], s[1])
        scale = max(abs(r[0]) + abs(r[1]), abs(s[0]) + abs(s[1]), 1.0)
        if abs(denom) <= e * scale:
            return []
        acx, acy = arc.start[0] - p[0], arc.start[1] - p[1]
        u = cross(acx, acy, r[0], r[1]) / denom
        tol = e / scale
        if -tol <= u <= 1.0 + tol:
            u = min(max(u, 0.0), 1.0)
            return [(arc.start[0] + u * s[0], arc.start[1] + u * s[1])]
        return []
    ts = circle_line_params(p, q, arc.center, arc.radius, e)
    pts = [(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])) for t in ts]
    return _dedup(_on_arc_filter(arc, pts, e), e)


def arc_arc_intersections(a1: ArcGeometry, a2: ArcGeometry, eps: float | None = None) -> list[Point]:
    """Intersection points of two arcs (segments allowed); overlaps raise."""
    e = _eps(eps)
    if a1.is_segment:
        return segment_arc_intersections(a1.start, a1.end, a2, e)
    if a2.is_segment:
        return segment_arc_intersections(a2.start, a2.end, a1, e)
    c1, r1 = a1.center, a1.radius
    c2, r2 = a2.center, a2.radius
    d = dist(c1, c2)
    if d <= e and abs(r1 - r2) <= e:
        # same supporting circle: endpoint touches only (overlap is a
        # validation failure handled by callers via endpoint checks)
        pts = [p for p in (a2.start, a2.end) if a1.param_of(p, e) is not None]
        pts += [p for p in (a1.start, a1.end) if a2.param_of(p, e) is not None]
        return _dedup(pts, e)
    if d > r1 + r2 + e or d < abs(r1 - r2) - e:
        return []
    # radical line intersection
    aa = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h2 = r1 * r1 - aa * aa
    h = math.sqrt(max(h2, 0.0))
    ux, uy = (c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d
    px, py = c1[0] + aa * ux, c1[1] + aa * uy
    cand = [(px + h * -uy, py + h * ux), (px - h * -uy, py - h * ux)]
    pts = _dedup(cand, e)
    return _dedup(_on_arc_filter(a2, _on_arc_filter(a1, pts, e), e), e)


def arc_y_extrema(arc: ArcGeometry, eps: float | None = None) -> list[Point]:
    """Interior arc points with horizontal tangent (circle top/bottom)."""
    return _arc_axis_extrema(arc, (math.pi / 2.0, -math.pi / 2.0), eps)


def arc_x_extrema(arc: ArcGeometry, eps: float | None = None) -> list[Point]:
    """Interior arc points with vertical tangent (circle left/right)."""
    return _arc_axis_extrema(arc, (0.0, math.pi), eps)


def _arc_axis_extrema(arc: ArcGeometry, angles: tuple[float, float], eps: float | None) -> list[Point]:
    if arc.is_segment:
        return []
    e = _eps(eps)
    c, r = arc.center, arc.radius
    a0, sw = arc.start_angle, arc.sweep
    tol = (8.0 * e + 4.0 * e * r) / r
    out: list[tuple[float, Point]] = []
    for phi in angles:
        if sw > 0:
            delta = (phi - a0) % TAU
        else:
            delta = (a0 - phi) % TAU
        # strictly interior: exclude parameters within tolerance of endpoints
        if tol < delta < abs(sw) - tol:
            out.append((delta, (c[0] + r * math.cos(phi), c[1] + r * math.sin(phi))))
    out.sort(key=lambda item: item[0])
    return [p for _, p in out]


def convex_hull(points: list[Point], eps: float | None = None) -> list[Point]:
    """Andrew's monotone chain; counterclockwise, collinear points dropped."""
    e = _eps(eps)
    pts = sorted(_dedup(list(points), e))
    if len(pts) <= 2:
        return pts

    def build(seq):
        chain: list[Point] = []
        for p in seq:
            while len(chain) > 1:
                o = cross(
                    chain[-1][0] - chain[-2][0],
                    chain[-1][1] - chain[-2][1],
                    p[0] - chain[-2][0],
                    p[1] - chain[-2][1],
                )
                if o <= e:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]


def point_in_convex_chain(hull: list[Point], p: Point, eps: float | None = None) -> bool:
    """Inclusive containment test against a CCW hull."""
    e = _eps(eps)
    n = len(hull)
    if n == 1:
        return close(hull[0], p, e)
    if n == 2:
        return ArcGeometry(hull[0], hull[1], 0.0).param_of(p, e) is not None
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if cross(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]) < -e * max(dist(a, b), 1.0):
            return False
    return True


def shoelace(points: list[Point]) -> float:
    total = 0.0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return 0.5 * total
