"""JIT-compiled visibility kernels.

Polygon boundaries arrive as two flat float64 arrays (see kernels.polygon_arrays):

raw  (m, 10): x1 y1 x2 y2 is_arc cx cy r a0 sweep   -- one row per boundary piece
mono (k, 9):  x1 y1 x2 y2 is_arc cx cy r side       -- pieces split y-monotone
"""

import math

import numpy as np
from numba import njit

TAU = 2.0 * math.pi


@njit(cache=True)
def _point_inside_evenodd(mono, px, py):
    crossings = 0
    for i in range(mono.shape[0]):
        y1 = mono[i, 1]
        y2 = mono[i, 3]
        if y1 == y2:
            continue
        lo = y1 if y1 < y2 else y2
        hi = y2 if y2 > y1 else y1
        if lo <= py < hi:
            if mono[i, 4] == 0.0:
                t = (py - y1) / (y2 - y1)
                xint = mono[i, 0] + t * (mono[i, 2] - mono[i, 0])
            else:
                dy = py - mono[i, 6]
                d2 = mono[i, 7] * mono[i, 7] - dy * dy
                if d2 < 0.0:
                    d2 = 0.0
                xint = mono[i, 5] + mono[i, 8] * math.sqrt(d2)
            if xint > px:
                crossings += 1
    return (crossings & 1) == 1


@njit(cache=True)
def _arc_angle_contains(a0, sweep, phi, tol):
    if sweep > 0.0:
        delta = (phi - a0) % TAU
    else:
        delta = (a0 - phi) % TAU
    if delta <= abs(sweep) + tol:
        return True
    return delta >= TAU - tol


@njit(cache=True)
def _near_boundary(raw, px, py, eps):
    for i in range(raw.shape[0]):
        x1 = raw[i, 0]
        y1 = raw[i, 1]
        x2 = raw[i, 2]
        y2 = raw[i, 3]
        if raw[i, 4] == 0.0:
            ex = x2 - x1
            ey = y2 - y1
            ll = ex * ex + ey * ey
            if ll > 0.0:
                t = ((px - x1) * ex + (py - y1) * ey) / ll
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            qx = x1 + t * ex
            qy = y1 + t * ey
            d = math.hypot(px - qx, py - qy)
        else:
            cx = raw[i, 5]
            cy = raw[i, 6]
            r = raw[i, 7]
            rho = math.hypot(px - cx, py - cy)
            phi = math.atan2(py - cy, px - cx)
            if _arc_angle_contains(raw[i, 8], raw[i, 9], phi, eps / r):
                d = abs(rho - r)
            else:
                d1 = math.hypot(px - x1, py - y1)
                d2 = math.hypot(px - x2, py - y2)
                d = d1 if d1 < d2 else d2
        if d <= eps:
            return True
    return False


@njit(cache=True)
def point_inside(raw, mono, px, py, eps):
    if _point_inside_evenodd(mono, px, py):
        return True
    return _near_boundary(raw, px, py, eps)


@njit(cache=True)
def point_strictly_inside(raw, mono, px, py, margin):
    if not _point_inside_evenodd(mono, px, py):
        return False
    return not _near_boundary(raw, px, py, margin)


@njit(cache=True)
def _segment_visible(raw, mono, px, py, qx, qy, eps):
    dx = qx - px
    dy = qy - py
    seg_len = math.hypot(dx, dy)
    if seg_len <= eps:
        return True
    ts = np.empty(2 * raw.shape[0] + 2, np.float64)
    cnt = 0
    tol_t = eps / seg_len
    for i in range(raw.shape[0]):
        x1 = raw[i, 0]
        y1 = raw[i, 1]
        x2 = raw[i, 2]
        y2 = raw[i, 3]
        if raw[i, 4] == 0.0:
            ex = x2 - x1
            ey = y2 - y1
            denom = dx * ey - dy * ex
            plen = math.hypot(ex, ey)
            wx = x1 - px
            wy = y1 - py
            if abs(denom) <= 1e-14 * seg_len * plen + 1e-300:
                # parallel; collinear overlap contributes its endpoints
                if abs(wx * dy - wy * dx) <= eps * seg_len:
                    t1 = (wx * dx + wy * dy) / (seg_len * seg_len)
                    t2 = ((x2 - px) * dx + (y2 - py) * dy) / (seg_len * seg_len)
                    if t1 > t2:
                        t1, t2 = t2, t1
                    if t2 >= -tol_t and t1 <= 1.0 + tol_t:
                        ts[cnt] = min(max(t1, 0.0), 1.0)
                        cnt += 1
                        ts[cnt] = min(max(t2, 0.0), 1.0)
                        cnt += 1
                continue
            t = (wx * ey - wy * ex) / denom
            u = (wx * dy - wy * dx) / denom
            tol_u = eps / max(plen, 1e-30)
            if -tol_u <= u <= 1.0 + tol_u and -tol_t <= t <= 1.0 + tol_t:
                ts[cnt] = min(max(t, 0.0), 1.0)
                cnt += 1
        else:
            cx = raw[i, 5]
            cy = raw[i, 6]
            r = raw[i, 7]
            fx = px - cx
            fy = py - cy
            qa = dx * dx + dy * dy
            qb = 2.0 * (fx * dx + fy * dy)
            qc = fx * fx + fy * fy - r * r
            disc = qb * qb - 4.0 * qa * qc
            tang = 4.0 * eps * r * qa
            if disc < -tang:
                continue
            if disc <= tang:
                roots0 = -qb / (2.0 * qa)
                roots1 = roots0
                nroots = 1
            else:
                sq = math.sqrt(disc)
                roots0 = (-qb - sq) / (2.0 * qa)
                roots1 = (-qb + sq) / (2.0 * qa)
                nroots = 2
            for k in range(nroots):
                t = roots0 if k == 0 else roots1
                if t < -tol_t or t > 1.0 + tol_t:
                    continue
                t = min(max(t, 0.0), 1.0)
                ix = px + t * dx
                iy = py + t * dy
                phi = math.atan2(iy - cy, ix - cx)
                if _arc_angle_contains(raw[i, 8], raw[i, 9], phi, 2.0 * eps / r):
                    ts[cnt] = t
                    cnt += 1
    if cnt == 0:
        return True
    sub = np.sort(ts[:cnt])
    min_gap = 2.0 * eps / seg_len
    prev = 0.0
    for k in range(cnt + 1):
        cur = sub[k] if k < cnt else 1.0
        if cur - prev > min_gap:
            mx = px + 0.5 * (prev + cur) * dx
            my = py + 0.5 * (prev + cur) * dy
            if not _point_inside_evenodd(mono, mx, my):
                if not _near_boundary(raw, mx, my, eps):
                    return False
        if cur > prev:
            prev = cur
    return True


@njit(cache=True)
def visibility_matrix(raw, mono, guards, samples, eps):
    ng = guards.shape[0]
    ns = samples.shape[0]
    out = np.zeros((ng, ns), np.uint8)
    for a in range(ng):
        gx = guards[a, 0]
        gy = guards[a, 1]
        for b in range(ns):
            if _segment_visible(raw, mono, gx, gy, samples[b, 0], samples[b, 1], eps):
                out[a, b] = 1
    return out


@njit(cache=True)
def first_cover(raw, mono, guards, samples, eps):
    ns = samples.shape[0]
    out = np.full(ns, -1, np.int64)
    for b in range(ns):
        sx = samples[b, 0]
        sy = samples[b, 1]
        for a in range(guards.shape[0]):
            if _segment_visible(raw, mono, guards[a, 0], guards[a, 1], sx, sy, eps):
                out[b] = a
                break
    return out


@njit(cache=True)
def segment_visible(raw, mono, px, py, qx, qy, eps):
    return _segment_visible(raw, mono, px, py, qx, qy, eps)
