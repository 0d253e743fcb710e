"""Pure-numpy fallback for the visibility kernels.

Same contracts as kernels_numba; vectorized over boundary pieces per query.
Selected via CURVIGUARD_BACKEND=numpy (or automatically when numba is
unavailable).
"""

import math

import numpy as np

TAU = 2.0 * math.pi


def _point_inside_evenodd(mono, px, py):
    y1, y2 = mono[:, 1], mono[:, 3]
    lo = np.minimum(y1, y2)
    hi = np.maximum(y1, y2)
    active = (lo <= py) & (py < hi)
    if not active.any():
        return False
    rows = mono[active]
    is_arc = rows[:, 4] != 0.0
    xint = np.empty(rows.shape[0])
    seg = ~is_arc
    if seg.any():
        s = rows[seg]
        t = (py - s[:, 1]) / (s[:, 3] - s[:, 1])
        xint[seg] = s[:, 0] + t * (s[:, 2] - s[:, 0])
    if is_arc.any():
        a = rows[is_arc]
        d2 = np.maximum(a[:, 7] ** 2 - (py - a[:, 6]) ** 2, 0.0)
        xint[is_arc] = a[:, 5] + a[:, 8] * np.sqrt(d2)
    return (int(np.count_nonzero(xint > px)) & 1) == 1


def _angle_contains(a0, sweep, phi, tol):
    delta = np.where(sweep > 0.0, phi - a0, a0 - phi) % TAU
    return (delta <= np.abs(sweep) + tol) | (delta >= TAU - tol)


def _near_boundary(raw, px, py, eps):
    seg = raw[raw[:, 4] == 0.0]
    if seg.shape[0]:
        ex = seg[:, 2] - seg[:, 0]
        ey = seg[:, 3] - seg[:, 1]
        ll = np.maximum(ex * ex + ey * ey, 1e-300)
        t = np.clip(((px - seg[:, 0]) * ex + (py - seg[:, 1]) * ey) / ll, 0.0, 1.0)
        d = np.hypot(px - (seg[:, 0] + t * ex), py - (seg[:, 1] + t * ey))
        if (d <= eps).any():
            return True
    arc = raw[raw[:, 4] != 0.0]
    if arc.shape[0]:
        rho = np.hypot(px - arc[:, 5], py - arc[:, 6])
        phi = np.arctan2(py - arc[:, 6], px - arc[:, 5])
        inside_span = _angle_contains(arc[:, 8], arc[:, 9], phi, eps / arc[:, 7])
        d_arc = np.abs(rho - arc[:, 7])
        d_end = np.minimum(
            np.hypot(px - arc[:, 0], py - arc[:, 1]),
            np.hypot(px - arc[:, 2], py - arc[:, 3]),
        )
        d = np.where(inside_span, d_arc, d_end)
        if (d <= eps).any():
            return True
    return False


def point_inside(raw, mono, px, py, eps):
    return _point_inside_evenodd(mono, px, py) or _near_boundary(raw, px, py, eps)


def point_strictly_inside(raw, mono, px, py, margin):
    return _point_inside_evenodd(mono, px, py) and not _near_boundary(raw, px, py, margin)


def _crossing_params(raw, px, py, dx, dy, seg_len, eps):
    ts: list[float] = []
    tol_t = eps / seg_len
    seg_mask = raw[:, 4] == 0.0
    seg = raw[seg_mask]
    if seg.shape[0]:
        ex = seg[:, 2] - seg[:, 0]
        ey = seg[:, 3] - seg[:, 1]
        wx = seg[:, 0] - px
        wy = seg[:, 1] - py
        denom = dx * ey - dy * ex
        plen = np.hypot(ex, ey)
        par = np.abs(denom) <= 1e-14 * seg_len * plen + 1e-300
        gen = ~par
        if gen.any():
            t = (wx[gen] * ey[gen] - wy[gen] * ex[gen]) / denom[gen]
            u = (wx[gen] * dy - wy[gen] * dx) / denom[gen]
            tol_u = eps / np.maximum(plen[gen], 1e-30)
            ok = (u >= -tol_u) & (u <= 1.0 + tol_u) & (t >= -tol_t) & (t <= 1.0 + tol_t)
            ts.extend(np.clip(t[ok], 0.0, 1.0).tolist())
        if par.any():
            col = par & (np.abs(wx * dy - wy * dx) <= eps * seg_len)
            if col.any():
                s = seg[col]
                l2 = seg_len * seg_len
                t1 = ((s[:, 0] - px) * dx + (s[:, 1] - py) * dy) / l2
                t2 = ((s[:, 2] - px) * dx + (s[:, 3] - py) * dy) / l2
                lo = np.minimum(t1, t2)
                hi = np.maximum(t1, t2)
                keep = (hi >= -tol_t) & (lo <= 1.0 + tol_t)
                ts.extend(np.clip(lo[keep], 0.0, 1.0).tolist())
                ts.extend(np.clip(hi[keep], 0.0, 1.0).tolist())
    arc = raw[~seg_mask]
    if arc.shape[0]:
        fx = px - arc[:, 5]
        fy = py - arc[:, 6]
        qa = dx * dx + dy * dy
        qb = 2.0 * (fx * dx + fy * dy)
        qc = fx * fx + fy * fy - arc[:, 7] ** 2
        disc = qb * qb - 4.0 * qa * qc
        tang = 4.0 * eps * arc[:, 7] * qa
        sq = np.sqrt(np.maximum(disc, 0.0))
        cand_t = np.stack([(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)])
        single = (disc <= tang) & (disc >= -tang)
        cand_t[0, single] = (-qb[single]) / (2.0 * qa)
        cand_t[1, single] = np.nan
        cand_t[:, disc < -tang] = np.nan
        for k in range(2):
            t = cand_t[k]
            ok = ~np.isnan(t) & (t >= -tol_t) & (t <= 1.0 + tol_t)
            if not ok.any():
                continue
            tt = np.clip(t[ok], 0.0, 1.0)
            ix = px + tt * dx
            iy = py + tt * dy
            rows = arc[ok]
            phi = np.arctan2(iy - rows[:, 6], ix - rows[:, 5])
            keep = _angle_contains(rows[:, 8], rows[:, 9], phi, 2.0 * eps / rows[:, 7])
            ts.extend(tt[keep].tolist())
    return ts


def _segment_visible(raw, mono, px, py, qx, qy, eps):
    dx = qx - px
    dy = qy - py
    seg_len = math.hypot(dx, dy)
    if seg_len <= eps:
        return True
    ts = _crossing_params(raw, px, py, dx, dy, seg_len, eps)
    if not ts:
        return True
    ts.sort()
    min_gap = 2.0 * eps / seg_len
    prev = 0.0
    for cur in ts + [1.0]:
        if cur - prev > min_gap:
            mx = px + 0.5 * (prev + cur) * dx
            my = py + 0.5 * (prev + cur) * dy
            if not _point_inside_evenodd(mono, mx, my) and not _near_boundary(raw, mx, my, eps):
                return False
        if cur > prev:
            prev = cur
    return True


def segment_visible(raw, mono, px, py, qx, qy, eps):
    return _segment_visible(raw, mono, px, py, qx, qy, eps)


def visibility_matrix(raw, mono, guards, samples, eps):
    ng = guards.shape[0]
    ns = samples.shape[0]
    out = np.zeros((ng, ns), np.uint8)
    for a in range(ng):
        for b in range(ns):
            if _segment_visible(raw, mono, guards[a, 0], guards[a, 1], samples[b, 0], samples[b, 1], eps):
                out[a, b] = 1
    return out


def first_cover(raw, mono, guards, samples, eps):
    ns = samples.shape[0]
    out = np.full(ns, -1, np.int64)
    for b in range(ns):
        for a in range(guards.shape[0]):
            if _segment_visible(raw, mono, guards[a, 0], guards[a, 1], samples[b, 0], samples[b, 1], eps):
                out[b] = a
                break
    return out
