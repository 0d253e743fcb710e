"""Backend dispatch and array packing for the visibility kernels.

The hot loops live in kernels_numba (JIT) with a pure-numpy twin in
kernels_numpy; CURVIGUARD_BACKEND selects between them ("numba", "numpy",
default "auto" prefers the JIT when importable).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import geometry as g

_BACKEND = None
_BACKEND_NAME = ""


def _load(name: str):
    if name == "numba":
        from . import kernels_numba as mod
    elif name == "numpy":
        from . import kernels_numpy as mod
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    return mod


def set_backend(name: str) -> None:
    global _BACKEND, _BACKEND_NAME
    _BACKEND = _load(name)
    _BACKEND_NAME = name


def _ensure_backend():
    global _BACKEND, _BACKEND_NAME
    if _BACKEND is not None:
        return _BACKEND
    choice = os.environ.get("CURVIGUARD_BACKEND", "auto").lower() or "auto"
    if choice == "auto":
        try:
            set_backend("numba")
        except Exception:
            set_backend("numpy")
    else:
        set_backend(choice)
    return _BACKEND


def backend_name() -> str:
    _ensure_backend()
    return _BACKEND_NAME


@dataclass(frozen=True)
class PolyArrays:
    raw: np.ndarray   # (m, 10): x1 y1 x2 y2 is_arc cx cy r a0 sweep
    mono: np.ndarray  # (k, 9):  x1 y1 x2 y2 is_arc cx cy r side


def _raw_row(piece: g.ArcGeometry) -> list[float]:
    if piece.is_segment:
        return [piece.start[0], piece.start[1], piece.end[0], piece.end[1], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    c = piece.center
    return [
        piece.start[0], piece.start[1], piece.end[0], piece.end[1],
        1.0, c[0], c[1], piece.radius, piece.start_angle, piece.sweep,
    ]


def _mono_rows(piece: g.ArcGeometry) -> list[list[float]]:
    if piece.is_segment:
        return [[piece.start[0], piece.start[1], piece.end[0], piece.end[1], 0.0, 0.0, 0.0, 0.0, 0.0]]
    cuts = [s for p in g.arc_y_extrema(piece) if (s := piece.param_of(p)) is not None and 0.0 < s < 1.0]
    cuts.sort()
    rows = []
    for sub in piece.split_at(cuts):
        c = sub.center
        mid = sub.midpoint()
        side = 1.0 if mid[0] >= c[0] else -1.0
        rows.append([sub.start[0], sub.start[1], sub.end[0], sub.end[1], 1.0, c[0], c[1], sub.radius, side])
    return rows


def arrays_from_pieces(pieces: list[g.ArcGeometry]) -> PolyArrays:
    raw = np.array([_raw_row(p) for p in pieces], dtype=np.float64)
    mono = np.array(
        [row for p in pieces for row in _mono_rows(p)], dtype=np.float64
    )
    return PolyArrays(raw=raw, mono=mono)


def polygon_arrays(poly) -> PolyArrays:
    cached = poly.__dict__.get("_kernel_arrays")
    if cached is None:
        cached = arrays_from_pieces([piece for _, piece in poly.pieces()])
        poly.__dict__["_kernel_arrays"] = cached
    return cached


def point_inside(arrays: PolyArrays, x: float, y: float, eps: float) -> bool:
    mod = _ensure_backend()
    return bool(mod.point_inside(arrays.raw, arrays.mono, float(x), float(y), float(eps)))


def point_strictly_inside(arrays: PolyArrays, x: float, y: float, margin: float) -> bool:
    mod = _ensure_backend()
    return bool(mod.point_strictly_inside(arrays.raw, arrays.mono, float(x), float(y), float(margin)))


def segment_visible(arrays: PolyArrays, p, q, eps: float) -> bool:
    mod = _ensure_backend()
    return bool(
        mod.segment_visible(
            arrays.raw, arrays.mono, float(p[0]), float(p[1]), float(q[0]), float(q[1]), float(eps)
        )
    )


def visibility_matrix(arrays: PolyArrays, guards: np.ndarray, samples: np.ndarray, eps: float) -> np.ndarray:
    mod = _ensure_backend()
    guards = np.ascontiguousarray(guards, dtype=np.float64).reshape(-1, 2)
    samples = np.ascontiguousarray(samples, dtype=np.float64).reshape(-1, 2)
    return mod.visibility_matrix(arrays.raw, arrays.mono, guards, samples, float(eps))


def first_cover(arrays: PolyArrays, guards: np.ndarray, samples: np.ndarray, eps: float) -> np.ndarray:
    mod = _ensure_backend()
    guards = np.ascontiguousarray(guards, dtype=np.float64).reshape(-1, 2)
    samples = np.ascontiguousarray(samples, dtype=np.float64).reshape(-1, 2)
    return mod.first_cover(arrays.raw, arrays.mono, guards, samples, float(eps))


def warmup() -> None:
    """Trigger JIT compilation on a tiny polygon (no-op for numpy)."""
    square = [
        g.ArcGeometry((0.0, 0.0), (1.0, 0.0), 0.0),
        g.ArcGeometry((1.0, 0.0), (1.0, 1.0), 0.0),
        g.ArcGeometry((1.0, 1.0), (0.5, 1.2), -0.3),
        g.ArcGeometry((0.5, 1.2), (0.0, 1.0), -0.3),
        g.ArcGeometry((0.0, 1.0), (0.0, 0.0), 0.0),
    ]
    arrays = arrays_from_pieces(square)
    pts = np.array([[0.5, 0.5], [0.25, 0.75]])
    visibility_matrix(arrays, pts, pts, g.epsilon())
    first_cover(arrays, pts, pts, g.epsilon())
    point_inside(arrays, 0.5, 0.5, g.epsilon())
    point_strictly_inside(arrays, 0.5, 0.5, 1e-6)
