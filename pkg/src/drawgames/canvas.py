"""Raster canvas, mark primitives and PPM export.

Canvases are immutable values: :func:`apply_mark` and :func:`draw` return new
canvases. :func:`paint` is the in-place builder used internally by
generators on a private, single-threaded pixel buffer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
BEZIER_STEPS = 64


class ConfigurationError(ValueError):
    """Raised for invalid sizes, shapes or parameter combinations."""


def _is_pow2(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Canvas:
    pixels: np.ndarray  # (height, width, 3) uint8, read-only

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def size(self):
        return self.width, self.height

    def __eq__(self, other):
        return isinstance(other, Canvas) and np.array_equal(self.pixels, other.pixels)

    @classmethod
    def from_array(cls, pixels):
        """Wrap an (h, w, 3) array; the array is copied and frozen."""
        arr = np.array(pixels, dtype=np.uint8, copy=True)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ConfigurationError(f"expected (h, w, 3) pixels, got {arr.shape}")
        arr.setflags(write=False)
        return cls(arr)


def new_canvas(width=256, height=256, background=WHITE):
    for n in (width, height):
        if not (isinstance(n, (int, np.integer)) and _is_pow2(int(n)) and 16 <= n <= 1024):
            raise ConfigurationError(f"canvas dimensions must be powers of two in [16, 1024], got {width}x{height}")
    pix = np.empty((height, width, 3), dtype=np.uint8)
    pix[:] = _rgb(background)
    pix.setflags(write=False)
    return Canvas(pix)


def _rgb(color):
    r, g, b = (int(c) for c in color)
    for c in (r, g, b):
        if not 0 <= c <= 255:
            raise ConfigurationError(f"color channel out of range: {color}")
    return r, g, b


@dataclass(frozen=True)
class Disc:
    cx: float
    cy: float
    radius: float
    color: tuple = BLACK

    def __post_init__(self):
        _check_finite(self.cx, self.cy, self.radius)
        if self.radius < 0:
            raise ConfigurationError("disc radius must be >= 0")


@dataclass(frozen=True)
class Segment:
    x0: float
    y0: float
    x1: float
    y1: float
    color: tuple = BLACK
    thickness: int = 1

    def __post_init__(self):
        _check_finite(self.x0, self.y0, self.x1, self.y1)
        if self.thickness < 1:
            raise ConfigurationError("thickness must be >= 1")


@dataclass(frozen=True)
class Bezier:
    p0: tuple
    p1: tuple
    p2: tuple
    p3: tuple
    color: tuple = BLACK
    thickness: int = 1

    def __post_init__(self):
        _check_finite(*self.p0, *self.p1, *self.p2, *self.p3)
        if self.thickness < 1:
            raise ConfigurationError("thickness must be >= 1")

    def points(self, steps=BEZIER_STEPS):
        t = np.linspace(0.0, 1.0, steps + 1)[:, None]
        p = [np.asarray(q, dtype=float) for q in (self.p0, self.p1, self.p2, self.p3)]
        u = 1.0 - t
        return u**3 * p[0] + 3 * u * u * t * p[1] + 3 * u * t * t * p[2] + t**3 * p[3]


def _check_finite(*vals):
    for v in vals:
        if not math.isfinite(v):
            raise ConfigurationError(f"mark coordinates must be finite, got {v}")


def _round(v):
    return int(math.floor(v + 0.5))


def _clip_segment(x0, y0, x1, y1, xmin, ymin, xmax, ymax):
    """Liang-Barsky clip; returns None when the segment misses the box."""
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    return x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy


def _paint_line(pix, x0, y0, x1, y1, color, thickness):
    h, w = pix.shape[:2]
    m = thickness + 1
    xmin, ymin, xmax, ymax = -m, -m, w - 1 + m, h - 1 + m
    if not (xmin <= min(x0, x1) and max(x0, x1) <= xmax and ymin <= min(y0, y1) and max(y0, y1) <= ymax):
        clipped = _clip_segment(x0, y0, x1, y1, xmin, ymin, xmax, ymax)
        if clipped is None:
            return
        x0, y0, x1, y1 = clipped
    kernels.paint_segment(pix, _round(x0), _round(y0), _round(x1), _round(y1), *color, int(thickness))


def _paint_polyline(pix, pts, color, thickness):
    h, w = pix.shape[:2]
    m = thickness + 1
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    if lo[0] >= -m and lo[1] >= -m and hi[0] <= w - 1 + m and hi[1] <= h - 1 + m:
        ipts = np.floor(pts + 0.5).astype(np.int64)
        kernels.paint_polyline(
            pix, np.ascontiguousarray(ipts[:, 0]), np.ascontiguousarray(ipts[:, 1]), *color, int(thickness)
        )
        return
    for (xa, ya), (xb, yb) in zip(pts[:-1], pts[1:]):
        _paint_line(pix, xa, ya, xb, yb, color, thickness)


def _paint_disc(pix, cx, cy, radius, color):
    h, w = pix.shape[:2]
    cx, cy = _round(cx), _round(cy)
    r2 = int(math.floor(radius * radius))
    reach = math.isqrt(r2)
    for y in range(max(0, cy - reach), min(h - 1, cy + reach) + 1):
        half = math.isqrt(r2 - (y - cy) ** 2)
        xa, xb = max(0, cx - half), min(w, cx + half + 1)
        if xa < xb:
            pix[y, xa:xb] = color


def paint(pix, mark):
    """Rasterize ``mark`` into the writable (h, w, 3) buffer ``pix`` in place."""
    color = _rgb(mark.color)
    if isinstance(mark, Disc):
        _paint_disc(pix, mark.cx, mark.cy, mark.radius, color)
    elif isinstance(mark, Segment):
        _paint_line(pix, mark.x0, mark.y0, mark.x1, mark.y1, color, mark.thickness)
    elif isinstance(mark, Bezier):
        _paint_polyline(pix, mark.points(), color, mark.thickness)
    else:
        raise TypeError(f"not a mark: {mark!r}")


def apply_mark(canvas, mark):
    return draw(canvas, [mark])


def draw(canvas, marks):
    pix = canvas.pixels.copy()
    for mark in marks:
        paint(pix, mark)
    pix.setflags(write=False)
    return Canvas(pix)


def grayscale(canvas):
    p = canvas.pixels.astype(np.float64)
    return (0.299 * p[..., 0] + 0.587 * p[..., 1] + 0.114 * p[..., 2]) / 255.0


def intersect_segments(a, b):
    """Intersection of closed segments ``a`` and ``b``, each ((x0, y0), (x1, y1)).

    Returns the single crossing point, the midpoint of a collinear overlap, or
    None.
    """
    a = tuple(tuple(float(c) for c in pt) for pt in a)
    b = tuple(tuple(float(c) for c in pt) for pt in b)
    if b < a:
        a, b = b, a
    (ax0, ay0), (ax1, ay1) = a
    (bx0, by0), (bx1, by1) = b
    rx, ry = ax1 - ax0, ay1 - ay0
    sx, sy = bx1 - bx0, by1 - by0
    denom = rx * sy - ry * sx
    qpx, qpy = bx0 - ax0, by0 - ay0
    if denom == 0:
        if qpx * ry - qpy * rx != 0:
            return None
        # collinear: project b's endpoints onto a's parameter
        rr = rx * rx + ry * ry
        t0 = (qpx * rx + qpy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if lo > hi:
            return None
        t = (lo + hi) / 2
        return (ax0 + t * rx, ay0 + t * ry)
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        if t in (0, 1):
            return (float(ax0 if t == 0 else ax1), float(ay0 if t == 0 else ay1))
        if u in (0, 1):
            return (float(bx0 if u == 0 else bx1), float(by0 if u == 0 else by1))
        return (ax0 + t * rx, ay0 + t * ry)
    return None


def encode_ppm(pixels):
    """Binary P6 encoding of any (h, w, 3) uint8 array."""
    arr = np.ascontiguousarray(pixels, dtype=np.uint8)
    h, w = arr.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode("ascii") + arr.tobytes()


def export_ppm(canvas):
    return encode_ppm(canvas.pixels)


class PPMError(ValueError):
    pass


def decode_ppm(data):
    """Parse a binary P6 file with maxval 255 (comments allowed in the header)."""
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < 4:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise PPMError("truncated PPM header")
        tokens.append(data[start:pos])
    pos += 1  # single whitespace byte after maxval
    if tokens[0] != b"P6":
        raise PPMError("not a binary P6 PPM")
    try:
        w, h, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise PPMError("bad PPM header") from exc
    if maxval != 255 or w <= 0 or h <= 0:
        raise PPMError("only 8-bit PPM with positive size is supported")
    body = data[pos : pos + w * h * 3]
    if len(body) != w * h * 3:
        raise PPMError("truncated PPM pixel data")
    return np.frombuffer(body, dtype=np.uint8).reshape(h, w, 3).copy()


def read_ppm(path):
    with open(path, "rb") as fh:
        return Canvas.from_array(decode_ppm(fh.read()))
