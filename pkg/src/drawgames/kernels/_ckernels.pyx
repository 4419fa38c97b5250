# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled raster and segmentation kernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef cnp.uint8_t u8
ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


def paint_segment(u8[:, :, ::1] pix, i64 x0, i64 y0, i64 x1, i64 y1,
                  int r, int g, int b, int thickness):
    _segment(pix, x0, y0, x1, y1, r, g, b, thickness)


def paint_polyline(u8[:, :, ::1] pix, i64[::1] xs, i64[::1] ys,
                   int r, int g, int b, int thickness):
    cdef Py_ssize_t i
    for i in range(xs.shape[0] - 1):
        _segment(pix, xs[i], ys[i], xs[i + 1], ys[i + 1], r, g, b, thickness)


cdef void _segment(u8[:, :, ::1] pix, i64 x0, i64 y0, i64 x1, i64 y1,
                   int r, int g, int b, int thickness) noexcept:
    cdef Py_ssize_t h = pix.shape[0], w = pix.shape[1]
    cdef i64 dx = x1 - x0 if x1 >= x0 else x0 - x1
    cdef i64 dy = -(y1 - y0 if y1 >= y0 else y0 - y1)
    cdef i64 sx = 1 if x0 < x1 else -1
    cdef i64 sy = 1 if y0 < y1 else -1
    cdef i64 err = dx + dy, e2
    cdef i64 lo = -((thickness - 1) // 2), hi = thickness // 2
    cdef i64 x = x0, y = y0, px, py
    while True:
        for py in range(y + lo, y + hi + 1):
            if py < 0 or py >= h:
                continue
            for px in range(x + lo, x + hi + 1):
                if px < 0 or px >= w:
                    continue
                pix[py, px, 0] = r
                pix[py, px, 1] = g
                pix[py, px, 2] = b
        if x == x1 and y == y1:
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


cdef inline i32 _find(i32[::1] parent, i32 a) noexcept nogil:
    cdef i32 root = a, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


cdef tuple _relabel(i32[::1] parent, Py_ssize_t h, Py_ssize_t w):
    cdef Py_ssize_t n = h * w, i
    cdef i32 root, count = 0
    out = np.empty(n, dtype=np.int32)
    cdef i32[::1] o = out
    remap = np.full(n, -1, dtype=np.int32)
    cdef i32[::1] rm = remap
    for i in range(n):
        root = _find(parent, <i32>i)
        if rm[root] < 0:
            rm[root] = count
            count += 1
        o[i] = rm[root]
    return out.reshape(h, w), int(count)


def label_components(u8[:, ::1] binary):
    """4-connected components of equal-valued pixels, labelled in row-major
    order of first appearance."""
    cdef Py_ssize_t h = binary.shape[0], w = binary.shape[1], y, x
    parent_arr = np.arange(h * w, dtype=np.int32)
    cdef i32[::1] parent = parent_arr
    cdef i32 a, b, p
    for y in range(h):
        for x in range(w):
            p = <i32>(y * w + x)
            if x + 1 < w and binary[y, x] == binary[y, x + 1]:
                a = _find(parent, p)
                b = _find(parent, p + 1)
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
            if y + 1 < h and binary[y, x] == binary[y + 1, x]:
                a = _find(parent, p)
                b = _find(parent, <i32>(p + w))
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
    return _relabel(parent, h, w)


def felzenszwalb_merge(Py_ssize_t h, Py_ssize_t w, i32[::1] src, i32[::1] dst,
                       double[::1] weight, double k, int min_size):
    """Greedy merging over edges already sorted into processing order."""
    cdef Py_ssize_t n = h * w, m = src.shape[0], e
    parent_arr = np.arange(n, dtype=np.int32)
    cdef i32[::1] parent = parent_arr
    size_arr = np.ones(n, dtype=np.int64)
    cdef i64[::1] size = size_arr
    thr_arr = np.full(n, k, dtype=np.float64)
    cdef double[::1] thr = thr_arr
    cdef i32 a, b
    cdef double wt
    for e in range(m):
        a = _find(parent, src[e])
        b = _find(parent, dst[e])
        if a == b:
            continue
        wt = weight[e]
        if wt <= thr[a] and wt <= thr[b]:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            thr[a] = wt + k / size[a]
    for e in range(m):
        a = _find(parent, src[e])
        b = _find(parent, dst[e])
        if a != b and (size[a] < min_size or size[b] < min_size):
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    return _relabel(parent, h, w)
