"""Pure-Python implementations of the raster and segmentation kernels.

Behaviour is identical to the compiled module; only speed differs.
"""
import numpy as np
from scipy import ndimage

_FOUR = ndimage.generate_binary_structure(2, 1)


def paint_segment(pix, x0, y0, x1, y1, r, g, b, thickness):
    h, w = pix.shape[:2]
    color = (r, g, b)
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    lo = -((thickness - 1) // 2)
    hi = thickness // 2
    x, y = x0, y0
    while True:
        ya, yb = max(y + lo, 0), min(y + hi + 1, h)
        xa, xb = max(x + lo, 0), min(x + hi + 1, w)
        if ya < yb and xa < xb:
            pix[ya:yb, xa:xb] = color
        if x == x1 and y == y1:
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


def paint_polyline(pix, xs, ys, r, g, b, thickness):
    for i in range(len(xs) - 1):
        paint_segment(pix, int(xs[i]), int(ys[i]), int(xs[i + 1]), int(ys[i + 1]), r, g, b, thickness)


def _first_occurrence_order(labels):
    flat = labels.ravel()
    uniq, first = np.unique(flat, return_index=True)
    remap = np.empty(uniq.max() + 1, dtype=np.int32)
    remap[uniq[np.argsort(first, kind="stable")]] = np.arange(len(uniq), dtype=np.int32)
    return remap[flat].reshape(labels.shape), len(uniq)


def label_components(binary):
    binary = np.asarray(binary)
    combined = np.zeros(binary.shape, dtype=np.int64)
    offset = 0
    for value in np.unique(binary):
        lab, n = ndimage.label(binary == value, structure=_FOUR)
        combined[lab > 0] = lab[lab > 0] + offset
        offset += n
    return _first_occurrence_order(combined)


def _find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        parent[a], a = root, parent[a]
    return root


def felzenszwalb_merge(h, w, src, dst, weight, k, min_size):
    n = h * w
    parent = list(range(n))
    size = [1] * n
    thr = [k] * n
    src = src.tolist()
    dst = dst.tolist()
    weight = weight.tolist()
    for s, d, wt in zip(src, dst, weight):
        a = _find(parent, s)
        b = _find(parent, d)
        if a == b:
            continue
        if wt <= thr[a] and wt <= thr[b]:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            thr[a] = wt + k / size[a]
    for s, d in zip(src, dst):
        a = _find(parent, s)
        b = _find(parent, d)
        if a != b and (size[a] < min_size or size[b] < min_size):
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    roots = np.fromiter((_find(parent, i) for i in range(n)), dtype=np.int64, count=n)
    return _first_occurrence_order(roots.reshape(h, w))
