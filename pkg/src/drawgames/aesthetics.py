"""Computational aesthetic measures: pure functions from a canvas to a score.

Every measure accepts either a :class:`~drawgames.canvas.Canvas` or, for the
luminance-based ones, a precomputed 2-D luminance array in [0, 1].
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .canvas import Canvas, ConfigurationError, grayscale


class UnsupportedMeasureError(RuntimeError):
    pass


class MeasureId(str, enum.Enum):
    FillCentralCircle = "fill_circle"
    BilateralEntropy = "bilateral_entropy"
    NegativeEntropy = "negative_entropy"
    PhogSelfSimilarity = "phog_self_similarity"
    PhogComplexity = "phog_complexity"
    RegionEntropy = "region_entropy"
    RegionCount = "region_count"
    FelzenszwalbSegments = "felzenszwalb_segments"
    PowerSpectrumDistance = "power_spectrum_distance"
    FractalDimensionDistance = "fractal_dimension_distance"
    ExternalClassifierEntropy = "classifier_entropy"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        key = _ALIASES.get(key, key)
        for m in cls:
            if m.value == key or m.name.lower() == key:
                return m
        raise KeyError(f"unknown measure {name!r}")


_ALIASES = {
    "entropy": "negative_entropy",
    "fill_central_circle": "fill_circle",
    "regions": "region_count",
    "felzenszwalb": "felzenszwalb_segments",
    "spectrum": "power_spectrum_distance",
    "fractal": "fractal_dimension_distance",
    "imagenet_entropy": "classifier_entropy",
}


@dataclass(frozen=True)
class MeasureConfig:
    ink_threshold: float = 0.5
    central_circle_radius_fraction: float = 0.35
    outside_penalty: float = 1.0
    felz_k: float = 300.0
    felz_min_size: int = 20
    phog_levels: int = 3
    phog_bins: int = 16
    target_spectrum_slope: float = -2.0
    target_fractal_dimension: float = 1.7
    box_sizes: tuple | None = None  # None: every power of two from min(w, h)/2 down to 1

    def __post_init__(self):
        if not 0 <= self.ink_threshold <= 1:
            raise ConfigurationError("ink_threshold must lie in [0, 1]")
        if not 0 < self.central_circle_radius_fraction <= 0.5:
            raise ConfigurationError("central_circle_radius_fraction must lie in (0, 0.5]")
        if self.outside_penalty < 0 or self.felz_k <= 0 or self.felz_min_size < 0:
            raise ConfigurationError("invalid penalty / segmentation parameters")
        if self.phog_levels < 1 or self.phog_bins < 1:
            raise ConfigurationError("phog_levels and phog_bins must be >= 1")
        if self.box_sizes is not None:
            sizes = tuple(int(s) for s in self.box_sizes)
            if any(s <= 0 or s & (s - 1) for s in sizes) or list(sizes) != sorted(sizes, reverse=True):
                raise ConfigurationError("box_sizes must be descending powers of two")
            object.__setattr__(self, "box_sizes", sizes)


DEFAULT_CONFIG = MeasureConfig()


def _lum(image):
    if isinstance(image, Canvas):
        return grayscale(image)
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 3:
        return grayscale(Canvas.from_array(arr))
    return arr


def ink_mask(image, config=DEFAULT_CONFIG):
    return _lum(image) < config.ink_threshold


def circle_mask(width, height, radius_fraction):
    """Pixels within the central circle, using the same integer rule as a Disc."""
    cx, cy = width // 2, height // 2
    r = radius_fraction * min(width, height)
    r2 = math.floor(r * r)
    ys, xs = np.ogrid[:height, :width]
    return (xs - cx) ** 2 + (ys - cy) ** 2 <= r2


def fill_central_circle(image, config=DEFAULT_CONFIG):
    ink = ink_mask(image, config)
    h, w = ink.shape
    inside = circle_mask(w, h, config.central_circle_radius_fraction)
    n_in = inside.sum()
    n_out = inside.size - n_in
    frac_in = ink[inside].sum() / n_in if n_in else 0.0
    frac_out = ink[~inside].sum() / n_out if n_out else 0.0
    return float(min(1.0, max(0.0, frac_in - config.outside_penalty * frac_out)))


def _histogram_entropy(counts):
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(max(0.0, -(p * np.log2(p)).sum()))


def luminance_levels(image):
    return np.clip(np.rint(_lum(image) * 255.0), 0, 255).astype(np.int64)


def shannon_entropy(image):
    return _histogram_entropy(np.bincount(luminance_levels(image).ravel(), minlength=256))


def bilateral_entropy(image):
    levels = luminance_levels(image)
    h, w = levels.shape
    halves = (levels[:, : w // 2], levels[:, w // 2 :], levels[: h // 2], levels[h // 2 :])
    return float(np.mean([_histogram_entropy(np.bincount(p.ravel(), minlength=256)) for p in halves]))


@dataclass
class Regions:
    labels: np.ndarray
    count: int
    entropy: float


def region_labels(image, config=DEFAULT_CONFIG):
    ink = ink_mask(image, config).astype(np.uint8)
    labels, count = kernels.label_components(np.ascontiguousarray(ink))
    sizes = np.bincount(labels.ravel(), minlength=count)
    return Regions(labels, int(count), _histogram_entropy(sizes))


def _rgb_array(image):
    if isinstance(image, Canvas):
        return image.pixels
    arr = np.asarray(image)
    if arr.ndim == 2:
        g = np.clip(np.rint(arr * 255), 0, 255).astype(np.uint8)
        return np.repeat(g[:, :, None], 3, axis=2)
    return arr.astype(np.uint8)


def felzenszwalb_edges(rgb):
    """8-connected pixel graph in processing order.

    Returns (source, target, weight) with edges sorted by weight, ties by
    row-major source index then target index.
    """
    h, w = rgb.shape[:2]
    px = rgb.astype(np.int64)
    idx = np.arange(h * w, dtype=np.int64).reshape(h, w)
    parts = []
    for dy, dx in ((0, 1), (1, -1), (1, 0), (1, 1)):
        ys = slice(0, h - dy)
        xs = slice(max(0, -dx), w - max(0, dx))
        yt = slice(dy, h)
        xt = slice(max(0, dx), w - max(0, -dx))
        d = px[ys, xs] - px[yt, xt]
        parts.append((idx[ys, xs].ravel(), idx[yt, xt].ravel(), (d * d).sum(axis=2).ravel()))
    src = np.concatenate([p[0] for p in parts])
    dst = np.concatenate([p[1] for p in parts])
    w2 = np.concatenate([p[2] for p in parts])
    order = np.lexsort((dst, src, w2))
    return (
        src[order].astype(np.int32),
        dst[order].astype(np.int32),
        np.sqrt(w2[order].astype(np.float64)),
    )


def felzenszwalb_segments(image, config=DEFAULT_CONFIG):
    """Graph-based segmentation; returns (segment count, label grid)."""
    rgb = _rgb_array(image)
    h, w = rgb.shape[:2]
    src, dst, weight = felzenszwalb_edges(rgb)
    labels, count = kernels.felzenszwalb_merge(
        h, w, src, dst, weight, float(config.felz_k), int(config.felz_min_size)
    )
    return int(count), labels


def image_gradients(lum):
    """Central differences with edge replication."""
    p = np.pad(lum, 1, mode="edge")
    gx = (p[1:-1, 2:] - p[1:-1, :-2]) / 2.0
    gy = (p[2:, 1:-1] - p[:-2, 1:-1]) / 2.0
    return gx, gy


def phog_histograms(image, config=DEFAULT_CONFIG):
    """L1-normalized orientation histograms for levels 0..phog_levels.

    Returns a list; entry ``l`` has shape (2**l, 2**l, bins).
    """
    lum = _lum(image)
    h, w = lum.shape
    bins = config.phog_bins
    gx, gy = image_gradients(lum)
    mag = np.hypot(gx, gy)
    ori = np.mod(np.arctan2(gy, gx), np.pi)
    b = np.minimum((ori / np.pi * bins).astype(np.int64), bins - 1)
    ys, xs = np.mgrid[:h, :w]
    out = []
    for level in range(config.phog_levels + 1):
        n = 2**level
        cell = (ys * n // h) * n + (xs * n // w)
        hist = np.bincount((cell * bins + b).ravel(), weights=mag.ravel(), minlength=n * n * bins)
        hist = hist.reshape(n, n, bins)
        total = hist.sum(axis=2, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            hist = np.where(total > 0, hist / np.where(total > 0, total, 1.0), 1.0 / bins)
        out.append(hist)
    return out


def phog_features(image, config=DEFAULT_CONFIG):
    """Return (self_similarity, complexity)."""
    lum = _lum(image)
    hists = phog_histograms(lum, config)
    sims = []
    for level in range(1, len(hists)):
        child = hists[level]
        parent = np.repeat(np.repeat(hists[level - 1], 2, axis=0), 2, axis=1)
        sims.append(np.minimum(child, parent).sum(axis=2).ravel())
    self_similarity = float(np.clip(np.median(np.concatenate(sims)), 0.0, 1.0))
    gx, gy = image_gradients(lum)
    complexity = float(np.hypot(gx, gy).mean())
    return self_similarity, complexity


def radial_power_spectrum(image):
    """Radially averaged power of mean-subtracted luminance.

    Returns (frequencies, power) for integer annuli 1..N/2, DC excluded.
    """
    lum = _lum(image)
    h, w = lum.shape
    f = np.fft.fft2(lum - lum.mean())
    power = (f.real**2 + f.imag**2).ravel()
    n = min(h, w)
    ky = np.fft.fftfreq(h) * n
    kx = np.fft.fftfreq(w) * n
    radius = np.rint(np.hypot(ky[:, None], kx[None, :])).astype(np.int64).ravel()
    keep = (radius >= 1) & (radius <= n // 2)
    sums = np.bincount(radius[keep], weights=power[keep], minlength=n // 2 + 1)
    counts = np.bincount(radius[keep], minlength=n // 2 + 1)
    freqs = np.arange(1, n // 2 + 1)
    return freqs, sums[1:] / np.maximum(counts[1:], 1)


def spectrum_slope(image):
    """Least-squares slope of log power against log frequency on [2, N/4]."""
    freqs, power = radial_power_spectrum(image)
    n = 2 * len(freqs)
    sel = (freqs >= 2) & (freqs <= n // 4) & (power > 0)
    if sel.sum() < 2:
        return 0.0
    return float(np.polyfit(np.log(freqs[sel]), np.log(power[sel]), 1)[0])


def power_spectrum_distance(image, config=DEFAULT_CONFIG):
    return abs(spectrum_slope(image) - config.target_spectrum_slope)


def default_box_sizes(width, height):
    n = min(width, height)
    sizes = []
    s = n // 2
    while s >= 1:
        sizes.append(s)
        s //= 2
    return tuple(sizes)


def box_counts(ink, sizes):
    h, w = ink.shape
    counts = []
    for s in sizes:
        hh, ww = -(-h // s) * s, -(-w // s) * s
        padded = np.zeros((hh, ww), dtype=bool)
        padded[:h, :w] = ink
        counts.append(int(padded.reshape(hh // s, s, ww // s, s).any(axis=(1, 3)).sum()))
    return counts


def box_counting_dimension(image, config=DEFAULT_CONFIG):
    ink = ink_mask(image, config)
    h, w = ink.shape
    sizes = config.box_sizes or default_box_sizes(w, h)
    if len(sizes) < 3:
        raise ConfigurationError("box counting needs at least 3 box sizes")
    if not ink.any():
        return 0.0
    counts = box_counts(ink, sizes)
    x = np.log(1.0 / np.asarray(sizes, dtype=np.float64))
    y = np.log(np.asarray(counts, dtype=np.float64))
    slope = np.polyfit(x, y, 1)[0]
    return float(min(2.0, max(0.0, slope)))


_classifier = None


def register_classifier(fn):
    """Install ``fn(canvas) -> probability vector`` for the classifier-entropy measure."""
    global _classifier
    _classifier = fn


def clear_classifier():
    register_classifier(None)


def classifier_entropy(canvas):
    if _classifier is None:
        raise UnsupportedMeasureError("classifier_entropy needs a registered classifier hook")
    probs = np.asarray(_classifier(canvas), dtype=np.float64).ravel()
    if probs.size == 0 or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-6:
        raise ValueError("classifier hook must return a probability vector summing to 1")
    return _histogram_entropy(probs)


def evaluate(image, measure_id, config=DEFAULT_CONFIG):
    m = MeasureId.parse(measure_id)
    if m is MeasureId.ExternalClassifierEntropy:
        if not isinstance(image, Canvas):
            image = Canvas.from_array(_rgb_array(image))
        return classifier_entropy(image)
    if m is MeasureId.FelzenszwalbSegments:
        return float(felzenszwalb_segments(image, config)[0])
    lum = _lum(image)
    if m is MeasureId.FillCentralCircle:
        return fill_central_circle(lum, config)
    if m is MeasureId.BilateralEntropy:
        return bilateral_entropy(lum)
    if m is MeasureId.NegativeEntropy:
        return -shannon_entropy(lum)
    if m is MeasureId.PhogSelfSimilarity:
        return phog_features(lum, config)[0]
    if m is MeasureId.PhogComplexity:
        return phog_features(lum, config)[1]
    if m is MeasureId.RegionEntropy:
        return region_labels(lum, config).entropy
    if m is MeasureId.RegionCount:
        return float(region_labels(lum, config).count)
    if m is MeasureId.PowerSpectrumDistance:
        return power_spectrum_distance(lum, config)
    if m is MeasureId.FractalDimensionDistance:
        return abs(box_counting_dimension(lum, config) - config.target_fractal_dimension)
    raise UnsupportedMeasureError(str(m))


def evaluate_many(image, measure_ids, config=DEFAULT_CONFIG):
    """Evaluate several measures on one image, sharing the luminance pass."""
    needs_rgb = any(
        MeasureId.parse(m) in (MeasureId.FelzenszwalbSegments, MeasureId.ExternalClassifierEntropy)
        for m in measure_ids
    )
    src = image if needs_rgb else _lum(image)
    return [evaluate(src, m, config) for m in measure_ids]
