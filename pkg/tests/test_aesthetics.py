import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drawgames import aesthetics as A
from drawgames.aesthetics import MeasureConfig, MeasureId, UnsupportedMeasureError, evaluate
from drawgames.canvas import BLACK, WHITE, Canvas, Disc, apply_mark, draw, new_canvas

from oracles import (
    box_count_oracle,
    entropy_oracle,
    ink_to_lum,
    reference_felzenszwalb,
    region_oracle,
    sierpinski,
)


def noise_canvas(n=256, seed=0):
    g = np.random.default_rng(seed).integers(0, 256, (n, n), dtype=np.uint8)
    return Canvas.from_array(np.repeat(g[:, :, None], 3, axis=2))


def halves():
    pix = np.full((64, 64, 3), 255, np.uint8)
    pix[:, :32] = 0
    return Canvas.from_array(pix)


# --- fill central circle ----------------------------------------------------


def test_fill_circle_cases():
    cfg = MeasureConfig()
    assert A.fill_central_circle(new_canvas(64, 64), cfg) == 0.0
    assert A.fill_central_circle(new_canvas(64, 64, BLACK), cfg) == 0.0
    target = apply_mark(new_canvas(64, 64), Disc(32, 32, 0.35 * 64))
    assert A.fill_central_circle(target, cfg) == 1.0


def test_fill_circle_penalty_monotone():
    base = apply_mark(new_canvas(64, 64), Disc(32, 32, 10))
    scores = []
    for n in range(0, 60, 6):
        c = draw(base, [Disc(2 + (i % 6) * 2, 2 + (i // 6) * 2, 0) for i in range(n)])
        scores.append(A.fill_central_circle(c))
    assert all(a >= b for a, b in zip(scores, scores[1:]))


# --- entropy --------------------------------------------------------------------


def test_entropy_cases():
    assert A.shannon_entropy(new_canvas(32, 32)) == 0.0
    assert A.shannon_entropy(halves()) == pytest.approx(1.0, abs=1e-12)
    assert A.shannon_entropy(noise_canvas()) == pytest.approx(8.0, abs=0.05)


@pytest.mark.parametrize("seed", range(4))
def test_entropy_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    pix = rng.integers(0, 256, (32, 32, 3), dtype=np.uint8)
    c = Canvas.from_array(pix)
    assert A.shannon_entropy(c) == pytest.approx(entropy_oracle(A.luminance_levels(c)), abs=1e-12)


def test_bilateral_entropy():
    assert A.bilateral_entropy(new_canvas(32, 32)) == 0.0
    assert A.bilateral_entropy(halves()) == pytest.approx(0.5, abs=1e-12)
    assert 0 <= A.bilateral_entropy(noise_canvas(64)) <= 8


# --- regions ----------------------------------------------------------------------


def test_region_cases():
    r = A.region_labels(new_canvas(32, 32))
    assert (r.count, r.entropy) == (1, 0.0)
    two = draw(new_canvas(64, 64), [Disc(15, 15, 5), Disc(45, 45, 5)])
    assert A.region_labels(two).count == 3


def test_checkerboard_regions():
    ink = (np.indices((16, 16)) // 8).sum(axis=0) % 2 == 1
    r = A.region_labels(ink_to_lum(ink))
    n, ent = region_oracle(ink)
    assert r.count == n == 4
    assert r.entropy == pytest.approx(ent, abs=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_regions_match_flood_fill(seed):
    ink = np.random.default_rng(seed).random((40, 40)) < 0.4
    r = A.region_labels(ink_to_lum(ink))
    n, ent = region_oracle(ink)
    assert r.count == n and r.entropy == pytest.approx(ent, abs=1e-12)


# --- Felzenszwalb -------------------------------------------------------------------


def test_felzenszwalb_cases():
    cfg = MeasureConfig()
    assert A.felzenszwalb_segments(new_canvas(32, 32), cfg)[0] == 1
    pix = np.zeros((64, 64, 3), np.uint8)
    pix[:, :32, 0] = 255
    pix[:, 32:, 2] = 255
    assert A.felzenszwalb_segments(Canvas.from_array(pix), cfg)[0] == 2


def test_felzenszwalb_bands_match_reference():
    pix = np.zeros((24, 24, 3), np.uint8)
    pix[:, :8] = (200, 30, 30)
    pix[:, 8:16] = (30, 200, 30)
    pix[:, 16:] = (30, 30, 200)
    n, labels = A.felzenszwalb_segments(Canvas.from_array(pix))
    n_ref, _ = reference_felzenszwalb(pix, 300.0, 20)
    assert n == n_ref == 3
    assert len(np.unique(labels)) == n and labels.shape == (24, 24)


# --- PHOG -------------------------------------------------------------------------


def test_phog_constant():
    assert A.phog_features(new_canvas(64, 64)) == (1.0, 0.0)


def test_phog_tiled_beats_noise():
    cfg = MeasureConfig(phog_levels=2)
    patch = np.random.default_rng(1).random((64, 64))
    tiled = A.phog_features(np.tile(patch, (4, 4)), cfg)[0]
    noise = A.phog_features(np.random.default_rng(2).random((256, 256)), cfg)[0]
    assert tiled >= noise


def test_phog_complexity_edge_oracle():
    lum = np.ones((32, 32))
    lum[:, :16] = 0.0
    # central differences with edge replication: columns 15 and 16 carry |g| = 0.5
    expected = 2 * 32 * 0.5 / (32 * 32)
    assert A.phog_features(lum)[1] == pytest.approx(expected, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_phog_similarity_bounded(seed):
    lum = np.random.default_rng(seed).random((32, 32)) ** 3
    s, c = A.phog_features(lum)
    assert 0.0 <= s <= 1.0 and c >= 0


# --- power spectrum -----------------------------------------------------------------


def test_spectrum_noise_and_constant():
    c = noise_canvas()
    assert A.power_spectrum_distance(c, MeasureConfig(target_spectrum_slope=-2.0)) == pytest.approx(2.0, abs=0.25)
    assert A.power_spectrum_distance(c, MeasureConfig(target_spectrum_slope=0.0)) == pytest.approx(0.0, abs=0.25)
    assert A.power_spectrum_distance(new_canvas(64, 64)) == 2.0


def test_spectrum_of_brown_noise_is_steep():
    rng = np.random.default_rng(4)
    n = 128
    f = np.fft.fftfreq(n)
    r = np.hypot(f[:, None], f[None, :])
    r[0, 0] = 1.0
    field = np.fft.ifft2(np.fft.fft2(rng.normal(size=(n, n))) / r).real
    assert A.spectrum_slope(field) == pytest.approx(-2.0, abs=0.25)


# --- box counting ---------------------------------------------------------------------


def test_box_counting_fixtures():
    full = np.ones((256, 256), bool)
    line = np.zeros((256, 256), bool)
    line[100] = True
    assert A.box_counting_dimension(ink_to_lum(full)) == pytest.approx(2.0, abs=0.05)
    assert A.box_counting_dimension(ink_to_lum(line)) == pytest.approx(1.0, abs=0.05)
    assert A.box_counting_dimension(ink_to_lum(sierpinski())) == pytest.approx(np.log(3) / np.log(2), abs=0.1)
    assert A.box_counting_dimension(new_canvas(64, 64)) == 0.0


@pytest.mark.parametrize("seed", range(3))
def test_box_counting_matches_loop_oracle(seed):
    ink = np.random.default_rng(seed).random((64, 64)) < 0.05
    sizes = A.default_box_sizes(64, 64)
    assert A.box_counting_dimension(ink_to_lum(ink)) == pytest.approx(
        min(2.0, max(0.0, box_count_oracle(ink, sizes))), abs=1e-9
    )


def test_box_counting_upscale():
    ink = sierpinski(128)
    up = np.kron(ink, np.ones((2, 2), bool))
    assert abs(A.box_counting_dimension(ink_to_lum(up)) - A.box_counting_dimension(ink_to_lum(ink))) <= 0.1


def test_box_sizes_validation():
    with pytest.raises(ValueError):
        MeasureConfig(box_sizes=(8, 6, 2))
    with pytest.raises(ValueError):
        A.box_counting_dimension(np.zeros((16, 16)), MeasureConfig(box_sizes=(4, 2)))


# --- invariances and dispatch ------------------------------------------------------------


@pytest.mark.parametrize("op", [np.rot90, np.fliplr, np.flipud, np.transpose])
def test_isometry_invariance(op):
    rng = np.random.default_rng(9)
    lum = np.where(rng.random((64, 64)) < 0.3, 0.0, 1.0) * rng.random((64, 64))
    t = op(lum)
    assert A.shannon_entropy(t) == A.shannon_entropy(lum)
    assert A.region_labels(t).count == A.region_labels(lum).count
    assert A.box_counting_dimension(t) == pytest.approx(A.box_counting_dimension(lum), abs=1e-9)


def test_measures_are_pure():
    c = noise_canvas(64, 3)
    for m in MeasureId:
        if m is MeasureId.ExternalClassifierEntropy:
            continue
        assert evaluate(c, m) == evaluate(c, m)
        assert np.isfinite(evaluate(c, m))


def test_dispatch():
    blank = new_canvas(32, 32)
    assert evaluate(blank, MeasureId.NegativeEntropy) == 0.0
    assert evaluate(blank, "region_count") == 1
    assert MeasureId.parse("entropy") is MeasureId.NegativeEntropy
    with pytest.raises(UnsupportedMeasureError):
        evaluate(blank, MeasureId.ExternalClassifierEntropy)
    with pytest.raises(KeyError):
        MeasureId.parse("beauty")


def test_classifier_hook():
    A.register_classifier(lambda c: np.array([0.5, 0.25, 0.25]))
    try:
        assert evaluate(new_canvas(16, 16), "classifier_entropy") == pytest.approx(1.5)
        A.register_classifier(lambda c: np.array([0.5, 0.2]))
        with pytest.raises(ValueError):
            evaluate(new_canvas(16, 16), "classifier_entropy")
    finally:
        A.clear_classifier()


def test_evaluate_many_matches_evaluate():
    c = draw(new_canvas(64, 64, WHITE), [Disc(20, 30, 9, (255, 0, 0)), Disc(40, 30, 9, BLACK)])
    ids = list(MeasureId)[:-1]
    assert A.evaluate_many(c, ids) == [evaluate(c, m) for m in ids]
