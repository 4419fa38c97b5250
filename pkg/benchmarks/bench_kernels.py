"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each row is the best of N timings per call, plus the speed-up. Outputs of the
two backends are also compared, so a row marked "MISMATCH" is a bug.
"""
import argparse
import timeit

import numpy as np

from drawgames.aesthetics import felzenszwalb_edges
from drawgames.kernels import available_backends


def cases(rng):
    pix = np.full((256, 256, 3), 255, np.uint8)
    seg = rng.integers(0, 256, (200, 4))

    def segments(k):
        def run():
            p = pix.copy()
            for x0, y0, x1, y1 in seg:
                k.paint_segment(p, int(x0), int(y0), int(x1), int(y1), 0, 0, 0, 3)
            return p
        return run

    xs = np.ascontiguousarray(rng.integers(0, 256, 400).astype(np.int64))
    ys = np.ascontiguousarray(rng.integers(0, 256, 400).astype(np.int64))

    def polyline(k):
        def run():
            p = pix.copy()
            k.paint_polyline(p, xs, ys, 0, 0, 0, 2)
            return p
        return run

    ink = np.ascontiguousarray((rng.random((256, 256)) < 0.45).astype(np.uint8))

    def components(k):
        return lambda: k.label_components(ink)

    blocks = rng.integers(0, 256, (8, 8, 3))
    rgb = np.kron(blocks, np.ones((8, 8, 1))).astype(np.uint8)
    rgb = np.clip(rgb + rng.integers(-10, 11, rgb.shape), 0, 255).astype(np.uint8)
    src, dst, weight = felzenszwalb_edges(rgb)

    def felz(k):
        return lambda: k.felzenszwalb_merge(64, 64, src, dst, weight, 300.0, 20)

    return {
        "paint_segment x200 (256px, t=3)": segments,
        "paint_polyline 400 pts": polyline,
        "label_components 256x256": components,
        "felzenszwalb_merge 64x64": felz,
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; only the python backend is available")
    names = list(backends)
    print(f"{'case':34s}" + "".join(f"{n:>12s}" for n in names) + ("   speed-up" if len(names) == 2 else ""))
    for label, make in cases(np.random.default_rng(0)).items():
        times, outs = [], []
        for n in names:
            fn = make(backends[n])
            outs.append(fn())
            number = 1 if n == "python" else 20
            times.append(min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number)
        row = f"{label:34s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(names) == 2:
            row += f"{times[0] / times[1]:10.1f}x"
            if not same(outs[0], outs[1]):
                row += "  MISMATCH"
        print(row)


if __name__ == "__main__":
    main()
