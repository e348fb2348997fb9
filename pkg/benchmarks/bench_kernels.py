#!/usr/bin/env python3
"""Time the compiled kernels against the pure numpy fallback.

Runs pair_stats on float lists of a few sizes and hsd_max_stats on a
consistency-sized grid, then prints per-call times for both backends and
the speedup. The compiled backend is optional; if the extension is not
built the script says so and times the fallback alone.
"""

import time

import numpy as np

from quantdiv import _pykernels

try:
    from quantdiv import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeat: int) -> float:
    start = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - start) / repeat


def bench_pair_stats(backend, rng, n: int, repeat: int) -> float:
    xs = np.ascontiguousarray(rng.normal(size=n))
    ys = np.ascontiguousarray(rng.normal(size=n))
    return timeit(lambda: backend.pair_stats(xs, ys, 0.0), repeat)


def bench_hsd(backend, rng, measures: int, trials: int, rounds: int, repeat: int) -> float:
    values = np.ascontiguousarray(rng.random((measures, trials)))
    base = np.broadcast_to(
        np.arange(measures, dtype=np.intp), (rounds, trials, measures)
    ).copy()
    perms = np.ascontiguousarray(rng.permuted(base, axis=2))
    out = np.empty(rounds)
    return timeit(lambda: backend.hsd_max_stats(values, perms, out), repeat)


def main() -> None:
    rng = np.random.default_rng(0)
    rows = []
    cases = [
        ("pair_stats n=25", lambda b: bench_pair_stats(b, rng, 25, 2000)),
        ("pair_stats n=200", lambda b: bench_pair_stats(b, rng, 200, 200)),
        ("pair_stats n=2000", lambda b: bench_pair_stats(b, rng, 2000, 5)),
        ("hsd 12x1000x256", lambda b: bench_hsd(b, rng, 12, 1000, 256, 5)),
    ]
    for label, fn in cases:
        py = fn(_pykernels)
        cy = fn(_ckernels) if _ckernels is not None else None
        rows.append((label, py, cy))

    print(f"{'case':<20} {'python':>12} {'cython':>12} {'speedup':>9}")
    for label, py, cy in rows:
        if cy is None:
            print(f"{label:<20} {py * 1e6:>10.1f}us {'n/a':>12} {'n/a':>9}")
        else:
            print(f"{label:<20} {py * 1e6:>10.1f}us {cy * 1e6:>10.1f}us {py / cy:>8.1f}x")
    if _ckernels is None:
        print("\ncompiled extension not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
