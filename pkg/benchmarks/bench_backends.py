#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths (Bernstein basis rows, sliding-window range scan)
on both backends and a representative end-to-end operator evaluation.
JIT compilation is excluded by a warmup pass.

Run:  python benchmarks/bench_backends.py
"""
import time

import numpy as np

from bdops import backend
from bdops.functions import G3
from bdops.operators import _integral_vector_cached, apply_grid, tilde3


def best_of(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rows(name):
    print(f"  bernstein_rows ({name})")
    for m, npts in [(64, 401), (512, 401), (4094, 160)]:
        xs = np.linspace(1e-3, 1 - 1e-3, npts)
        dt = best_of(lambda: backend.bernstein_rows(m, xs))
        cells = (m + 1) * npts
        print(f"    m={m:5d} x{npts:4d} points: {dt * 1e3:8.2f} ms "
              f"({cells / dt / 1e6:7.1f} M cells/s)")


def bench_window(name):
    print(f"  window_range_max ({name})")
    rng = np.random.default_rng(0)
    for size, w in [(4097, 409), (65537, 20000)]:
        v = np.cumsum(rng.standard_normal(size))
        dt = best_of(lambda: backend.window_range_max(v, w))
        print(f"    {size:6d} values, window {w:5d}: {dt * 1e3:8.2f} ms")


def bench_operator(name):
    xs = np.linspace(0.0, 1.0, 401)
    spec = tilde3(256)

    def run():
        _integral_vector_cached.cache_clear()
        apply_grid(spec, G3, xs)

    dt = best_of(run, repeats=3)
    print(f"  tilde3(n=256) on g3 over 401 points ({name}): {dt * 1e3:8.2f} ms")


def main():
    for name in backend.available_backends():
        backend.set_backend(name)
        backend.warmup()
        print(f"backend: {name}")
        bench_rows(name)
        bench_window(name)
        bench_operator(name)
        print()


if __name__ == "__main__":
    main()
