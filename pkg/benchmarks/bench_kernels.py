"""Timing comparison of the compiled and pure-Python smoothing kernels.

Runs both implementations on the same curves across a range of lengths,
checks they agree, and prints a table plus an end-to-end decomposition
timing. Usage: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from uvdkit import backend
from uvdkit._kernels_py import smooth_uniform as smooth_python
from uvdkit.decompose import DecomposerConfig, decompose
from uvdkit.trajectory import EmbeddingTrajectory

try:
    from uvdkit._kernels import smooth_uniform as smooth_compiled
except ImportError:
    smooth_compiled = None

BANDWIDTH = 0.08
LENGTHS = (64, 128, 256, 512, 1024, 2048, 8192)


def time_one(fn, values, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(values, BANDWIDTH)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    print(f"selected backend: {backend.active_backend()}")
    if smooth_compiled is None:
        print("compiled kernel not built; timing the Python path only")
    rng = np.random.default_rng(0)
    print(f"{'L':>6} {'python (us)':>12} {'compiled (us)':>14} {'speedup':>8}")
    for length in LENGTHS:
        values = rng.normal(size=length)
        repeats = max(3, 20000 // length)
        t_py = time_one(smooth_python, values, repeats)
        if smooth_compiled is not None:
            t_c = time_one(smooth_compiled, values, repeats)
            err = float(
                np.max(np.abs(smooth_compiled(values, BANDWIDTH)
                              - smooth_python(values, BANDWIDTH)))
            )
            assert err < 1e-9, f"backend mismatch at L={length}: {err}"
            print(f"{length:>6} {t_py * 1e6:>12.1f} {t_c * 1e6:>14.1f} "
                  f"{t_py / t_c:>8.2f}")
        else:
            print(f"{length:>6} {t_py * 1e6:>12.1f} {'-':>14} {'-':>8}")

    frames = rng.normal(size=(1000, 512)).astype(np.float32)
    traj = EmbeddingTrajectory(frames=frames)
    start = time.perf_counter()
    decompose(traj, DecomposerConfig())
    elapsed = time.perf_counter() - start
    print(f"\ndecompose 1000x512 random trajectory: {elapsed * 1e3:.1f} ms "
          f"({backend.active_backend()} backend)")


if __name__ == "__main__":
    main()
