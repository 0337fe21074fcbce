#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against the pure-numpy fallbacks.

Times the two hot paths — one-sided Jacobi orthogonalization and the
latent-topic EM step — at document-like sizes.  The first jitted call pays
JIT compilation; a warmup round absorbs it before timing.

Usage:
    python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from extsum._kernels import (
    jacobi_sweeps_numba,
    jacobi_sweeps_numpy,
    plsa_step_numba,
    plsa_step_numpy,
)

# (terms, sentences): small fixture scale up to a long broadcast transcript
SIZES = [(60, 30), (300, 60), (800, 122), (1500, 150)]


def time_call(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_jacobi(repeats: int) -> None:
    print(f"\n{'jacobi sweeps':<22} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    print("-" * 58)
    rng = np.random.default_rng(0)
    for t, s in SIZES:
        a = rng.normal(size=(t, s))

        def run(kernel):
            c = np.ascontiguousarray(a.T.copy())
            vt = np.eye(s)
            kernel(c, vt, 1e-12, 60)

        if jacobi_sweeps_numba is not None:
            run(jacobi_sweeps_numba)  # warmup / compile
        t_np = time_call(lambda: run(jacobi_sweeps_numpy), repeats=repeats)
        label = f"{t}x{s}"
        if jacobi_sweeps_numba is None:
            print(f"{label:<22} {t_np * 1e3:>12.2f} {'n/a':>12} {'n/a':>9}")
            continue
        t_nb = time_call(lambda: run(jacobi_sweeps_numba), repeats=repeats)
        print(f"{label:<22} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")


def bench_plsa(repeats: int, k: int = 4) -> None:
    print(f"\n{'plsa em step (k=' + str(k) + ')':<22} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    print("-" * 58)
    rng = np.random.default_rng(1)
    for t, s in SIZES:
        counts = rng.integers(0, 4, size=(t, s)).astype(np.float64)
        p_z = np.full(k, 1.0 / k)
        p_d_z = np.full((k, s), 1.0 / s)
        p_w_z = np.full((k, t), 1.0 / t)
        nz, nd, nw = np.zeros(k), np.zeros((k, s)), np.zeros((k, t))

        if plsa_step_numba is not None:
            plsa_step_numba(counts, p_z, p_d_z, p_w_z, nz, nd, nw)  # warmup
        t_np = time_call(
            plsa_step_numpy, counts, p_z, p_d_z, p_w_z, nz, nd, nw, repeats=repeats
        )
        label = f"{t}x{s}"
        if plsa_step_numba is None:
            print(f"{label:<22} {t_np * 1e3:>12.2f} {'n/a':>12} {'n/a':>9}")
            continue
        t_nb = time_call(
            plsa_step_numba, counts, p_z, p_d_z, p_w_z, nz, nd, nw, repeats=repeats
        )
        print(f"{label:<22} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats; best is kept")
    args = parser.parse_args()
    if jacobi_sweeps_numba is None:
        print("numba path unavailable (not installed or EXTSUM_NUMBA=0); timing numpy only")
    bench_jacobi(args.repeats)
    bench_plsa(args.repeats)


if __name__ == "__main__":
    main()
