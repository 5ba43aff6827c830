"""Compare the numba kernels against the pure-numpy fallback.

Run with the package installed:

    python benchmarks/bench_kernels.py

The same module-level functions are timed in both modes; the fallback is
imported directly so one process can benchmark both without re-execing with
GANSEVAL_DISABLE_NUMBA=1.
"""

import time

import numpy as np

from ganseval import _kernels


def bench(label, fn, *args, repeat=5):
    fn(*args)  # warm-up (JIT compile for the numba path)
    best = min(
        (lambda t0: (fn(*args), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(repeat)
    )
    print(f"{label:32s} {best * 1e3:10.2f} ms")
    return best


def main():
    rng = np.random.default_rng(0)
    sources = rng.standard_normal((64, 30))
    targets = rng.standard_normal((50, 30))

    print(f"active backend: {_kernels.BACKEND}")
    print(f"workload: {sources.shape[0]} x {targets.shape[0]} pairs, T=30\n")

    pairs = [
        ("min_euclidean", _kernels._min_ed_nb if _kernels.BACKEND == "numba" else None,
         _kernels._min_ed_py),
        ("min_dtw", _kernels._min_dtw_nb if _kernels.BACKEND == "numba" else None,
         _kernels._min_dtw_py),
    ]
    for name, numba_fn, numpy_fn in pairs:
        t_np = bench(f"{name} [numpy fallback]", numpy_fn, sources, targets)
        if numba_fn is not None:
            t_nb = bench(f"{name} [numba]", numba_fn, sources, targets)
            print(f"{'':32s} speedup {t_np / t_nb:8.1f}x\n")
        else:
            print("numba backend unavailable; fallback only\n")


if __name__ == "__main__":
    main()
