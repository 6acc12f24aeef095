"""Benchmark the forcing-closure kernel: numpy backend vs numba backend.

Times the closure on random loop digraphs of growing size. The numba
path is JIT compiled on first use, so one warmup call runs before the
clock starts. Run from the repo root:

    python3 benchmarks/bench_forcing.py
"""
import time

import numpy as np

from modalssc import LoopDigraph, derived_set

try:
    import numba  # noqa: F401
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False
    print("numba not installed, timing the numpy backend only")

SIZES = (20, 50, 100, 200, 400)
REPEATS = 7
SEED = 99


def random_graph(rng, n):
    """Strong ring plus sparse chords: forcing cascades most of the way
    around, with occasional stalls where a chord leaves two white
    out-neighbors. This keeps the kernel's rescan loop busy."""
    strong = {(v, v % n + 1) for v in range(1, n + 1)}
    weak = set()
    for _ in range(n // 5):
        v = int(rng.integers(1, n + 1))
        u = int(rng.integers(1, n + 1))
        if u != v and (v, u) not in strong:
            weak.add((v, u))
    for v in range(1, n + 1):
        if rng.random() < 0.3:
            weak.add((v, v))
    return LoopDigraph(n, (1,) * n, frozenset(strong), frozenset(weak))


def time_backend(g, z, backend):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        report = derived_set(g, z, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, len(report.derived)


def main():
    rng = np.random.default_rng(SEED)
    if HAS_NUMBA:
        warm = random_graph(rng, 10)
        derived_set(warm, (1,), backend="numba")  # trigger JIT before timing

    print(f"{'n':>6} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9} {'derived':>8}")
    for n in SIZES:
        g = random_graph(rng, n)
        z = tuple(range(1, max(2, n // 10)))
        t_np, derived = time_backend(g, z, "numpy")
        if HAS_NUMBA:
            t_nb, derived_nb = time_backend(g, z, "numba")
            if derived_nb != derived:
                raise RuntimeError(f"backend disagreement at n={n}")
            print(f"{n:>6} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {t_np / t_nb:>8.1f}x {derived:>8}")
        else:
            print(f"{n:>6} {t_np * 1e3:>12.3f} {'-':>12} {'-':>9} {derived:>8}")


if __name__ == "__main__":
    main()
