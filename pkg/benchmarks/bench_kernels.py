"""Compare the two kernel backends on the operations the search and the
climb sit in all day.

Usage:
    python benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeats 5]

The jitted backend pays its compilation cost on first call; one warmup
round per shape is excluded from the timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cagekit import _kernels_numpy as knp

try:
    from cagekit import _kernels_numba as knb
except ImportError:
    knb = None


def random_sparse(rng, n, degree=4):
    am = np.zeros((n, n), bool)
    for u in range(n):
        for v in rng.choice(n, degree, replace=False):
            if u != v:
                am[u, v] = am[v, u] = True
    return am


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(mod, am, cap, repeats):
    n = am.shape[0]
    rows = {}
    rows["all_pairs"] = timeit(lambda: mod.all_pairs_truncated(am, cap),
                               repeats)
    dist = mod.all_pairs_truncated(am, cap)
    free = np.nonzero(~am & ~np.eye(n, dtype=bool))
    v, w = int(free[0][0]), int(free[1][0])

    def add_undo():
        xs, ys, old = mod.update_distances_add(dist, v, w, cap)
        dist[xs, ys] = old

    rows["update_add"] = timeit(add_undo, repeats)
    rows["girth"] = timeit(lambda: mod.girth_min_cycle(am), repeats)
    colors = np.zeros(n, np.int32)
    rows["refine"] = timeit(lambda: mod.refine_colors(am, colors), repeats)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,128,256")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--cap", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    backends = [("numpy", knp)]
    if knb is not None:
        backends.append(("numba", knb))
    else:
        print("numba backend unavailable, timing numpy only")

    header = f"{'kernel':<12} {'n':>5} " + "".join(
        f"{name:>12} " for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>9}"
    print(header)
    print("-" * len(header))

    for n in sizes:
        am = random_sparse(rng, n)
        results = {}
        for name, mod in backends:
            bench_backend(mod, am, args.cap, 1)  # warmup, includes jit
            results[name] = bench_backend(mod, am, args.cap, args.repeats)
        for kernel in results[backends[0][0]]:
            line = f"{kernel:<12} {n:>5} "
            for name, _ in backends:
                line += f"{results[name][kernel] * 1e3:>10.3f}ms "
            if len(backends) == 2:
                ratio = results["numpy"][kernel] / results["numba"][kernel]
                line += f"{ratio:>8.1f}x"
            print(line)
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
