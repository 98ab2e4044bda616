"""Time the compiled kernels against their numpy / plain-Python counterparts.

    python benchmarks/bench_kernels.py [--repeat 5]

Needs numba; the numpy path is always timed in the same process.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from sgflow import _kernels
from sgflow._accel import USE_NUMBA


def _edges(rng, n, m):
    eu = np.array([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    ew = np.array([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    return eu, ew


def _best_of(fn, args, repeat):
    fn(*args)  # warm up / compile
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    n, m = 16, 40
    eu, _ = _edges(rng, n, m)
    # loops only: no cut is odd, so every shore is visited
    yield "odd_cut_scan n=16", (n, eu, eu.copy()), _kernels._odd_cut_scan_loop, _kernels._odd_cut_scan_numpy
    neg = np.array([rng.randint(0, 1) for _ in range(m)], dtype=np.int64)
    yield (
        "min_switch_negatives n=18",
        (18, *_edges(rng, 18, m), neg),
        _kernels._min_switch_negatives_loop,
        _kernels._min_switch_negatives_numpy,
    )
    n = 8
    eu, ew = _edges(rng, n, 14)
    fdem = np.full(n, 1, dtype=np.int64)
    yield "tutte_scan n=8", (n, eu, ew, fdem), _kernels._tutte_scan_loop, _kernels._tutte_scan_loop.py_func


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not USE_NUMBA:
        print("numba backend disabled (SGFLOW_NUMBA=0); nothing to compare")
        return 1
    rng = random.Random(args.seed)
    print(f"{'kernel':28s} {'numba s':>10s} {'fallback s':>11s} {'speedup':>8s}")
    for name, call, fast, slow in cases(rng):
        a = fast(*call)
        b = slow(*call)
        assert tuple(map(int, a)) == tuple(map(int, b)), name
        tf = _best_of(fast, call, args.repeat)
        ts = _best_of(slow, call, max(1, args.repeat // 2))
        print(f"{name:28s} {tf:10.4f} {ts:11.4f} {ts / tf:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
