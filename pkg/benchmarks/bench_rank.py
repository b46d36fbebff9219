"""Head-to-head timing of the two integer rank lanes.

The library computes most of its cohomology dimensions through rank-only
eliminations.  Those go through one of two interchangeable kernels in
``tauhh._kernels``: a numba @njit lane (default) and a pure-numpy lane
(``TAUHH_PURE_NUMPY=1``).  This script times both on synthetic matrices
shaped like the real workload (small entries, moderate density) and on an
actual bar-complex differential, and shows the exact-arithmetic fallback
cost for scale.

Run:  python3 benchmarks/bench_rank.py [--repeats N] [--seed N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tauhh import _kernels
from tauhh.algebra import build_algebra
from tauhh.cohomology import build_bar_complex
from tauhh.linalg import QQ, Matrix, rank
from tauhh.randgen import rad_square_zero_presentation

import random


def synthetic(rng: np.random.Generator, rows: int, cols: int, density: float) -> np.ndarray:
    a = rng.integers(-3, 4, size=(rows, cols), dtype=np.int64)
    mask = rng.random((rows, cols)) < density
    return a * mask


def delta_matrix() -> np.ndarray:
    """Degree-two bar differential of a five-loop radical-square-zero
    algebra, densified."""
    rng = random.Random(7)
    pres = rad_square_zero_presentation(rng, QQ, max_vertices=1, max_arrows=5)
    alg = build_algebra(pres)
    cx = build_bar_complex(alg, max_degree=2)
    delta = cx.deltas[2]
    nrows, ncols = cx.dims[3], cx.dims[2]
    a = np.zeros((nrows, ncols), dtype=np.int64)
    for col, items in delta.items():
        for row, c in items:
            a[row, col] = int(c)
    return a


def time_fn(fn, a, repeats: int) -> tuple[float, int]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        work = a.copy()
        t0 = time.perf_counter()
        out = fn(work)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    have_numba = hasattr(_kernels, "rank_int64_numba")
    print(f"selected backend: {_kernels.BACKEND}"
          + ("" if have_numba else "  (numba lane unavailable)"))

    cases = [
        ("dense 200x150", synthetic(rng, 200, 150, 0.9)),
        ("sparse 400x300", synthetic(rng, 400, 300, 0.15)),
        ("sparse 800x600", synthetic(rng, 800, 600, 0.10)),
        ("bar delta2 (5-loop rad2)", delta_matrix()),
    ]

    lanes: list[tuple[str, object, object]] = [
        ("numpy", _kernels.rank_int64_numpy, _kernels.rank_modp_numpy)
    ]
    if have_numba:
        lanes.append(("numba", _kernels.rank_int64_numba, _kernels.rank_modp_numba))
        # trigger compilation outside the timed region
        _kernels.rank_int64_numba(np.eye(4, dtype=np.int64))
        _kernels.rank_modp_numba(np.eye(4, dtype=np.int64), 3)

    print(f"\n{'case':<28} {'kernel':<14} " + "  ".join(f"{n:>12}" for n, _, _ in lanes))
    for name, a in cases:
        for kernel_name, pick in (("rank_int64", 1), ("rank_modp p=3", 2)):
            results = []
            times = []
            for lane in lanes:
                fn = lane[pick]
                wrapped = (lambda m, f=fn: f(m)) if pick == 1 else (lambda m, f=fn: f(m, 3))
                t, r = time_fn(wrapped, a, args.repeats)
                times.append(t)
                results.append(r)
            assert len(set(results)) == 1, (name, kernel_name, results)
            cells = "  ".join(f"{t * 1000:>9.2f} ms" for t in times)
            print(f"{name:<28} {kernel_name:<14} {cells}")

    # exact-arithmetic fallback, one small case for scale
    small = cases[0][1][:80, :60]
    m = Matrix.from_rows(QQ, [[QQ.of(int(v)) for v in row] for row in small])
    t0 = time.perf_counter()
    r = rank(m)
    dt = time.perf_counter() - t0
    print(f"\nexact Fraction rank on 80x60 slice: {dt * 1000:.1f} ms (rank {r});"
          " the int64 lanes above fall back to this only on overflow")


if __name__ == "__main__":
    main()
