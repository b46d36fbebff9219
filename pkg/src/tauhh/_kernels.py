"""Integer elimination kernels used for rank-only computations.

Two interchangeable lanes compute the same thing:

* a numba ``@njit`` lane (the default when numba imports cleanly), and
* a pure-numpy lane, selected by setting ``TAUHH_PURE_NUMPY=1`` in the
  environment before import.

Both lanes are exact.  The rational-lane kernel works on int64 matrices with
division-free row operations and refuses to continue (returns -1) if an update
could overflow; callers then redo the computation with arbitrary-precision
arithmetic.  The mod-p kernel never overflows for p < 2**20.

``benchmarks/bench_rank.py`` compares the two lanes head to head.
"""

from __future__ import annotations

import math
import os

import numpy as np

# Conservative bound: guarded updates stay below 2**62, leaving headroom
# against the int64 limit even after the subtraction.
_OVERFLOW_LIMIT = 4.0e18


def _select_backend() -> str:
    if os.environ.get("TAUHH_PURE_NUMPY", "").strip() not in ("", "0"):
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _select_backend()


# ---------------------------------------------------------------------------
# pure-numpy lane


def rank_int64_numpy(a: np.ndarray) -> int:
    """Rank of an int64 matrix, or -1 if an update could overflow.

    Fraction-free elimination: the pivot is the entry of smallest absolute
    value in the column (first such row on ties), every update row is reduced
    by its content gcd, and each update is pre-checked against the overflow
    limit using exact Python integers.
    """
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        sub = a[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        k = int(nz[np.argmin(np.abs(sub[nz]))])
        piv = rank + k
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        prow = a[rank]
        pval = int(prow[col])
        pmax = int(np.abs(prow).max())
        below = rank + 1 + np.nonzero(a[rank + 1 :, col])[0]
        for r in below:
            rv = int(a[r, col])
            g = math.gcd(pval, rv)
            m1 = pval // g
            m2 = rv // g
            rmax = int(np.abs(a[r]).max())
            if abs(m1) * rmax + abs(m2) * pmax > _OVERFLOW_LIMIT:
                return -1
            a[r] = m1 * a[r] - m2 * prow
            g2 = int(np.gcd.reduce(np.abs(a[r])))
            if g2 > 1:
                a[r] //= g2
        rank += 1
    return rank


def rank_modp_numpy(a: np.ndarray, p: int) -> int:
    """Rank of a matrix over the prime field F_p (entries reduced mod p)."""
    a = np.mod(np.array(a, dtype=np.int64, copy=True), p)
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = (a[rank] * inv) % p
        if rank + 1 < rows:
            factors = a[rank + 1 :, col : col + 1]
            a[rank + 1 :] = (a[rank + 1 :] - factors * a[rank]) % p
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# numba lane

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _gcd64(x: np.int64, y: np.int64) -> np.int64:
        a = abs(x)
        b = abs(y)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _rank_int64_jit(a: np.ndarray) -> int:
        rows, cols = a.shape
        rank = 0
        for col in range(cols):
            if rank == rows:
                break
            piv = -1
            best = np.int64(0)
            for r in range(rank, rows):
                v = a[r, col]
                if v != 0:
                    av = abs(v)
                    if piv < 0 or av < best:
                        piv = r
                        best = av
            if piv < 0:
                continue
            if piv != rank:
                for c in range(cols):
                    tmp = a[rank, c]
                    a[rank, c] = a[piv, c]
                    a[piv, c] = tmp
            pval = a[rank, col]
            pmax = np.int64(0)
            for c in range(cols):
                av = abs(a[rank, c])
                if av > pmax:
                    pmax = av
            for r in range(rank + 1, rows):
                rv = a[r, col]
                if rv == 0:
                    continue
                g = _gcd64(pval, rv)
                m1 = pval // g
                m2 = rv // g
                rmax = np.int64(0)
                for c in range(cols):
                    av = abs(a[r, c])
                    if av > rmax:
                        rmax = av
                if abs(np.float64(m1)) * np.float64(rmax) + abs(np.float64(m2)) * np.float64(pmax) > _OVERFLOW_LIMIT:
                    return -1
                for c in range(cols):
                    a[r, c] = m1 * a[r, c] - m2 * a[rank, c]
                g2 = np.int64(0)
                for c in range(cols):
                    g2 = _gcd64(g2, a[r, c])
                    if g2 == 1:
                        break
                if g2 > 1:
                    for c in range(cols):
                        a[r, c] //= g2
            rank += 1
        return rank

    @njit(cache=True)
    def _rank_modp_jit(a: np.ndarray, p: np.int64) -> int:
        rows, cols = a.shape
        for r in range(rows):
            for c in range(cols):
                a[r, c] = a[r, c] % p
        rank = 0
        for col in range(cols):
            if rank == rows:
                break
            piv = -1
            for r in range(rank, rows):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(cols):
                    tmp = a[rank, c]
                    a[rank, c] = a[piv, c]
                    a[piv, c] = tmp
            # inverse of the pivot by Fermat: p is prime
            inv = np.int64(1)
            base = a[rank, col] % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for c in range(cols):
                a[rank, c] = (a[rank, c] * inv) % p
            for r in range(rank + 1, rows):
                f = a[r, col]
                if f == 0:
                    continue
                for c in range(cols):
                    a[r, c] = (a[r, c] - f * a[rank, c]) % p
            rank += 1
        return rank

    def rank_int64_numba(a: np.ndarray) -> int:
        return int(_rank_int64_jit(np.array(a, dtype=np.int64, copy=True)))

    def rank_modp_numba(a: np.ndarray, p: int) -> int:
        return int(_rank_modp_jit(np.array(a, dtype=np.int64, copy=True), np.int64(p)))

    rank_int64 = rank_int64_numba
    rank_modp = rank_modp_numba
else:
    rank_int64 = rank_int64_numpy
    rank_modp = rank_modp_numpy
