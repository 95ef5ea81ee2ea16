"""Machine-integer kernels for bulk neighbor enumeration and capped BFS.

Vertices are plain int64 values; ``cap`` is a digit count and every
generated value with more than ``cap`` digits is discarded before it is
assembled, so nothing here can overflow for ``cap <= 18``.
"""

from __future__ import annotations

import numba
import numpy as np
from numba import njit, prange

# the bundled TBB is too old for numba; skip probing it
numba.config.THREADING_LAYER = "omp"

MAX_CAP = 18


def powers(base: int, cap: int) -> np.ndarray:
    """``base**0 .. base**(cap + 1)`` as int64 (the last entry may saturate)."""
    out = np.zeros(cap + 2, dtype=np.int64)
    v = 1
    for i in range(cap + 2):
        out[i] = min(v, np.iinfo(np.int64).max)
        v *= base
    return out


@njit(cache=True)
def _ndigits(n, pw):
    k = 1
    while k < pw.shape[0] - 1 and n >= pw[k]:
        k += 1
    return k


@njit(cache=True)
def neighbors_into(n, pw, cap, out):
    """Write every one-step image of ``n`` (identity excluded) into ``out``.

    Returns the number written. Duplicates are not removed. Images with
    more than ``cap`` digits are skipped.
    """
    k = _ndigits(n, pw)
    cnt = 0
    for p in range(k):
        head = n // pw[k - p]
        rest = n % pw[k - p]
        if rest < pw[k - p - 1]:
            # digit at p is zero
            continue
        for q in range(p, k):
            tail_len = k - 1 - q
            ln = q - p + 1
            s = rest // pw[tail_len]
            tail = rest % pw[tail_len]
            t = 2 * s
            lt = ln + 1 if t >= pw[ln] else ln
            if k - ln + lt <= cap:
                out[cnt] = (head * pw[lt] + t) * pw[tail_len] + tail
                cnt += 1
            if s % 2 == 0:
                t = s // 2
                lt = ln - 1 if t < pw[ln - 1] else ln
                if k - ln + lt <= cap:
                    out[cnt] = (head * pw[lt] + t) * pw[tail_len] + tail
                    cnt += 1
    return cnt


@njit(cache=True)
def scratch_size_nb(cap):
    return cap * (cap + 1) + 2


@njit(parallel=True, cache=True)
def _expand_layer(frontier, dist, d, pw, cap):
    nxt = np.int8(d + 1)
    m = scratch_size_nb(cap)
    for i in prange(frontier.shape[0]):
        buf = np.empty(m, dtype=np.int64)
        c = neighbors_into(frontier[i], pw, cap, buf)
        for j in range(c):
            v = buf[j]
            # concurrent writers only ever store the same layer value
            if dist[v] < 0:
                dist[v] = nxt


def bfs_layers(source: int, cap: int, base: int = 10) -> np.ndarray:
    """Distance array over ``[0, base**cap)``; ``-1`` marks unreached (and 0)."""
    if not 1 <= cap <= MAX_CAP:
        raise ValueError(f"cap must be in 1..{MAX_CAP}")
    pw = powers(base, cap)
    size = int(pw[cap])
    if not 1 <= source < size:
        raise ValueError("source outside the capped range")
    dist = np.full(size, -1, dtype=np.int8)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        if d >= 126:
            raise OverflowError("BFS depth exceeds int8 distance storage")
        _expand_layer(frontier, dist, d, pw, cap)
        d += 1
        frontier = np.flatnonzero(dist == d).astype(np.int64)
    return dist


@njit(cache=True)
def _extremes(lo, hi, pw, cap, out_min, out_max):
    buf = np.empty(scratch_size_nb(cap), dtype=np.int64)
    for n in range(lo, hi + 1):
        c = neighbors_into(n, pw, cap, buf)
        mn = n
        mx = n
        for j in range(c):
            if buf[j] < mn:
                mn = buf[j]
            if buf[j] > mx:
                mx = buf[j]
        out_min[n - lo] = mn
        out_max[n - lo] = mx


def bulk_extremes(lo: int, hi: int, base: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Brute-force smallest and largest neighbor (identity included) of lo..hi."""
    cap = len(np.base_repr(hi, base)) + 1
    pw = powers(base, cap)
    mn = np.empty(hi - lo + 1, dtype=np.int64)
    mx = np.empty(hi - lo + 1, dtype=np.int64)
    _extremes(lo, hi, pw, cap, mn, mx)
    return mn, mx


@njit(cache=True)
def _range_violations(lo, hi, pw, cap, out):
    buf = np.empty(scratch_size_nb(cap), dtype=np.int64)
    cnt = 0
    for n in range(lo, hi + 1):
        c = neighbors_into(n, pw, cap, buf)
        for j in range(c):
            m = buf[j]
            if not (n < 10 * m and m < 10 * n):
                if cnt < out.shape[0]:
                    out[cnt, 0] = n
                    out[cnt, 1] = m
                cnt += 1
    return cnt


def range_violations(lo: int, hi: int, keep: int = 16) -> tuple[int, np.ndarray]:
    """Count (n, m) pairs breaking ``n < 10m < 100n``; return the first few."""
    cap = len(str(hi)) + 1
    out = np.zeros((keep, 2), dtype=np.int64)
    cnt = _range_violations(lo, hi, powers(10, cap), cap, out)
    return cnt, out[: min(cnt, keep)]


@njit(cache=True)
def _class_violations(lo, hi, pw, cap, out):
    buf = np.empty(scratch_size_nb(cap), dtype=np.int64)
    cnt = 0
    for n in range(lo, hi + 1):
        b = n % 5 == 0
        c = neighbors_into(n, pw, cap, buf)
        for j in range(c):
            if (buf[j] % 5 == 0) != b:
                if cnt < out.shape[0]:
                    out[cnt, 0] = n
                    out[cnt, 1] = buf[j]
                cnt += 1
    return cnt


def class_violations(lo: int, hi: int, keep: int = 16) -> tuple[int, np.ndarray]:
    """Count neighbor pairs whose last-digit class (0/5 or not) differs."""
    cap = len(str(hi)) + 1
    out = np.zeros((keep, 2), dtype=np.int64)
    cnt = _class_violations(lo, hi, powers(10, cap), cap, out)
    return cnt, out[: min(cnt, keep)]


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _symmetry_violations(lo, hi, pw, cap, check_popcount, out):
    buf = np.empty(scratch_size_nb(cap), dtype=np.int64)
    back = np.empty(scratch_size_nb(cap), dtype=np.int64)
    cnt = 0
    for n in range(lo, hi + 1):
        c = neighbors_into(n, pw, cap, buf)
        uniq = np.unique(buf[:c])
        pc = _popcount(n)
        for j in range(uniq.shape[0]):
            m = uniq[j]
            bad = False
            if check_popcount and _popcount(m) != pc:
                bad = True
            else:
                cb = neighbors_into(m, pw, cap, back)
                found = False
                for i in range(cb):
                    if back[i] == n:
                        found = True
                        break
                bad = not found
            if bad:
                if cnt < out.shape[0]:
                    out[cnt, 0] = n
                    out[cnt, 1] = m
                cnt += 1
    return cnt


def symmetry_violations(lo: int, hi: int, base: int = 10, keep: int = 16,
                        check_popcount: bool = False) -> tuple[int, np.ndarray]:
    """Count pairs (n, m) with m a neighbor of n but n not a neighbor of m.

    With ``check_popcount`` (binary only) a popcount mismatch also counts.
    """
    # the reverse move never needs more than one extra digit beyond m
    cap = len(np.base_repr(hi, base)) + 2
    out = np.zeros((keep, 2), dtype=np.int64)
    cnt = _symmetry_violations(lo, hi, powers(base, cap), cap, check_popcount, out)
    return cnt, out[: min(cnt, keep)]


def set_threads(threads: int) -> None:
    """0 means all available cores."""
    n = numba.config.NUMBA_NUM_THREADS if threads <= 0 else min(threads, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(n)
