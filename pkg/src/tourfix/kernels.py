"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Each public kernel dispatches on :data:`tourfix._accel.HAVE_NUMBA`; the
``*_numba`` / ``*_numpy`` variants stay importable so tests and the benchmark
can compare the two paths directly.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

__all__ = [
    "bracket_winners",
    "bracket_winners_numba",
    "bracket_winners_numpy",
    "fas_table",
    "fas_table_numba",
    "fas_table_numpy",
]


@njit
def _bracket_winners_kernel(seedings, beats):
    n_seed, n = seedings.shape
    m = beats.shape[0]
    out = np.empty((n_seed, m), dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for s in range(n_seed):
        for i in range(m):
            for j in range(n):
                buf[j] = seedings[s, j]
            width = n
            while width > 1:
                half = width // 2
                for j in range(half):
                    a = buf[2 * j]
                    b = buf[2 * j + 1]
                    if beats[i, a, b]:
                        buf[j] = a
                    else:
                        buf[j] = b
                width = half
            out[s, i] = buf[0]
    return out


def bracket_winners_numba(seedings: np.ndarray, beats: np.ndarray) -> np.ndarray:
    """Bracket winners for a batch of seedings over ``m`` tournaments.

    ``seedings`` is ``(S, n)`` player indices in leaf order, ``beats`` is a
    boolean ``(m, n, n)`` array with ``beats[i, u, v]`` true when ``u`` beats
    ``v`` in tournament ``i``. Returns ``(S, m)`` winner indices.
    """
    seedings = np.ascontiguousarray(seedings, dtype=np.int64)
    beats = np.ascontiguousarray(beats, dtype=np.bool_)
    return _bracket_winners_kernel(seedings, beats)


def bracket_winners_numpy(seedings: np.ndarray, beats: np.ndarray) -> np.ndarray:
    seedings = np.asarray(seedings, dtype=np.int64)
    beats = np.asarray(beats, dtype=np.bool_)
    n_seed, n = seedings.shape
    m = beats.shape[0]
    cur = np.broadcast_to(seedings[:, None, :], (n_seed, m, n))
    scen = np.arange(m)[None, :, None]
    while cur.shape[2] > 1:
        a = cur[:, :, 0::2]
        b = cur[:, :, 1::2]
        cur = np.where(beats[scen, a, b], a, b)
    return np.array(cur[:, :, 0])


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def _fas_table_kernel(out_masks):
    n = out_masks.shape[0]
    full = (1 << n) - 1
    g = np.zeros(full + 1, dtype=np.int32)
    for mask in range(full - 1, -1, -1):
        best = 1 << 30
        for v in range(n):
            bit = 1 << v
            if mask & bit:
                continue
            c = _popcount(out_masks[v] & mask) + g[mask | bit]
            if c < best:
                best = c
        g[mask] = best
    return g


def fas_table_numba(out_masks: np.ndarray) -> np.ndarray:
    """Subset DP table for minimum feedback arc set.

    ``out_masks[v]`` is the bitmask of vertices ``v`` has an arc to. Entry
    ``g[S]`` is the least number of back arcs among the vertices outside ``S``
    when ``S`` is already placed as a prefix of the ordering.
    """
    return _fas_table_kernel(np.ascontiguousarray(out_masks, dtype=np.int64))


def fas_table_numpy(out_masks: np.ndarray) -> np.ndarray:
    out_masks = np.asarray(out_masks, dtype=np.int64)
    n = out_masks.shape[0]
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int32)
    for b in range(n):
        pc += ((masks >> b) & 1).astype(np.int32)
    g = np.zeros(size, dtype=np.int32)
    big = np.int32(1 << 30)
    for layer in range(n - 1, -1, -1):
        sel = masks[pc == layer]
        best = np.full(sel.shape, big, dtype=np.int32)
        for v in range(n):
            bit = np.int64(1 << v)
            free = (sel & bit) == 0
            cost = pc[out_masks[v] & sel] + g[sel | bit]
            best = np.where(free, np.minimum(best, cost), best)
        g[sel] = best
    return g


def bracket_winners(seedings, beats):
    if HAVE_NUMBA:
        return bracket_winners_numba(seedings, beats)
    return bracket_winners_numpy(seedings, beats)


def fas_table(out_masks):
    if HAVE_NUMBA:
        return fas_table_numba(out_masks)
    return fas_table_numpy(out_masks)
