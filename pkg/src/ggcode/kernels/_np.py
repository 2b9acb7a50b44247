"""Vectorized numpy versions of the kernels in ``_nb``.

Same contracts and tie-breaking, so the two paths return identical results.
"""
from __future__ import annotations

from itertools import islice

import numpy as np

_CHUNK = 1 << 16


def row_weights(rows: np.ndarray) -> np.ndarray:
    return np.bitwise_count(rows).sum(axis=-1, dtype=np.int64)


def gf2_rref(a: np.ndarray, ncols: int):
    rows = a.shape[0]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == rows:
            break
        w, b = col >> 6, np.uint64(col & 63)
        hits = np.flatnonzero((a[r:, w] >> b) & np.uint64(1))
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        mask = ((a[:, w] >> b) & np.uint64(1)).astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(col)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def _span_table(gen: np.ndarray) -> np.ndarray:
    """All 2^k XOR combinations of ``gen`` rows, index bit i selecting row i."""
    table = np.zeros((1, gen.shape[1]), dtype=np.uint64)
    for row in gen:
        table = np.concatenate([table, table ^ row])
    return table


def gf2_min_weight_all(gen: np.ndarray):
    k = gen.shape[0]
    low = min(k, 16)
    table = _span_table(gen[:low])
    weights_low = None
    best, best_msg = 1 << 62, 0
    high_rows = gen[low:]
    for high in range(1 << (k - low)):
        offset = np.zeros(gen.shape[1], dtype=np.uint64)
        for i in range(k - low):
            if (high >> i) & 1:
                offset ^= high_rows[i]
        if high == 0:
            if weights_low is None:
                weights_low = row_weights(table)
            weights = weights_low.copy()
            weights[0] = 1 << 62
        else:
            weights = row_weights(table ^ offset)
        j = int(np.argmin(weights))
        if weights[j] < best:
            best, best_msg = int(weights[j]), (high << low) | j
    return best, best_msg


def colex_combinations(k: int, w: int):
    """Yield w-subsets of range(k) as sorted tuples in colexicographic order."""
    if w == 0:
        yield ()
        return
    for top in range(w - 1, k):
        for rest in colex_combinations(top, w - 1):
            yield rest + (top,)


def gf2_min_weight_combos(gen: np.ndarray, w: int, stop_at: int):
    k, nwords = gen.shape
    witness = np.zeros(nwords, dtype=np.uint64)
    best, visited = 1 << 62, 0
    if w <= 0 or w > k:
        return best, witness, 0
    combos = colex_combinations(k, w)
    while True:
        chunk = list(islice(combos, _CHUNK))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.int64)
        words = np.bitwise_xor.reduce(gen[idx], axis=1)
        weights = row_weights(words)
        stop = np.flatnonzero(weights <= stop_at)
        if stop.size:
            j = int(stop[0])
            return int(weights[j]), words[j].copy(), visited + j + 1
        j = int(np.argmin(weights))
        if weights[j] < best:
            best, witness = int(weights[j]), words[j].copy()
        visited += len(chunk)
    return best, witness, visited


def _round_robin(n: int):
    """Pairings covering every (p, q) once over n-1 (or n) rounds."""
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs], dtype=np.int64),
                       np.array([q for _, q in pairs], dtype=np.int64)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(a: np.ndarray, tol: float, max_sweeps: int):
    """Parallel-ordered Jacobi: each round applies n/2 disjoint rotations at once."""
    n = a.shape[0]
    v = np.eye(n)
    norm0 = float(np.sqrt(np.sum(a * a)))
    schedule = _round_robin(n)
    sweeps = 0
    off = _off_norm(a)
    while off > tol * norm0:
        if sweeps >= max_sweeps:
            return np.diag(a).copy(), v, sweeps, False
        for p, q in schedule:
            if p.size == 0:
                continue
            apq = a[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            root = np.sqrt(theta * theta + 1.0)
            t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + root)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
            a[p, q] = 0.0
            a[q, p] = 0.0
            v = v @ rot
        sweeps += 1
        off = _off_norm(a)
    return np.diag(a).copy(), v, sweeps, True
