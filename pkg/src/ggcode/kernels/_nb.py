"""Loop-style kernels compiled with numba (run as plain Python if numba is absent)."""
from __future__ import annotations

import numpy as np

from ._backend import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@njit
def popcount64(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit
def row_weight(row):
    total = 0
    for t in range(row.shape[0]):
        total += popcount64(row[t])
    return total


@njit
def gf2_rref(a, ncols):
    """Reduce bit-packed rows in place; returns (rank, pivot columns)."""
    rows, nwords = a.shape
    pivots = np.empty(min(rows, ncols), dtype=np.int64)
    r = 0
    for col in range(ncols):
        if r == rows:
            break
        w = col >> 6
        bit = _ONE << np.uint64(col & 63)
        piv = -1
        for i in range(r, rows):
            if a[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(nwords):
                tmp = a[r, t]
                a[r, t] = a[piv, t]
                a[piv, t] = tmp
        # pivot row is zero left of col, so words before w never change
        for i in range(rows):
            if i != r and (a[i, w] & bit):
                for t in range(w, nwords):
                    a[i, t] ^= a[r, t]
        pivots[r] = col
        r += 1
    return r, pivots[:r].copy()


@njit
def gf2_min_weight_all(gen):
    """Gray-code walk over all nonzero messages.

    Returns (min weight, message) with message bit i selecting row i; ties go
    to the smallest message integer.
    """
    k, nwords = gen.shape
    cur = np.zeros(nwords, dtype=np.uint64)
    best = 1 << 62
    best_msg = 0
    g = 0
    for i in range(1, 1 << k):
        j = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            j += 1
        g ^= 1 << j
        wt = 0
        for s in range(nwords):
            cur[s] ^= gen[j, s]
            wt += popcount64(cur[s])
        if wt < best or (wt == best and g < best_msg):
            best = wt
            best_msg = g
    return best, best_msg


@njit
def gf2_min_weight_combos(gen, w, stop_at):
    """Minimum weight over XORs of exactly ``w`` rows, colex order.

    Stops early once a weight <= ``stop_at`` is seen. Returns
    (min weight, witness row, combinations visited).
    """
    k, nwords = gen.shape
    witness = np.zeros(nwords, dtype=np.uint64)
    if w <= 0 or w > k:
        return 1 << 62, witness, 0
    idx = np.arange(w)
    partial = np.zeros((w + 1, nwords), dtype=np.uint64)
    for t in range(w - 1, -1, -1):
        for s in range(nwords):
            partial[t, s] = partial[t + 1, s] ^ gen[idx[t], s]
    best = 1 << 62
    visited = 0
    while True:
        visited += 1
        wt = 0
        for s in range(nwords):
            wt += popcount64(partial[0, s])
        if wt < best:
            best = wt
            for s in range(nwords):
                witness[s] = partial[0, s]
            if best <= stop_at:
                break
        t = 0
        while t < w:
            lim = idx[t + 1] if t + 1 < w else k
            if idx[t] + 1 < lim:
                break
            t += 1
        if t == w:
            break
        idx[t] += 1
        for s in range(t):
            idx[s] = s
        for u in range(t, -1, -1):
            for s in range(nwords):
                partial[u, s] = partial[u + 1, s] ^ gen[idx[u], s]
    return best, witness, visited


@njit
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j] * a[i, j]
    return np.sqrt(acc)


@njit
def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi on a symmetric float64 matrix (modified in place).

    Returns (diagonal, eigenvector columns, sweeps, converged).
    """
    n = a.shape[0]
    v = np.eye(n)
    norm0 = np.sqrt(np.sum(a * a))
    off = _off_norm(a)
    sweeps = 0
    while off > tol * norm0:
        if sweeps >= max_sweeps:
            return np.diag(a).copy(), v, sweeps, False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for r in range(n):
                    arp = a[r, p]
                    arq = a[r, q]
                    a[r, p] = c * arp - s * arq
                    a[r, q] = s * arp + c * arq
                for r in range(n):
                    apr = a[p, r]
                    aqr = a[q, r]
                    a[p, r] = c * apr - s * aqr
                    a[q, r] = s * apr + c * aqr
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    vrp = v[r, p]
                    vrq = v[r, q]
                    v[r, p] = c * vrp - s * vrq
                    v[r, q] = s * vrp + c * vrq
        sweeps += 1
        off = _off_norm(a)
    return np.diag(a).copy(), v, sweeps, True
