"""Hot kernels with a numba path and a pure-numpy path.

The active path comes from ``GGCODE_BACKEND`` (``numba`` by default,
``numpy`` to force the fallback) and can be switched with
:func:`set_backend`. Both paths share contracts and tie-breaking rules.
"""
from __future__ import annotations

import numpy as np

from . import _nb, _np
from ._backend import BACKENDS, get_backend, set_backend

__all__ = [
    "BACKENDS",
    "get_backend",
    "set_backend",
    "pack_rows",
    "unpack_rows",
    "row_weights",
    "gf2_rref",
    "gf2_min_weight_all",
    "gf2_min_weight_combos",
    "jacobi_eigh",
]

_impl = {"numba": _nb, "numpy": _np}


def _k():
    return _impl[get_backend()]


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into uint64 words; column j lives in word j // 64, bit j % 64."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    nwords = max(1, -(-cols // 64))
    padded = np.zeros((rows, nwords * 64), dtype=np.uint8)
    padded[:, :cols] = bits
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)


def unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype="<u8")
    raw = packed.view(np.uint8).reshape(packed.shape[0], -1)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols].astype(np.int64)


def row_weights(packed: np.ndarray) -> np.ndarray:
    return _np.row_weights(packed)


def gf2_rref(packed: np.ndarray, ncols: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of bit-packed rows. Returns (reduced copy, pivots)."""
    work = np.array(packed, dtype=np.uint64, order="C", copy=True)
    rank, pivots = _k().gf2_rref(work, ncols)
    return work, np.asarray(pivots, dtype=np.int64)


def gf2_min_weight_all(gen: np.ndarray) -> tuple[int, int]:
    gen = np.ascontiguousarray(gen, dtype=np.uint64)
    best, msg = _k().gf2_min_weight_all(gen)
    return int(best), int(msg)


def gf2_min_weight_combos(gen: np.ndarray, w: int, stop_at: int = -1) -> tuple[int, np.ndarray, int]:
    gen = np.ascontiguousarray(gen, dtype=np.uint64)
    best, witness, visited = _k().gf2_min_weight_combos(gen, int(w), int(stop_at))
    return int(best), np.asarray(witness, dtype=np.uint64), int(visited)


def jacobi_eigh(a: np.ndarray, tol: float, max_sweeps: int):
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    vals, vecs, sweeps, converged = _k().jacobi_eigh(work, float(tol), int(max_sweeps))
    return np.asarray(vals), np.asarray(vecs), int(sweeps), bool(converged)
