"""Kernel contracts, checked on both backends against plain-Python oracles."""
from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggcode import kernels
from ggcode.field import GF
from ggcode.matrix import _rref_general


def brute_min_weight(bits: np.ndarray) -> tuple[int, int]:
    """Smallest weight over all nonzero messages; ties go to the smallest message integer."""
    k = bits.shape[0]
    weights = []
    for msg in range(1, 1 << k):
        sel = np.array([(msg >> i) & 1 for i in range(k)])
        weights.append(int(np.count_nonzero(sel @ bits % 2)))
    best = min(weights)
    return best, weights.index(best) + 1


def random_bits(seed, rows, cols):
    return np.random.default_rng(seed).integers(0, 2, size=(rows, cols))


@given(st.integers(1, 9), st.integers(1, 150), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_pack_roundtrip(rows, cols, seed):
    bits = random_bits(seed, rows, cols)
    packed = kernels.pack_rows(bits)
    assert packed.dtype == np.uint64
    assert np.array_equal(kernels.unpack_rows(packed, cols), bits)
    assert kernels.row_weights(packed).tolist() == bits.sum(axis=1).tolist()


@pytest.mark.parametrize("seed", range(12))
def test_rref_matches_generic(backend, seed):
    rng = np.random.default_rng(seed)
    rows, cols = int(rng.integers(1, 30)), int(rng.integers(1, 200))
    bits = rng.integers(0, 2, size=(rows, cols))
    reduced, pivots = kernels.gf2_rref(kernels.pack_rows(bits), cols)
    ref, ref_piv = _rref_general(GF(2), bits)
    assert pivots.tolist() == ref_piv
    assert np.array_equal(kernels.unpack_rows(reduced, cols), ref)


@pytest.mark.parametrize("seed", range(15))
def test_min_weight_all_matches_enumeration(backend, seed):
    rng = np.random.default_rng(seed)
    k, n = int(rng.integers(1, 10)), int(rng.integers(1, 90))
    bits = rng.integers(0, 2, size=(k, n))
    best, msg = kernels.gf2_min_weight_all(kernels.pack_rows(bits))
    ref_best, ref_msg = brute_min_weight(bits)
    assert (best, msg) == (ref_best, ref_msg)


@pytest.mark.parametrize("seed", range(15))
def test_min_weight_combos_matches_enumeration(backend, seed):
    rng = np.random.default_rng(seed)
    k, n = int(rng.integers(1, 11)), int(rng.integers(1, 100))
    w = int(rng.integers(1, k + 1))
    bits = rng.integers(0, 2, size=(k, n))
    best, witness, visited = kernels.gf2_min_weight_combos(kernels.pack_rows(bits), w)
    ref = min(int(np.count_nonzero(bits[list(c)].sum(axis=0) % 2)) for c in itertools.combinations(range(k), w))
    assert best == ref
    assert visited == comb(k, w)
    word = kernels.unpack_rows(witness[None, :], n)[0]
    assert int(word.sum()) == best
    assert any(
        np.array_equal(bits[list(c)].sum(axis=0) % 2, word) for c in itertools.combinations(range(k), w)
    )


def test_min_weight_combos_stops_early(backend):
    bits = np.eye(8, dtype=np.int64)
    best, _, visited = kernels.gf2_min_weight_combos(kernels.pack_rows(bits), 2, stop_at=5)
    assert best == 2
    assert visited == 1


@pytest.mark.parametrize("seed", range(6))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(9, 70))
    packed = kernels.pack_rows(bits)
    A = rng.normal(size=(7, 7))
    A = A + A.T
    out = {}
    for name in kernels.BACKENDS:
        previous = kernels.set_backend(name)
        try:
            vals, vecs, _, ok = kernels.jacobi_eigh(A, 1e-13, 100)
            assert ok
            out[name] = (
                kernels.gf2_min_weight_all(packed),
                kernels.gf2_min_weight_combos(packed, 3)[0],
                kernels.gf2_rref(packed, 70)[1].tolist(),
                np.sort(vals),
            )
        finally:
            kernels.set_backend(previous)
    a, b = out["numba"], out["numpy"]
    assert a[:3] == b[:3]
    assert np.allclose(a[3], b[3], atol=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3, 8, 13])
def test_jacobi_diagonalizes(backend, k):
    rng = np.random.default_rng(k)
    A = rng.normal(size=(k, k))
    A = A + A.T
    vals, vecs, sweeps, ok = kernels.jacobi_eigh(A, 1e-13, 100)
    assert ok and sweeps <= 100
    assert np.allclose(np.sort(vals), np.linalg.eigvalsh(A), atol=1e-10)
    assert np.allclose(vecs @ np.diag(vals) @ vecs.T, A, atol=1e-10)


def test_set_backend_validates():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
    previous = kernels.set_backend("numpy")
    assert kernels.get_backend() == "numpy"
    kernels.set_backend(previous)
