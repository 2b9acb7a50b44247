from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ggcode import matrix as mx
from ggcode.errors import NumericError, UsageError
from ggcode.field import GF
from ggcode.matrix import (
    GFMatrix,
    RealSymMatrix,
    kernel_basis,
    matmul,
    rank,
    row_space_basis,
    rref,
    symmetric_eigh,
)


def span_size(field, rows: np.ndarray) -> int:
    """Number of distinct combinations of ``rows``, by enumeration."""
    if rows.shape[0] == 0:
        return 1
    seen = set()
    for coeffs in itertools.product(range(field.q), repeat=rows.shape[0]):
        vec = matmul(field, np.array([coeffs]), rows)[0]
        seen.add(tuple(vec.tolist()))
    return len(seen)


def small_matrices(q: int, max_rows: int, max_cols: int):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, q - 1))
    )


@pytest.mark.parametrize("q,max_rows", [(2, 6), (3, 4), (4, 3), (5, 3)])
def test_rank_matches_row_span_enumeration(q, max_rows):
    F = GF(q)

    @given(small_matrices(q, max_rows, 7))
    @settings(max_examples=40, deadline=None)
    def check(data):
        M = GFMatrix(F, data)
        assert q ** rank(M) == span_size(F, data)

    check()


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_kernel_basis_properties(q):
    F = GF(q)

    @given(small_matrices(q, 8, 12))
    @settings(max_examples=40, deadline=None)
    def check(data):
        M = GFMatrix(F, data)
        K = kernel_basis(M)
        assert K.cols == M.cols
        assert K.rows == M.cols - rank(M)
        if K.rows:
            assert not np.any(matmul(F, data, K.array.T))
            assert rank(K) == K.rows

    check()


@given(small_matrices(2, 20, 140))
@settings(max_examples=60, deadline=None)
def test_gf2_rref_agrees_with_generic_elimination(data):
    F = GF(2)
    M = GFMatrix(F, data)
    reduced, pivots = rref(M)
    generic, gpivots = mx._rref_general(F, data)
    assert pivots == gpivots
    assert np.array_equal(reduced.array, generic)


@given(small_matrices(3, 6, 8))
@settings(max_examples=40, deadline=None)
def test_rref_is_idempotent_with_unit_pivots(data):
    M = GFMatrix(GF(3), data)
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R == R2 and piv == piv2
    for i, c in enumerate(piv):
        col = R.array[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


def test_row_space_basis_drops_dependent_rows():
    F = GF(2)
    M = GFMatrix(F, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    B = row_space_basis(M)
    assert B.rows == 2 == rank(M)


def test_packed_layout():
    F = GF(2)
    data = np.zeros((1, 70), dtype=np.int64)
    data[0, [0, 63, 64, 69]] = 1
    packed = GFMatrix(F, data).packed
    assert packed.shape == (1, 2)
    assert int(packed[0, 0]) == (1 << 0) | (1 << 63)
    assert int(packed[0, 1]) == (1 << 0) | (1 << 5)
    assert GFMatrix.from_packed(packed, 70) == GFMatrix(F, data)


def test_matrix_algebra_and_text_roundtrip():
    F = GF(4)
    A = GFMatrix(F, [[1, 2, 3], [0, 1, 2]])
    I3 = GFMatrix.identity(F, 3)
    assert A @ I3 == A
    assert (A + A).is_zero()
    assert A.T.shape == (3, 2)
    assert GFMatrix.from_text(A.to_text()) == A
    assert A.to_text().splitlines()[0] == "2 3 4 poly=1,1,1"
    with pytest.raises(UsageError):
        GFMatrix(F, [[4]])
    with pytest.raises(UsageError):
        A @ GFMatrix.identity(GF(2), 3)


def test_real_symmetric_storage():
    with pytest.raises(UsageError):
        RealSymMatrix([[1.0, 2.0], [2.0 + 1e-15, 1.0]])
    P = RealSymMatrix.from_lower([[1.0, 99.0], [2.0, 3.0]])
    assert np.array_equal(P.dense(), [[1.0, 2.0], [2.0, 3.0]])
    assert P.trace() == 4.0


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_jacobi_matches_lapack(k, seed):
    rng = np.random.default_rng(seed)
    B = rng.normal(size=(k, k))
    A = (B + B.T) / 2
    vals, vecs = symmetric_eigh(RealSymMatrix(A))
    ref = np.linalg.eigvalsh(A)[::-1]
    scale = 1 + np.max(np.abs(ref))
    assert np.allclose(vals, ref, atol=1e-10 * scale)
    assert np.allclose(vecs.T @ vecs, np.eye(k), atol=1e-10)
    assert np.allclose(A @ vecs, vecs * vals, atol=1e-9 * scale)
    assert np.all(np.diff(vals) <= 0)


def test_jacobi_non_convergence_raises(monkeypatch):
    monkeypatch.setattr(mx, "MAX_SWEEPS", 0)
    with pytest.raises(NumericError):
        symmetric_eigh(RealSymMatrix([[1.0, 1.0], [1.0, 1.0]]))


def test_bad_tolerance():
    with pytest.raises(UsageError):
        symmetric_eigh(RealSymMatrix([[1.0]]), tol=0.0)
