"""Dense matrices over GF(q) and a Jacobi eigensolver for real symmetric matrices.

GF(2) matrices keep a bit-packed copy of their rows (uint64 words) and all
elimination over GF(2) runs on it through :mod:`ggcode.kernels`.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from . import kernels
from .errors import NumericError, UsageError
from .field import GF, FieldSpec, parse_field_spec

DEFAULT_EIG_TOL = 1e-12
MAX_SWEEPS = 100


class GFMatrix:
    """Immutable ``rows x cols`` matrix with entries canonical in ``field``."""

    __slots__ = ("field", "_data", "_packed")

    def __init__(self, field: FieldSpec, data, *, check: bool = True):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise UsageError(f"matrix data must be 2-D, got shape {arr.shape}")
        if check and arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise UsageError(f"entries must be canonical in {field!r}")
        arr.flags.writeable = False
        self.field = field
        self._data = arr
        self._packed = None

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GFMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64), check=False)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls(field, np.eye(n, dtype=np.int64), check=False)

    @classmethod
    def from_packed(cls, packed: np.ndarray, cols: int) -> "GFMatrix":
        m = cls(GF(2), kernels.unpack_rows(packed, cols), check=False)
        m._packed = np.array(packed, dtype=np.uint64)
        m._packed.flags.writeable = False
        return m

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view of the entries."""
        return self._data

    @property
    def packed(self) -> np.ndarray:
        if not self.field.is_binary:
            raise UsageError("bit packing only applies to GF(2) matrices")
        if self._packed is None:
            packed = kernels.pack_rows(self._data)
            packed.flags.writeable = False
            self._packed = packed
        return self._packed

    def __repr__(self):
        return f"GFMatrix({self.field!r}, {self.rows}x{self.cols})"

    def __eq__(self, other):
        return (
            isinstance(other, GFMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._data, other._data))
        )

    __hash__ = None

    def __getitem__(self, idx):
        return self._data[idx]

    def row(self, i: int) -> np.ndarray:
        return self._data[i]

    @property
    def T(self) -> "GFMatrix":
        return GFMatrix(self.field, self._data.T, check=False)

    def _same_field(self, other: "GFMatrix") -> None:
        if self.field != other.field:
            raise UsageError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __matmul__(self, other):
        if isinstance(other, GFMatrix):
            self._same_field(other)
            return GFMatrix(self.field, matmul(self.field, self._data, other._data), check=False)
        vec = np.asarray(other, dtype=np.int64)
        if vec.ndim == 1:
            return matmul(self.field, self._data, vec[:, None])[:, 0]
        return NotImplemented

    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise UsageError(f"shape mismatch {self.shape} vs {other.shape}")
        return GFMatrix(self.field, self.field.add_arr(self._data, other._data), check=False)

    def take_columns(self, cols) -> "GFMatrix":
        return GFMatrix(self.field, self._data[:, np.asarray(cols, dtype=np.int64)], check=False)

    def take_rows(self, rows) -> "GFMatrix":
        return GFMatrix(self.field, self._data[np.asarray(rows, dtype=np.int64)], check=False)

    def is_zero(self) -> bool:
        return not self._data.any()

    def to_text(self) -> str:
        header = f"{self.rows} {self.cols} {self.field.q}"
        if self.field.poly is not None:
            header += " poly=" + ",".join(map(str, self.field.poly))
        lines = [header] + [" ".join(map(str, r)) for r in self._data.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GFMatrix":
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        return _matrix_from_tokens(lines)


def _matrix_from_tokens(lines: list[list[str]]) -> GFMatrix:
    if not lines:
        raise UsageError("empty matrix text")
    head = lines[0]
    if len(head) < 3:
        raise UsageError(f"matrix header must be 'rows cols q', got {' '.join(head)!r}")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError as exc:
        raise UsageError(f"bad matrix header {' '.join(head)!r}") from exc
    field = parse_field_spec(" ".join(["q=" + head[2]] + head[3:]))
    body = lines[1:]
    if len(body) != rows:
        raise UsageError(f"expected {rows} matrix rows, found {len(body)}")
    try:
        data = np.array([[int(t) for t in r] for r in body], dtype=np.int64).reshape(rows, cols)
    except ValueError as exc:
        raise UsageError(f"matrix rows do not form a {rows}x{cols} integer grid") from exc
    return GFMatrix(field, data)


def load_matrix(path: str | Path) -> GFMatrix:
    return GFMatrix.from_text(Path(path).read_text())


def matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of canonical int arrays over ``field``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise UsageError(f"cannot multiply {a.shape} by {b.shape}")
    if field.e == 1:
        if field.q == 2:
            return (a @ b) & 1
        # entries < 2^16 so each product < 2^32; reduce per block to stay in int64
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        step = 1 << 20
        for s in range(0, a.shape[1], step):
            out = (out + a[:, s:s + step] @ b[s:s + step]) % field.q
        return out
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out ^= field.mul_arr(a[:, t:t + 1], b[t:t + 1, :])
    return out


def _rref_general(field: FieldSpec, data: np.ndarray):
    a = np.array(data, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(a[r:, col])
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = field.mul_arr(a[r], field.inv(int(a[r, col])))
        others = np.flatnonzero(a[:, col])
        others = others[others != r]
        if others.size:
            scale = a[others, col][:, None]
            a[others] = field.sub_arr(a[others], field.mul_arr(scale, a[r][None, :]))
        pivots.append(col)
        r += 1
    return a, pivots


def rref(M: GFMatrix) -> tuple[GFMatrix, list[int]]:
    """Reduced row echelon form and pivot columns; row count is preserved."""
    if M.field.is_binary:
        reduced, pivots = kernels.gf2_rref(M.packed, M.cols)
        return GFMatrix.from_packed(reduced, M.cols), pivots.tolist()
    a, pivots = _rref_general(M.field, M.array)
    return GFMatrix(M.field, a, check=False), pivots


def rank(M: GFMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(rref(M)[1])


def kernel_basis(M: GFMatrix) -> GFMatrix:
    """Basis of {v : M v = 0}, one vector per row (``nullity x cols``)."""
    field, cols = M.field, M.cols
    if M.rows == 0:
        return GFMatrix.identity(field, cols)
    reduced, pivots = rref(M)
    red = reduced.array
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, pivots] = field.neg_arr(red[: len(pivots)][:, free].T)
    return GFMatrix(field, basis, check=False)


def row_space_basis(M: GFMatrix) -> GFMatrix:
    """Nonzero rows of the RREF."""
    reduced, pivots = rref(M)
    return reduced.take_rows(range(len(pivots)))


# --------------------------------------------------------------------------
# real symmetric matrices


class RealSymMatrix:
    """Real symmetric matrix stored as its lower triangle."""

    __slots__ = ("order", "_tril")

    def __init__(self, dense, *, check: bool = True):
        arr = np.asarray(dense, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise UsageError(f"symmetric matrix must be square, got shape {arr.shape}")
        if check and not np.array_equal(arr, arr.T):
            raise UsageError("matrix is not exactly symmetric")
        self.order = arr.shape[0]
        rows, cols = np.tril_indices(self.order)
        self._tril = arr[rows, cols].copy()
        self._tril.flags.writeable = False

    @classmethod
    def from_lower(cls, dense) -> "RealSymMatrix":
        """Build from the lower triangle of ``dense``; the upper part is ignored."""
        arr = np.tril(np.asarray(dense, dtype=np.float64))
        return cls(arr + np.tril(arr, -1).T)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.order, self.order))
        rows, cols = np.tril_indices(self.order)
        out[rows, cols] = self._tril
        out[cols, rows] = self._tril
        return out

    def trace(self) -> float:
        return float(np.trace(self.dense()))

    def __repr__(self):
        return f"RealSymMatrix(order={self.order})"


def symmetric_eigh(P: RealSymMatrix, tol: float = DEFAULT_EIG_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvector columns by cyclic Jacobi.

    Stops once the off-diagonal Frobenius norm is at most ``tol`` times the
    initial Frobenius norm; raises :class:`NumericError` if that does not
    happen within the sweep budget.
    """
    if not tol > 0:
        raise UsageError("tol must be positive")
    if P.order == 0:
        return np.zeros(0), np.zeros((0, 0))
    vals, vecs, sweeps, converged = kernels.jacobi_eigh(P.dense(), tol, MAX_SWEEPS)
    if not converged:
        raise NumericError(f"Jacobi did not converge in {sweeps} sweeps")
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def symmetric_eigenvalues(P: RealSymMatrix, tol: float = DEFAULT_EIG_TOL) -> list[float]:
    return symmetric_eigh(P, tol)[0].tolist()
