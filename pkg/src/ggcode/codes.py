"""Inner linear codes and exact minimum distance.

Two independent engines compute the minimum distance:

* :func:`min_distance_exhaustive` walks every nonzero message (guarded at
  ``q^k <= 2^22``);
* :func:`min_distance_bz` is Brouwer-Zimmermann over GF(2): several
  information sets, low-weight message enumeration through each systematic
  generator, and a proven lower bound that rises until it meets the best
  weight seen.
"""
from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import CapacityError, UsageError
from .field import GF, FieldSpec
from .matrix import GFMatrix, kernel_basis, load_matrix, matmul, rank, rref

EXHAUSTIVE_LIMIT = 1 << 22
_CHUNK = 1 << 15

Progress = Callable[[int, int], None]


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


@dataclass
class MinDistanceResult:
    """Outcome of a minimum-distance search; ``lower == upper`` when exact."""

    lower: int
    upper: int
    engine: str
    witness: Optional[np.ndarray] = None
    stats: dict = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def describe(self) -> str:
        return str(self.upper) if self.exact else f">= {self.lower} / <= {self.upper}"


class LinearCode:
    """An ``[n, k, d]`` code over ``field`` held by generator and parity check.

    The generator must have full row rank with ``k >= 1``. A missing parity
    check is derived from the generator's kernel. ``d`` is computed on demand
    and cached once.
    """

    def __init__(self, generator: GFMatrix, parity_check: GFMatrix | None = None, *, name: str = ""):
        k = rank(generator) if generator.rows else 0
        if k < 1:
            raise UsageError("a linear code needs dimension k >= 1")
        if k != generator.rows:
            raise UsageError(f"generator rows are dependent (rank {k} < {generator.rows})")
        if parity_check is None:
            parity_check = kernel_basis(generator)
        else:
            if parity_check.field != generator.field:
                raise UsageError("generator and parity check live in different fields")
            if parity_check.cols != generator.cols:
                raise UsageError("generator and parity check have different lengths")
            if not (generator @ parity_check.T).is_zero():
                raise UsageError("generator rows violate the parity check")
            if rank(parity_check) + k != generator.cols:
                raise UsageError("parity check rank does not match n - k")
        self.generator = generator
        self.parity_check = parity_check
        self.name = name
        self._lock = threading.Lock()
        self._d: int | None = None

    @classmethod
    def from_generator(cls, generator: GFMatrix, name: str = "") -> "LinearCode":
        return cls(generator, name=name)

    @classmethod
    def from_parity_check(cls, parity_check: GFMatrix, name: str = "") -> "LinearCode":
        gen = kernel_basis(parity_check)
        if gen.rows == 0:
            raise UsageError("parity check admits only the zero codeword")
        return cls(gen, parity_check, name=name)

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    def __repr__(self):
        d = "?" if self._d is None else self._d
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k},{d}] over {self.field!r}>"

    @property
    def cached_min_distance(self) -> int | None:
        return self._d

    def _publish_d(self, d: int) -> None:
        with self._lock:
            if self._d is None:
                self._d = int(d)
            elif self._d != d:  # pragma: no cover - would mean an engine bug
                raise AssertionError(f"conflicting minimum distances {self._d} and {d}")

    def min_distance(self, engine: str = "auto", *, workers: int = 1, progress: Progress | None = None) -> int:
        if self._d is not None:
            return self._d
        if engine == "auto":
            engine = "exhaustive" if self.field.q ** self.k <= EXHAUSTIVE_LIMIT or not self.field.is_binary else "bz"
        if engine == "exhaustive":
            d = min_distance_exhaustive(self)
        elif engine == "bz":
            d = min_distance_bz(self, workers=workers, progress=progress)
        else:
            raise UsageError(f"unknown min-distance engine {engine!r}")
        self._publish_d(d)
        return d

    def params(self, engine: str = "auto") -> tuple[int, int, int]:
        return self.n, self.k, self.min_distance(engine)

    def encode(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.k,):
            raise UsageError(f"message must have length {self.k}")
        return matmul(self.field, msg[None, :], self.generator.array)[0]

    def is_codeword(self, v) -> bool:
        return is_codeword(self, v)

    def codewords(self):
        """All ``q^k`` codewords as rows (small codes only)."""
        if self.field.q ** self.k > EXHAUSTIVE_LIMIT:
            raise CapacityError(f"q^k = {self.field.q}^{self.k} codewords is too many to list")
        return matmul(self.field, _all_messages(self.field.q, self.k, 0, self.field.q ** self.k), self.generator.array)


def is_codeword(C: LinearCode, v) -> bool:
    vec = np.asarray(v, dtype=np.int64)
    if vec.shape != (C.n,):
        raise UsageError(f"vector length {vec.shape} does not match code length {C.n}")
    if vec.size and (vec.min() < 0 or vec.max() >= C.field.q):
        raise UsageError("vector entries are not canonical field elements")
    if C.parity_check.rows == 0:
        return True
    return not (C.parity_check @ vec).any()


# --------------------------------------------------------------------------
# constructors


def hamming_binary(r: int) -> LinearCode:
    """Binary Hamming code; parity-check column j is the r-bit pattern of j (1..2^r-1)."""
    if r < 2:
        raise UsageError("Hamming codes need r >= 2")
    n = (1 << r) - 1
    cols = np.arange(1, n + 1)
    H = ((cols[None, :] >> np.arange(r - 1, -1, -1)[:, None]) & 1).astype(np.int64)
    return LinearCode.from_parity_check(GFMatrix(GF(2), H), name=f"hamming:{r}")


def even_weight(n: int) -> LinearCode:
    if n < 2:
        raise UsageError("even-weight code needs n >= 2")
    return LinearCode.from_parity_check(GFMatrix(GF(2), np.ones((1, n), dtype=np.int64)), name=f"even:{n}")


def repetition(n: int) -> LinearCode:
    if n < 1:
        raise UsageError("repetition code needs n >= 1")
    return LinearCode(GFMatrix(GF(2), np.ones((1, n), dtype=np.int64)), name=f"rep:{n}")


def direct_sum(C1: LinearCode, C2: LinearCode) -> LinearCode:
    """Codewords ``(c1 | c2)``; length and dimension add, distance is the smaller one."""
    if C1.field != C2.field:
        raise UsageError(f"field mismatch: {C1.field!r} vs {C2.field!r}")
    f = C1.field

    def block(a: GFMatrix, b: GFMatrix) -> GFMatrix:
        out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.int64)
        out[: a.rows, : a.cols] = a.array
        out[a.rows:, a.cols:] = b.array
        return GFMatrix(f, out, check=False)

    code = LinearCode(
        block(C1.generator, C2.generator),
        block(C1.parity_check, C2.parity_check),
        name=f"dsum:{C1.name or '?'},{C2.name or '?'}",
    )
    if C1.cached_min_distance is not None and C2.cached_min_distance is not None:
        code._publish_d(min(C1.cached_min_distance, C2.cached_min_distance))
    return code


# --------------------------------------------------------------------------
# exhaustive engine


def _all_messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """Messages ``start..stop-1`` as base-q digit rows (digit i = coefficient of row i)."""
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q


def exhaustive_search(C: LinearCode) -> MinDistanceResult:
    q, k = C.field.q, C.k
    if q ** k > EXHAUSTIVE_LIMIT:
        raise CapacityError(f"exhaustive search over {q}^{k} messages exceeds the 2^22 guard")
    if C.field.is_binary:
        best, msg = kernels.gf2_min_weight_all(C.generator.packed)
        bits = (msg >> np.arange(k)) & 1
        witness = matmul(C.field, bits[None, :], C.generator.array)[0]
        return MinDistanceResult(best, best, "exhaustive", witness, {"codewords": (1 << k) - 1})
    best, witness = C.n + 1, None
    for start in range(1, q ** k, _CHUNK):
        msgs = _all_messages(q, k, start, min(start + _CHUNK, q ** k))
        words = matmul(C.field, msgs, C.generator.array)
        weights = np.count_nonzero(words, axis=1)
        j = int(np.argmin(weights))
        if weights[j] < best:
            best, witness = int(weights[j]), words[j]
    return MinDistanceResult(best, best, "exhaustive", witness, {"codewords": q ** k - 1})


def min_distance_exhaustive(C: LinearCode) -> int:
    return exhaustive_search(C).upper


# --------------------------------------------------------------------------
# Brouwer-Zimmermann


@dataclass
class InformationSet:
    generator: np.ndarray  # packed systematic generator, original column order
    pivots: list[int]
    fresh_rank: int  # pivots not covered by earlier sets


def information_sets(G: GFMatrix) -> list[InformationSet]:
    """Greedy disjoint information sets by elimination on unused columns first."""
    k, n = G.shape
    fresh = list(range(n))
    used: list[int] = []
    out: list[InformationSet] = []
    while fresh:
        order = fresh + used
        reduced, piv = rref(G.take_columns(order))
        fresh_piv = [order[p] for p in piv if p < len(fresh)]
        if not fresh_piv:
            break
        systematic = np.empty_like(reduced.array)
        systematic[:, order] = reduced.array
        out.append(InformationSet(kernels.pack_rows(systematic), [order[p] for p in piv], len(fresh_piv)))
        taken = set(fresh_piv)
        used += fresh_piv
        fresh = [c for c in fresh if c not in taken]
    return out


def _bz_lower(sets: list[InformationSet], k: int, w: int, done: int) -> int:
    """Bound once weight ``w`` is finished for the first ``done`` sets (and w-1 for the rest)."""
    total = 0
    for j, s in enumerate(sets):
        reach = w if j < done else w - 1
        total += max(0, reach + 1 - (k - s.fresh_rank))
    return total


def bz_search(
    C: LinearCode,
    *,
    workers: int = 1,
    progress: Progress | None = None,
    time_limit: float | None = None,
) -> MinDistanceResult:
    """Brouwer-Zimmermann search; returns a bracket if ``time_limit`` runs out."""
    if not C.field.is_binary:
        raise UsageError("the Brouwer-Zimmermann engine is implemented for GF(2) only")
    k, n = C.k, C.n
    sets = information_sets(C.generator)
    upper, witness = n + 1, None
    lower = 1
    started = time.monotonic()
    visited = 0

    def report():
        if progress is not None:
            progress(lower, upper)

    def absorb(best, word):
        nonlocal upper, witness
        if best < upper:
            upper, witness = best, word

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for w in range(1, k + 1):
            if pool is None:
                for j, s in enumerate(sets):
                    best, word, seen = kernels.gf2_min_weight_combos(s.generator, w, lower)
                    visited += seen
                    absorb(best, word)
                    lower = max(lower, _bz_lower(sets, k, w, j + 1))
                    report()
                    if lower >= upper:
                        break
                    if time_limit is not None and time.monotonic() - started > time_limit:
                        return _bracket(lower, upper, witness, n, sets, visited, w)
            else:
                stop = lower
                results = list(pool.map(lambda s: kernels.gf2_min_weight_combos(s.generator, w, stop), sets))
                for best, word, seen in results:
                    visited += seen
                    absorb(best, word)
                lower = max(lower, _bz_lower(sets, k, w, len(sets)))
                report()
                if lower < upper and time_limit is not None and time.monotonic() - started > time_limit:
                    return _bracket(lower, upper, witness, n, sets, visited, w)
            if lower >= upper:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    # either the bound met the best weight, or every message went through set 0
    lower = upper
    report()
    return _bracket(lower, upper, witness, n, sets, visited, w)


def _bracket(lower, upper, witness, n, sets, visited, w) -> MinDistanceResult:
    word = None if witness is None else kernels.unpack_rows(witness[None, :], n)[0]
    stats = {
        "information_sets": len(sets),
        "fresh_ranks": [s.fresh_rank for s in sets],
        "max_message_weight": w,
        "combinations": visited,
    }
    return MinDistanceResult(min(lower, upper), upper, "bz", word, stats)


def min_distance_bz(C: LinearCode, *, workers: int = 1, progress: Progress | None = None) -> int:
    return bz_search(C, workers=workers, progress=progress).upper


# --------------------------------------------------------------------------
# files


def load_code(path: str | Path, name: str = "") -> LinearCode:
    """Code file: ``generator`` or ``parity`` on line 1, then a matrix block."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise UsageError(f"{path}: empty code file")
    kind = lines[0].strip().lower()
    M = GFMatrix.from_text("\n".join(lines[1:]))
    label = name or Path(path).name
    if kind == "generator":
        return LinearCode(M, name=label)
    if kind == "parity":
        return LinearCode.from_parity_check(M, name=label)
    raise UsageError(f"{path}: first line must be 'generator' or 'parity', got {kind!r}")


def dump_code(C: LinearCode, kind: str = "generator") -> str:
    if kind == "generator":
        return "generator\n" + C.generator.to_text()
    if kind == "parity":
        return "parity\n" + C.parity_check.to_text()
    raise UsageError(f"unknown code file kind {kind!r}")


__all__ = [
    "EXHAUSTIVE_LIMIT",
    "InformationSet",
    "LinearCode",
    "MinDistanceResult",
    "bz_search",
    "direct_sum",
    "dump_code",
    "even_weight",
    "exhaustive_search",
    "hamming_binary",
    "information_sets",
    "is_codeword",
    "load_code",
    "load_matrix",
    "min_distance_bz",
    "min_distance_exhaustive",
    "repetition",
    "weight",
]
