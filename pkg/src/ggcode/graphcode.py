"""Generalized graph codes: edge symbols whose view at every vertex lies in an inner code.

A vertex ``v`` in part ``i`` reads the symbols on its incident edges in
ascending coordinate order and the result must be a codeword of ``C_i``. The
global parity check stacks, for every vertex, the inner parity check with its
columns spread over the vertex's edge coordinates.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .codes import (
    EXHAUSTIVE_LIMIT,
    LinearCode,
    MinDistanceResult,
    Progress,
    bz_search,
    direct_sum,
    even_weight,
    exhaustive_search,
    hamming_binary,
    weight,
)
from .errors import CapacityError, DomainError, UsageError
from .field import FieldSpec
from .graphs import PartiteGraph, complete_multipartite, lambda2, validate_balanced
from .matrix import GFMatrix, kernel_basis, matmul, rank, row_space_basis

FLOAT_SLACK = 1e-6


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    failures: tuple[int, ...]  # 0-based vertices whose local view is not an inner codeword

    def __bool__(self):
        return self.ok


def spectral_bound(d, m, n, ell, lam2):
    """``d*m*(d - lam2) / ((ell-1)*n - lam2)``; exact when ``lam2`` is a Fraction."""
    denom = (ell - 1) * n - lam2
    if denom == 0:
        raise DomainError("bound denominator vanishes ((ell-1)n == lambda2)")
    if isinstance(lam2, Fraction):
        return Fraction(d * m) * (d - lam2) / denom
    return d * m * (d - lam2) / denom


def bipartite_bound(d, m, valency, lam2):
    """Two-part form ``d*m*(d - lam2) / (valency - lam2)`` for ordinary graph codes."""
    if isinstance(lam2, Fraction):
        return Fraction(d * m) * (d - lam2) / (valency - lam2)
    return d * m * (d - lam2) / (valency - lam2)


class GeneralizedGraphCode:
    """Graph code on a balanced ``ell``-partite graph; build with :func:`build`."""

    def __init__(self, graph: PartiteGraph, inner: Sequence[LinearCode], global_parity: GFMatrix):
        self.graph = graph
        self.inner = tuple(inner)
        self.global_parity = global_parity
        self._positions = [np.asarray(graph.incident_edges(v), dtype=np.int64) for v in range(graph.num_vertices)]
        self._lock = threading.Lock()
        self._K: int | None = None
        self._rank_checks: tuple[int, int] | None = None
        self._generator: GFMatrix | None = None
        self._distance: MinDistanceResult | None = None

    def __repr__(self):
        K = "?" if self._K is None else self._K
        D = "?" if self._distance is None else self._distance.describe()
        return f"<GeneralizedGraphCode ell={self.ell} m={self.m} n={self.n} [{self.N},{K},{D}]>"

    @property
    def field(self) -> FieldSpec:
        return self.inner[0].field

    @property
    def ell(self) -> int:
        return self.graph.ell

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def N(self) -> int:
        return self.graph.num_edges

    def positions(self, v: int) -> np.ndarray:
        """Codeword coordinates read by vertex ``v``, in local-view order."""
        return self._positions[v]

    def _vector(self, c) -> np.ndarray:
        vec = np.asarray(c, dtype=np.int64)
        if vec.shape != (self.N,):
            raise UsageError(f"edge assignment must have length {self.N}, got shape {vec.shape}")
        if vec.size and (vec.min() < 0 or vec.max() >= self.field.q):
            raise UsageError("edge assignment entries are not canonical field elements")
        return vec

    def local_view(self, c, v: int) -> np.ndarray:
        if not 0 <= v < self.graph.num_vertices:
            raise UsageError(f"vertex index {v} out of range")
        return self._vector(c)[self._positions[v]]

    def verify_membership(self, c) -> MembershipReport:
        vec = self._vector(c)
        bad = []
        for v in range(self.graph.num_vertices):
            code = self.inner[int(self.graph.part_of[v])]
            if not code.is_codeword(vec[self._positions[v]]):
                bad.append(v)
        return MembershipReport(not bad, tuple(bad))

    # dimension ------------------------------------------------------------

    def dimension(self) -> int:
        """``K = N - rank(global parity)``, confirmed by a second elimination on shuffled columns."""
        if self._K is None:
            H = self.global_parity
            first = rank(H)
            rng = np.random.default_rng(0x5EED)
            shuffled = H.take_rows(rng.permutation(H.rows)).take_columns(rng.permutation(H.cols))
            second = rank(shuffled)
            if first != second:  # pragma: no cover - elimination bug
                raise AssertionError(f"rank disagreement under column shuffle: {first} vs {second}")
            with self._lock:
                self._rank_checks = (first, second)
                self._K = self.N - first
        return self._K

    @property
    def rank_checks(self) -> tuple[int, int]:
        self.dimension()
        return self._rank_checks

    def generator(self) -> GFMatrix:
        """Basis of the code, one codeword per row (``K x N``)."""
        if self._generator is None:
            G = kernel_basis(self.global_parity)
            with self._lock:
                self._generator = G
        return self._generator

    def as_linear_code(self) -> LinearCode:
        if self.dimension() == 0:
            raise DomainError("the graph code is the zero code")
        return LinearCode(self.generator(), self.global_parity, name="graph code")

    def random_codeword(self, rng: np.random.Generator) -> np.ndarray:
        G = self.generator()
        msg = rng.integers(0, self.field.q, size=G.rows)
        return matmul(self.field, msg[None, :], G.array)[0]

    # minimum distance -----------------------------------------------------

    def distance_search(
        self,
        engine: str = "auto",
        *,
        workers: int = 1,
        progress: Progress | None = None,
        time_limit: float | None = None,
    ) -> MinDistanceResult:
        """Exact search (or a bracket when ``time_limit`` cuts a BZ run short)."""
        cached = self._distance
        if cached is not None and cached.exact and engine in ("auto", cached.engine):
            return cached
        K = self.dimension()
        if K == 0:
            raise DomainError("the graph code is the zero code; its minimum distance is undefined")
        q = self.field.q
        if engine == "auto":
            if q ** K <= EXHAUSTIVE_LIMIT:
                engine = "exhaustive"
            elif self.field.is_binary:
                engine = "bz"
            else:
                raise CapacityError(f"no exact engine for q={q}, K={K}: exhaustive guard exceeded and BZ is binary only")
        code = self.as_linear_code()
        if engine == "exhaustive":
            result = exhaustive_search(code)
        elif engine == "bz":
            result = bz_search(code, workers=workers, progress=progress, time_limit=time_limit)
        else:
            raise UsageError(f"unknown min-distance engine {engine!r}")
        with self._lock:
            if result.exact or self._distance is None:
                self._distance = result
        return result

    def minimum_distance(self, engine: str = "auto", *, workers: int = 1, progress: Progress | None = None) -> int:
        return self.distance_search(engine, workers=workers, progress=progress).upper

    # bound ----------------------------------------------------------------

    def bound_applicability(self) -> tuple[bool, str]:
        params = {(c.n, c.k, c.min_distance()) for c in self.inner}
        if len(params) != 1:
            return False, "inner codes differ in [n, k, d]; the spectral bound assumes one shared inner code"
        if not self.graph.is_connected():
            return False, "graph is disconnected, so lambda2 equals the degree and the bound's denominator vanishes"
        return True, ""

    def lambda2(self):
        return lambda2(self.graph)

    def theorem_bound(self):
        """Spectral lower bound on D, or ``None`` when the inner codes differ."""
        ok, _ = self.bound_applicability()
        if not ok:
            return None
        d = self.inner[0].min_distance()
        lam2 = self.lambda2()
        value = spectral_bound(d, self.m, self.n, self.ell, lam2)
        if self.ell == 2:
            assert value == bipartite_bound(d, self.m, self.n, lam2)
        return value

    def bound_satisfied(self, D: int, bound) -> bool:
        if isinstance(bound, Fraction):
            return D >= bound
        return D >= bound - FLOAT_SLACK

    # reporting ------------------------------------------------------------

    def report(
        self,
        *,
        engine: str = "auto",
        workers: int = 1,
        progress: Progress | None = None,
        time_limit: float | None = None,
        claims: dict | None = None,
    ) -> dict:
        """Parameter report in the JSON schema used by the CLI."""
        K = self.dimension()
        lam2 = self.lambda2()
        out: dict = {
            "q": self.field.q,
            "ell": self.ell,
            "m": self.m,
            "n": self.n,
            "N": self.N,
            "K": K,
        }
        D = None
        if K > 0:
            res = self.distance_search(engine, workers=workers, progress=progress, time_limit=time_limit)
            if res.exact:
                D = res.upper
                out["D"] = D
            else:
                out["D_bracket"] = [res.lower, res.upper]
            out["engine"] = res.engine
        else:
            out["D"] = None
            out["engine"] = "none"
        out["lambda2"] = jsonable(lam2)
        bound = self.theorem_bound()
        out["bound"] = jsonable(bound)
        out["bound_applicable"] = bound is not None
        out["bound_satisfied"] = None if (bound is None or D is None) else self.bound_satisfied(D, bound)
        out["order_convention"] = self.graph.order_convention()
        out["inner"] = [{"name": c.name, "n": c.n, "k": c.k, "d": c.min_distance()} for c in self.inner]
        out["rank_checks"] = list(self.rank_checks)
        checks = []
        for name, claimed in (claims or {}).items():
            computed = {"N": self.N, "K": K, "D": D, "bound": bound}[name]
            checks.append({
                "name": name,
                "claimed": jsonable(claimed),
                "computed": jsonable(computed),
                "match": computed is not None and computed == claimed,
            })
        out["paper_claim_checks"] = checks
        return out


def jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def build(graph: PartiteGraph, inner: LinearCode | Sequence[LinearCode]) -> GeneralizedGraphCode:
    """Assemble the code; a single inner code is used for every part."""
    if isinstance(inner, LinearCode):
        inner = [inner] * graph.ell
    inner = list(inner)
    if len(inner) != graph.ell:
        raise UsageError(f"need {graph.ell} inner codes (one per part), got {len(inner)}")
    report = validate_balanced(graph)
    if not report.ok:
        raise UsageError("graph is not balanced: " + "; ".join(report.lines()[:5]))
    local_len = (graph.ell - 1) * graph.n
    field = inner[0].field
    for i, c in enumerate(inner):
        if c.field != field:
            raise UsageError(f"inner code {i + 1} is over {c.field!r}, expected {field!r}")
        if c.n != local_len:
            raise UsageError(f"inner code {i + 1} has length {c.n}, local views have length {local_len}")
    checks = []
    for c in inner:
        H = c.parity_check
        checks.append(H if rank(H) == H.rows else row_space_basis(H))
    rows = sum(checks[int(graph.part_of[v])].rows for v in range(graph.num_vertices))
    data = np.zeros((rows, graph.num_edges), dtype=np.int64)
    r = 0
    for v in range(graph.num_vertices):
        H = checks[int(graph.part_of[v])]
        data[r:r + H.rows][:, graph.incident_edges(v)] = H.array
        r += H.rows
    return GeneralizedGraphCode(graph, inner, GFMatrix(field, data, check=False))


# --------------------------------------------------------------------------
# the two worked examples

PUBLISHED_CLAIMS = {
    "k777": {"N": 147, "K": 48, "D": 9, "bound": Fraction(9, 2)},
    "k333": {"N": 27, "D": 3, "bound": Fraction(2)},
}


def fixture_k777() -> GeneralizedGraphCode:
    """K_{7,7,7} with inner code H (+) H, H the [7,4,3] Hamming code, canonical edge order."""
    H = hamming_binary(3)
    return build(complete_multipartite(3, 7), direct_sum(H, H))


def fixture_k333() -> GeneralizedGraphCode:
    """K_{3,3,3} with the [6,5,2] even-weight code."""
    return build(complete_multipartite(3, 3), even_weight(6))


def assignment_from_matrix(graph: PartiteGraph, M) -> np.ndarray:
    """Edge vector from a symmetric vertex-indexed symbol matrix."""
    M = np.asarray(M, dtype=np.int64)
    if M.shape != (graph.num_vertices, graph.num_vertices) or not np.array_equal(M, M.T):
        raise UsageError("symbol matrix must be symmetric and indexed by vertices")
    ends = graph.endpoints
    c = M[ends[:, 0], ends[:, 1]]
    if int(M.sum()) != 2 * int(c.sum()):
        raise UsageError("symbol matrix has entries on non-edges")
    return c


def assignment_from_edges(graph: PartiteGraph, edges, symbols=None) -> np.ndarray:
    """Edge vector with the given 0-based edges set to ``symbols`` (default 1)."""
    c = np.zeros(graph.num_edges, dtype=np.int64)
    for t, (u, v) in enumerate(edges):
        key = (min(u, v), max(u, v))
        if key not in graph.edge_index:
            raise UsageError(f"({u + 1}, {v + 1}) is not an edge")
        c[graph.edge_index[key]] = 1 if symbols is None else symbols[t]
    return c


K333_MATRIX_M = np.array([
    [0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 1, 1, 0, 1],
    [0, 0, 0, 0, 1, 0, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 1, 1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 0, 0, 1, 1, 1],
    [0, 1, 1, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 0, 0, 0],
], dtype=np.int64)


def k333_matrix_assignment(gc: GeneralizedGraphCode | None = None) -> np.ndarray:
    graph = gc.graph if gc is not None else complete_multipartite(3, 3)
    return assignment_from_matrix(graph, K333_MATRIX_M)


def k333_triangle(gc: GeneralizedGraphCode | None = None) -> np.ndarray:
    """Ones on {v1,v4}, {v4,v7}, {v1,v7}."""
    graph = gc.graph if gc is not None else complete_multipartite(3, 3)
    return assignment_from_edges(graph, [(0, 3), (3, 6), (0, 6)])


HAMMING_MIN_WORD = np.array([1, 1, 1, 0, 0, 0, 0], dtype=np.int64)


def k777_witness(gc: GeneralizedGraphCode | None = None) -> np.ndarray:
    """Symbol s_i s_j on {v_i, v_j} for V1 x V2, s = 1110000 on both parts, zero elsewhere."""
    graph = gc.graph if gc is not None else complete_multipartite(3, 7)
    s = np.zeros(graph.num_vertices, dtype=np.int64)
    s[0:7] = HAMMING_MIN_WORD
    s[7:14] = HAMMING_MIN_WORD
    M = np.zeros((graph.num_vertices,) * 2, dtype=np.int64)
    M[0:7, 7:14] = np.outer(s[0:7], s[7:14])
    return assignment_from_matrix(graph, M + M.T)


WITNESSES = {
    "k777": {"witness": k777_witness},
    "k333": {"triangle": k333_triangle, "matrix-M": k333_matrix_assignment},
}

FIXTURES = {"k777": fixture_k777, "k333": fixture_k333}


def parse_assignment(text: str, N: int, field: FieldSpec) -> np.ndarray:
    try:
        vals = np.array([int(t) for t in text.split()], dtype=np.int64)
    except ValueError as exc:
        raise UsageError(f"assignment file holds a non-integer token: {exc}") from exc
    if vals.shape != (N,):
        raise UsageError(f"assignment has {vals.size} symbols, expected N = {N}")
    if vals.size and (vals.min() < 0 or vals.max() >= field.q):
        raise UsageError("assignment symbols are not canonical field elements")
    return vals


def load_assignment(path: str | Path, N: int, field: FieldSpec) -> np.ndarray:
    return parse_assignment(Path(path).read_text(), N, field)


def dump_assignment(c) -> str:
    return " ".join(str(int(x)) for x in np.asarray(c)) + "\n"


__all__ = [
    "FIXTURES",
    "GeneralizedGraphCode",
    "K333_MATRIX_M",
    "MembershipReport",
    "PUBLISHED_CLAIMS",
    "WITNESSES",
    "assignment_from_edges",
    "assignment_from_matrix",
    "bipartite_bound",
    "build",
    "dump_assignment",
    "fixture_k333",
    "fixture_k777",
    "jsonable",
    "k333_matrix_assignment",
    "k333_triangle",
    "k777_witness",
    "load_assignment",
    "parse_assignment",
    "spectral_bound",
    "weight",
]
