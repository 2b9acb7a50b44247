"""Balanced multipartite graphs with a total order on their edges.

Vertices are 0-based internally and 1-based in files and reports. An edge is
stored as ``(u, v)`` with ``u < v``; its position in :attr:`PartiteGraph.edges`
is its codeword coordinate.

Canonical order: edge ``e1`` precedes ``e2`` when its larger endpoint has the
smaller label, ties broken by the smaller endpoint. So the list starts
``{v1,v8}, {v2,v8}, ..., {v7,v8}, {v1,v9}, ...`` on K_{7,7,7}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .matrix import DEFAULT_EIG_TOL, RealSymMatrix, symmetric_eigh

Edge = tuple[int, int]

ORDERS = ("canonical", "file")


def canonical_key(e: Edge) -> tuple[int, int]:
    u, v = e
    return (max(u, v), min(u, v))


def edge_order_compare(e1: Edge, e2: Edge) -> int:
    """-1 if ``e1`` precedes ``e2`` in the canonical order, 0 if equal, 1 otherwise."""
    a, b = canonical_key(e1), canonical_key(e2)
    return (a > b) - (a < b)


@dataclass(frozen=True)
class VertexSubset:
    part: int
    members: frozenset[int]


class PartiteGraph:
    """Graph on ``parts`` (disjoint vertex lists covering ``0..V-1``) with no intra-part edges."""

    def __init__(self, parts: Sequence[Sequence[int]], edges: Iterable[Edge], *, order: str = "canonical"):
        if order not in ORDERS:
            raise UsageError(f"edge order must be one of {ORDERS}, got {order!r}")
        parts = tuple(tuple(int(v) for v in p) for p in parts)
        if len(parts) < 2:
            raise UsageError("a partite graph needs at least two parts")
        flat = [v for p in parts for v in p]
        nv = len(flat)
        if sorted(flat) != list(range(nv)):
            raise UsageError("parts must partition the vertices 0..V-1")
        part_of = np.empty(nv, dtype=np.int64)
        for i, p in enumerate(parts):
            part_of[list(p)] = i
        norm: list[Edge] = []
        seen: set[Edge] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < nv and 0 <= v < nv):
                raise UsageError(f"edge ({u + 1}, {v + 1}) has an endpoint outside 1..{nv}")
            if part_of[u] == part_of[v]:
                raise UsageError(f"edge ({u + 1}, {v + 1}) joins two vertices of part {part_of[u] + 1}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise UsageError(f"duplicate edge ({e[0] + 1}, {e[1] + 1})")
            seen.add(e)
            norm.append(e)
        if order == "canonical":
            norm.sort(key=canonical_key)
        self.parts = parts
        self.order = order
        self.edges: tuple[Edge, ...] = tuple(norm)
        self.part_of = part_of
        self.part_of.flags.writeable = False
        inc: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        for idx, (u, v) in enumerate(self.edges):
            inc[u].append((idx, v))
            inc[v].append((idx, u))
        self.incidence: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(x) for x in inc)

    @classmethod
    def balanced(cls, ell: int, m: int, edges: Iterable[Edge], *, order: str = "canonical") -> "PartiteGraph":
        """Parts are consecutive index blocks: part i holds ``i*m .. i*m + m - 1``."""
        if ell < 2 or m < 1:
            raise UsageError(f"need ell >= 2 and m >= 1, got ell={ell}, m={m}")
        parts = [range(i * m, (i + 1) * m) for i in range(ell)]
        return cls(parts, edges, order=order)

    def __repr__(self):
        sizes = ",".join(str(len(p)) for p in self.parts)
        return f"<PartiteGraph parts=[{sizes}] |E|={len(self.edges)} order={self.order}>"

    @property
    def ell(self) -> int:
        return len(self.parts)

    @property
    def num_vertices(self) -> int:
        return len(self.part_of)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> int:
        """Part size (size of the first part; see :func:`validate_balanced`)."""
        return len(self.parts[0])

    @cached_property
    def n(self) -> int:
        """Cross-part valency: the most common ``|N(v) & V_j|`` over vertices and parts j != part(v)."""
        counts = _cross_counts(self)
        return _mode(counts[np.arange(self.ell)[None, :] != self.part_of[:, None]])

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> list[int]:
        return [w for _, w in self.incidence[v]]

    def incident_edges(self, v: int) -> list[int]:
        """Edge positions at ``v`` in ascending order."""
        return [idx for idx, _ in self.incidence[v]]

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def endpoints(self) -> np.ndarray:
        """``|E| x 2`` int array of edge endpoints."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    def is_complete_multipartite(self) -> bool:
        sizes = {len(p) for p in self.parts}
        if len(sizes) != 1:
            return False
        m = sizes.pop()
        return self.num_edges == self.ell * (self.ell - 1) * m * m // 2

    def is_connected(self) -> bool:
        seen = np.zeros(self.num_vertices, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for _, w in self.incidence[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return bool(seen.all())

    def canonical_edges(self) -> list[Edge]:
        return sorted(self.edges, key=canonical_key)

    def order_convention(self) -> str:
        head = "canonical (max endpoint, then min endpoint, ascending labels)" if self.order == "canonical" else "file order"
        return f"{head}; coordinate 1 is the first edge; local views read incident edges by ascending coordinate"


def _mode(values) -> int:
    vals = np.asarray(values).ravel()
    if vals.size == 0:
        return 0
    counts = Counter(vals.tolist())
    top = max(counts.values())
    return max(v for v, c in counts.items() if c == top)


def _cross_counts(G: PartiteGraph) -> np.ndarray:
    """``V x ell`` array: number of neighbours of each vertex inside each part."""
    out = np.zeros((G.num_vertices, G.ell), dtype=np.int64)
    if G.num_edges:
        u, v = G.endpoints[:, 0], G.endpoints[:, 1]
        np.add.at(out, (u, G.part_of[v]), 1)
        np.add.at(out, (v, G.part_of[u]), 1)
    return out


def complete_multipartite(ell: int, m: int) -> PartiteGraph:
    if ell < 2 or m < 1:
        raise UsageError(f"need ell >= 2 and m >= 1, got ell={ell}, m={m}")
    edges = [
        (u, v)
        for v in range(ell * m)
        for u in range(v)
        if u // m != v // m
    ]
    return PartiteGraph.balanced(ell, m, edges)


# --------------------------------------------------------------------------
# balance conditions


@dataclass(frozen=True)
class Violation:
    condition: str  # "i" (part sizes) or "ii" (cross valency)
    part: int  # 1-based
    vertex: int | None  # 1-based
    detail: str


@dataclass(frozen=True)
class BalanceReport:
    m: int
    n: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        return [f"condition ({v.condition}): {v.detail}" for v in self.violations]


def validate_balanced(G: PartiteGraph) -> BalanceReport:
    """Check equal part sizes and constant cross-part valency; violations are returned, not raised."""
    sizes = [len(p) for p in G.parts]
    m = _mode(sizes)
    out: list[Violation] = []
    for i, s in enumerate(sizes):
        if s != m:
            out.append(Violation("i", i + 1, None, f"part {i + 1} has {s} vertices, expected {m}"))
    counts = _cross_counts(G)
    n = G.n
    for v in range(G.num_vertices):
        pv = int(G.part_of[v])
        for j in range(G.ell):
            if j != pv and counts[v, j] != n:
                out.append(Violation(
                    "ii", pv + 1, v + 1,
                    f"vertex v{v + 1} has {counts[v, j]} neighbours in part {j + 1}, expected {n}",
                ))
    return BalanceReport(m, n, tuple(out))


# --------------------------------------------------------------------------
# spectra


def adjacency_matrix(G: PartiteGraph) -> RealSymMatrix:
    A = np.zeros((G.num_vertices, G.num_vertices))
    if G.num_edges:
        u, v = G.endpoints[:, 0], G.endpoints[:, 1]
        A[u, v] = 1.0
        A[v, u] = 1.0
    return RealSymMatrix(A)


def complete_multipartite_spectrum(ell: int, m: int) -> list[int]:
    """Adjacency spectrum of K_{m,...,m} (ell parts), descending, with multiplicity."""
    return [(ell - 1) * m] + [0] * (ell * (m - 1)) + [-m] * (ell - 1)


def spectrum(G: PartiteGraph, tol: float = DEFAULT_EIG_TOL, *, numeric: bool = False) -> list:
    """Descending eigenvalues; exact ints for complete multipartite graphs unless ``numeric``."""
    if not numeric and G.is_complete_multipartite():
        return complete_multipartite_spectrum(G.ell, G.m)
    return symmetric_eigh(adjacency_matrix(G), tol)[0].tolist()


def lambda2(G: PartiteGraph, tol: float = DEFAULT_EIG_TOL, *, numeric: bool = False) -> Fraction | float:
    """Second largest adjacency eigenvalue counted with multiplicity.

    A :class:`~fractions.Fraction` when the closed form applies, else a float.
    """
    spec = spectrum(G, tol, numeric=numeric)
    if len(spec) < 2:
        raise UsageError("graph has fewer than two vertices")
    val = spec[1]
    return Fraction(val) if isinstance(val, int) else float(val)


def edge_count_between(G: PartiteGraph, U: Iterable[int], T: Iterable[int]) -> int:
    """Number of edges with one endpoint in ``U`` and the other in ``T`` (disjoint sets)."""
    U, T = set(U), set(T)
    if U & T:
        raise UsageError("edge_count_between needs disjoint vertex sets")
    if not U or not T or not G.num_edges:
        return 0
    inU = np.zeros(G.num_vertices, dtype=bool)
    inT = np.zeros(G.num_vertices, dtype=bool)
    inU[list(U)] = True
    inT[list(T)] = True
    a, b = G.endpoints[:, 0], G.endpoints[:, 1]
    return int(np.count_nonzero((inU[a] & inT[b]) | (inT[a] & inU[b])))


# --------------------------------------------------------------------------
# files


def parse_graph(text: str, *, order: str = "canonical") -> PartiteGraph:
    """``partite <ell> <m>`` header, then one 1-based ``u v`` edge per line."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0].lower() != "partite" or len(lines[0]) != 3:
        raise UsageError("graph file must start with 'partite <ell> <m>'")
    try:
        ell, m = int(lines[0][1]), int(lines[0][2])
        edges = [(int(a) - 1, int(b) - 1) for a, b in lines[1:]]
    except ValueError as exc:
        raise UsageError(f"malformed graph file: {exc}") from exc
    return PartiteGraph.balanced(ell, m, edges, order=order)


def load_graph(path: str | Path, *, order: str = "canonical") -> PartiteGraph:
    return parse_graph(Path(path).read_text(), order=order)


def dump_graph(G: PartiteGraph) -> str:
    if len({len(p) for p in G.parts}) != 1 or any(
        tuple(p) != tuple(range(i * G.m, (i + 1) * G.m)) for i, p in enumerate(G.parts)
    ):
        raise UsageError("only graphs with consecutive equal-size parts have a file form")
    lines = [f"partite {G.ell} {G.m}"] + [f"{u + 1} {v + 1}" for u, v in G.edges]
    return "\n".join(lines) + "\n"
