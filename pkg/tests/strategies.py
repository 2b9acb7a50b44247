"""Hypothesis strategies shared by the graph tests."""
from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from ggcode.graphs import PartiteGraph


def balanced_edges(ell: int, m: int, n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Each pair of parts joined by an n-regular bipartite graph (n shifted copies of a random matching)."""
    edges = []
    for i in range(ell):
        for j in range(i + 1, ell):
            perm = rng.permutation(m)
            shifts = rng.choice(m, size=n, replace=False)
            for a in range(m):
                for t in shifts:
                    edges.append((i * m + a, j * m + int((perm[a] + t) % m)))
    return edges


@st.composite
def balanced_graphs(draw, max_ell: int = 4, max_m: int = 5):
    ell = draw(st.integers(2, max_ell))
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, m))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return PartiteGraph.balanced(ell, m, balanced_edges(ell, m, n, rng))
