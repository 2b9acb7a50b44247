from __future__ import annotations

from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from strategies import balanced_edges, balanced_graphs

from ggcode.errors import UsageError
from ggcode.graphs import (
    PartiteGraph,
    adjacency_matrix,
    complete_multipartite,
    complete_multipartite_spectrum,
    dump_graph,
    edge_count_between,
    edge_order_compare,
    lambda2,
    load_graph,
    parse_graph,
    spectrum,
    validate_balanced,
)


def test_canonical_order_on_k777():
    G = complete_multipartite(3, 7)
    assert G.num_edges == 147
    assert G.edges[:8] == ((0, 7), (1, 7), (2, 7), (3, 7), (4, 7), (5, 7), (6, 7), (0, 8))
    assert G.edges[-1] == (13, 20)
    for a, b in zip(G.edges, G.edges[1:]):
        assert edge_order_compare(a, b) == -1
        assert edge_order_compare(b, a) == 1
    assert edge_order_compare((0, 7), (7, 0)) == 0


def test_file_order_is_kept():
    edges = [(1, 2), (0, 3), (0, 2), (1, 3)]
    G = PartiteGraph.balanced(2, 2, edges, order="file")
    assert G.edges == ((1, 2), (0, 3), (0, 2), (1, 3))
    assert "file order" in G.order_convention()
    assert PartiteGraph.balanced(2, 2, edges).edges == ((0, 2), (1, 2), (0, 3), (1, 3))


def test_incidence_is_ascending():
    G = complete_multipartite(3, 3)
    for v in range(G.num_vertices):
        idx = G.incident_edges(v)
        assert idx == sorted(idx) and len(idx) == G.degree(v) == 6
        for e in idx:
            assert v in G.edges[e]


@pytest.mark.parametrize(
    "edges",
    [[(0, 1)], [(0, 2), (2, 0)], [(0, 9)]],
)
def test_bad_edges_rejected(edges):
    with pytest.raises(UsageError):
        PartiteGraph.balanced(2, 2, edges)


def test_parts_must_partition():
    with pytest.raises(UsageError):
        PartiteGraph([[0, 1], [1, 2]], [])
    with pytest.raises(UsageError):
        PartiteGraph([[0, 1, 2]], [])


def test_balance_violations_are_reported():
    G = complete_multipartite(3, 3)
    H = PartiteGraph(G.parts, G.edges[1:])
    rep = validate_balanced(H)
    assert not rep.ok
    u, v = G.edges[0]
    flagged = {x.vertex for x in rep.violations}
    assert flagged == {u + 1, v + 1}
    assert all(x.condition == "ii" for x in rep.violations)
    uneven = PartiteGraph([[0, 1], [2, 3, 4]], [(0, 2), (1, 3)])
    conds = {x.condition for x in validate_balanced(uneven).violations}
    assert "i" in conds and "ii" in conds
    assert validate_balanced(G).ok


def test_k333_spectrum_matches_characteristic_polynomial():
    G = complete_multipartite(3, 3)
    A = sympy.Matrix(adjacency_matrix(G).dense().astype(int))
    roots = sympy.roots(A.charpoly().as_expr())
    assert roots == {6: 1, 0: 6, -3: 2}
    assert spectrum(G) == [6, 0, 0, 0, 0, 0, 0, -3, -3]
    lam = lambda2(G)
    assert isinstance(lam, Fraction) and lam == 0


@pytest.mark.parametrize("ell,m", [(2, 1), (2, 4), (3, 7), (5, 2), (6, 5)])
def test_numeric_spectrum_matches_closed_form(ell, m):
    G = complete_multipartite(ell, m)
    vals = np.array(spectrum(G, numeric=True))
    assert np.allclose(vals, complete_multipartite_spectrum(ell, m), atol=1e-8)
    assert isinstance(lambda2(G, numeric=True), float)


@given(balanced_graphs())
@settings(max_examples=40, deadline=None)
def test_balanced_graph_invariants(G):
    rep = validate_balanced(G)
    assert rep.ok
    degree = (G.ell - 1) * rep.n
    assert all(G.degree(v) == degree for v in range(G.num_vertices))
    vals = np.array(spectrum(G))
    ref = np.linalg.eigvalsh(adjacency_matrix(G).dense())[::-1]
    assert np.allclose(vals, ref, atol=1e-8)
    assert abs(vals[0] - degree) < 1e-8
    assert abs(vals.sum()) < 1e-8


def test_lambda2_float_for_sparse_graph():
    rng = np.random.default_rng(1)
    G = PartiteGraph.balanced(3, 4, balanced_edges(3, 4, 2, rng))
    lam = lambda2(G)
    assert isinstance(lam, float)
    ref = np.sort(np.linalg.eigvalsh(adjacency_matrix(G).dense()))[-2]
    assert abs(lam - ref) < 1e-9


def test_edge_count_between_matches_networkx():
    G = complete_multipartite(3, 3)
    nxg = nx.Graph(list(G.edges))
    U, T = {0, 3}, {4, 6, 7}
    assert edge_count_between(G, U, T) == nx.cut_size(nxg, U, T)
    assert edge_count_between(G, set(), T) == 0
    with pytest.raises(UsageError):
        edge_count_between(G, {0, 1}, {1, 2})


def test_graph_file_roundtrip(tmp_path):
    G = complete_multipartite(3, 2)
    path = tmp_path / "g.txt"
    path.write_text(dump_graph(G))
    assert load_graph(path).edges == G.edges
    assert path.read_text().splitlines()[:2] == ["partite 3 2", "1 3"]


@pytest.mark.parametrize("text", ["", "graph 2 2\n", "partite 2 2\n1 x\n", "partite 2 2\n1 2\n"])
def test_graph_file_errors(text):
    with pytest.raises(UsageError):
        parse_graph(text)
