import itertools
import random

import networkx as nx
import pytest

from kvc.graph import (
    Graph,
    blocks,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_paths,
    edge_union,
    empty_graph,
    from_networkx,
    induced_subgraph,
    is_connected,
    is_k_connected,
    is_planar,
    k_core,
    local_vertex_connectivity,
    min_vertex_separator,
    path_graph,
    star_graph,
    symmetry_classes,
    to_networkx,
    twin_classes,
    vertex_connectivity,
)


def two_triangles():
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def test_graph_normalises_edges():
    G = Graph(3, [(2, 0), (1, 2)])
    assert G.sorted_edges() == [(0, 2), (1, 2)]
    assert G.degree(2) == 2 and G.max_degree == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_is_connected_examples():
    assert is_connected(path_graph(3))
    assert not is_connected(empty_graph(2))
    assert not is_connected(empty_graph(0))
    assert is_connected(empty_graph(1))


@pytest.mark.parametrize("G,expected", [(complete_graph(5), 4), (cycle_graph(5), 2), (path_graph(4), 1)])
def test_vertex_connectivity_examples(G, expected):
    assert vertex_connectivity(G) == expected


def test_vertex_connectivity_needs_two_vertices():
    with pytest.raises(ValueError, match="undefined connectivity"):
        vertex_connectivity(empty_graph(1))


def test_is_k_connected_examples():
    assert is_k_connected(complete_graph(3), 2)
    assert not is_k_connected(complete_graph(2), 2)
    assert is_k_connected(empty_graph(1), 1)
    with pytest.raises(ValueError):
        is_k_connected(complete_graph(3), 0)


def test_induced_subgraph_examples():
    H, mapping = induced_subgraph(complete_graph(4), {0, 1, 2})
    assert H.n == 3 and H.m == 3
    H, _ = induced_subgraph(complete_graph(4), set())
    assert H.n == 0
    H, _ = induced_subgraph(cycle_graph(5), {0, 1, 2})
    assert H.sorted_edges() == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        induced_subgraph(complete_graph(3), {3})


def test_blocks_examples():
    assert [sorted(b) for b in blocks(two_triangles())] == [[0, 1, 2], [2, 3, 4]]
    assert len(blocks(path_graph(4))) == 3
    assert [len(b) for b in blocks(cycle_graph(5))] == [5]


def test_k_core_examples():
    assert k_core(complete_graph(4), 3) == frozenset(range(4))
    assert k_core(star_graph(5), 2) == frozenset()
    G = Graph(6, list(cycle_graph(5).edges) + [(0, 5)])
    assert k_core(G, 2) == frozenset(range(5))


def test_planarity_examples():
    assert is_planar(complete_graph(4))
    assert not is_planar(complete_graph(5))
    assert not is_planar(complete_bipartite_graph(3, 3))


def test_twin_examples():
    assert twin_classes(cycle_graph(5), "open") == [(v,) for v in range(5)]
    assert twin_classes(complete_graph(3), "closed") == [(0, 1, 2)]
    assert twin_classes(complete_bipartite_graph(2, 3), "open") == [(0, 1), (2, 3, 4)]


def test_symmetry_classes_are_automorphisms():
    rng = random.Random(3)
    for _ in range(200):
        G = from_networkx(nx.gnp_random_graph(rng.randint(2, 8), rng.random(), seed=rng.randrange(10**6)))
        for c in symmetry_classes(G):
            for a, b in itertools.combinations(c, 2):
                swap = {a: b, b: a}
                image = {tuple(sorted((swap.get(u, u), swap.get(v, v)))) for u, v in G.edges}
                assert image == set(G.edges)


def test_menger_duality():
    G = cycle_graph(6)
    assert local_vertex_connectivity(G, 0, 3) == 2
    paths = disjoint_paths(G, 0, 3)
    assert len(paths) == 2
    inner = [set(p[1:-1]) for p in paths]
    assert not inner[0] & inner[1]
    assert len(min_vertex_separator(G, 0, 3)) == 2
    with pytest.raises(ValueError):
        local_vertex_connectivity(G, 0, 1)


def test_edge_union():
    G = complete_graph(4)
    H, mapping = edge_union(G, {0, 1, 2}, {2, 3})
    assert H.m == 4


def test_against_networkx_random():
    rng = random.Random(11)
    for _ in range(400):
        H = nx.gnp_random_graph(rng.randint(2, 9), rng.random(), seed=rng.randrange(10**6))
        G = from_networkx(H)
        assert is_connected(G) == nx.is_connected(H)
        assert len(connected_components(G)) == nx.number_connected_components(H)
        assert vertex_connectivity(G) == nx.node_connectivity(H)
        expected = sorted(sorted(b) for b in nx.biconnected_components(H))
        got = sorted(sorted(b) for b in blocks(G) if len(b) > 1 and (len(b) > 2 or G.has_edge(*sorted(b))))
        assert got == expected
        assert k_core(G, 2) == frozenset(nx.k_core(H, 2).nodes())
        assert to_networkx(G).number_of_edges() == G.m
