import itertools

import networkx as nx
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from kvc.bounds import leaf_count_upper_bound, max_leaf_spanning_tree
from kvc.graph import (
    Graph,
    disjoint_paths,
    edge_union,
    induced_subgraph,
    is_connected,
    is_k_connected,
    is_planar,
    min_vertex_separator,
    to_networkx,
    vertex_connectivity,
)
from kvc.io import read_graph_dimacs, read_graph_json, write_graph_dimacs, write_graph_json
from kvc.sat import Formula, Literal, brute_force_1in3, solve_1in3
from kvc.shatter import (
    ShatterCertificate,
    certify_shattered,
    is_shattered_bruteforce,
    is_shattered_poly,
    validate_certificate,
)

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@st.composite
def graph_and_set(draw, max_n=8, max_set=5):
    G = draw(graphs(1, max_n))
    A = draw(st.lists(st.integers(0, G.n - 1), unique=True, max_size=min(max_set, G.n)))
    return G, tuple(sorted(A))


@SETTINGS
@given(graphs())
def test_io_round_trips(G):
    assert read_graph_json(write_graph_json(G)) == G
    assert read_graph_dimacs(write_graph_dimacs(G)) == G


@SETTINGS
@given(graphs(min_n=2))
def test_connectivity_matches_networkx(G):
    assert vertex_connectivity(G) == nx.node_connectivity(to_networkx(G))


@SETTINGS
@given(graphs(min_n=3))
def test_planar_graphs_are_sparse(G):
    if is_planar(G):
        assert G.m <= 3 * G.n - 6
    assert is_planar(G) == nx.check_planarity(to_networkx(G))[0]


@SETTINGS
@given(graphs(min_n=2), st.data())
def test_menger_duality(G, data):
    u, v = data.draw(st.sampled_from(list(itertools.combinations(range(G.n), 2))))
    if G.has_edge(u, v):
        return
    paths = disjoint_paths(G, u, v)
    sep = min_vertex_separator(G, u, v)
    assert len(paths) == len(sep)
    for p in paths:
        assert p[0] == u and p[-1] == v
        assert all(G.has_edge(a, b) for a, b in zip(p, p[1:]))
        assert len(set(p[1:-1]) & sep) == 1
    H, mapping = induced_subgraph(G, set(range(G.n)) - sep)
    comp = nx.node_connected_component(to_networkx(H), mapping[u])
    assert mapping[v] not in comp


@SETTINGS
@given(graphs(min_n=2, max_n=9), st.integers(2, 3), st.data())
def test_union_of_overlapping_k_connected_sets(G, k, data):
    if G.n < k + 1:
        return
    verts = list(range(G.n))
    S1 = data.draw(st.sets(st.sampled_from(verts), min_size=k + 1))
    S2 = data.draw(st.sets(st.sampled_from(verts), min_size=k + 1))
    H1, _ = induced_subgraph(G, S1)
    H2, _ = induced_subgraph(G, S2)
    if len(S1 & S2) >= k and is_k_connected(H1, k) and is_k_connected(H2, k):
        U, _ = edge_union(G, S1, S2)
        assert is_k_connected(U, k)


@SETTINGS
@given(graph_and_set(), st.integers(1, 3))
def test_poly_equals_bruteforce(GA, k):
    G, A = GA
    assert is_shattered_poly(G, A, k) == is_shattered_bruteforce(G, A, k)
    assert is_shattered_poly(G, A, k, twins="auto") == is_shattered_bruteforce(G, A, k)


@SETTINGS
@given(graph_and_set(max_n=7), st.integers(1, 3))
def test_shattering_is_hereditary(GA, k):
    G, A = GA
    if is_shattered_poly(G, A, k):
        for B in itertools.combinations(A, max(0, len(A) - 1)):
            assert is_shattered_poly(G, B, k)


@SETTINGS
@given(graph_and_set(), st.integers(1, 3), st.booleans())
def test_certificates_validate_and_round_trip(GA, k, twins):
    G, A = GA
    cert = certify_shattered(G, A, k, twins="auto" if twins else None)
    if cert is not None:
        assert validate_certificate(G, cert)
        assert ShatterCertificate.from_json(cert.to_json()) == cert


@SETTINGS
@given(graphs(min_n=3, max_n=8))
def test_leaf_bounds(G):
    if not is_connected(G) or G.max_degree < 2:
        return
    ell = max_leaf_spanning_tree(G).leaf_count
    assert ell <= leaf_count_upper_bound(G.n, G.max_degree)
    assert max_leaf_spanning_tree(G, "greedy").leaf_count <= ell


@st.composite
def formulas(draw):
    n = draw(st.integers(3, 8))
    clause = st.lists(st.integers(0, n - 1), min_size=3, max_size=3, unique=True)
    signs = st.lists(st.booleans(), min_size=3, max_size=3)
    m = draw(st.integers(1, 6))
    clauses = tuple(
        tuple(Literal(v, s) for v, s in zip(draw(clause), draw(signs))) for _ in range(m)
    )
    return Formula(n, clauses)


@SETTINGS
@given(formulas())
def test_solver_is_lexicographic_first(F):
    assert solve_1in3(F) == brute_force_1in3(F)
