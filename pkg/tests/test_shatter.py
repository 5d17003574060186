import itertools
import random

import pytest

from kvc.config import Limits
from kvc.exceptions import ScaleGuardError, VerificationError
from kvc.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph, to_mask
from kvc.shatter import (
    EMPTY,
    ShatterCertificate,
    TraceOracle,
    certify_shattered,
    family_member,
    is_shattered_bruteforce,
    is_shattered_poly,
    realizable,
    validate_certificate,
    vc_at_least,
    vc_dimension,
)


def exhaustive_vc(G, k):
    """Oracle: largest A whose traces over the enumerated family cover 2^A."""
    best = 0
    for r in range(1, G.n + 1):
        found = False
        for A in itertools.combinations(range(G.n), r):
            if is_shattered_bruteforce(G, A, k):
                found = True
                break
        if not found:
            break
        best = r
    return best


def test_family_member_examples():
    K4 = complete_graph(4)
    assert family_member(K4, (), 2)
    assert all(family_member(K4, S, 2) for S in itertools.combinations(range(4), 3))
    assert not family_member(cycle_graph(5), (0, 1, 2), 2)
    assert family_member(path_graph(3), (1,), 1)


def test_realizable_examples():
    ok, wit = realizable(complete_graph(4), {0, 1}, {0}, 2, return_witness=True)
    assert ok and wit == {0, 2, 3}
    ok, wit = realizable(cycle_graph(5), {0}, {0}, 2, return_witness=True)
    assert ok and wit == set(range(5))
    assert realizable(cycle_graph(5), {0, 1}, set(), 3)
    with pytest.raises(ValueError):
        realizable(cycle_graph(5), {0}, {1}, 2)


def test_shattered_examples():
    assert is_shattered_poly(complete_graph(4), (0, 1), 2)
    assert not is_shattered_poly(cycle_graph(5), (0, 2), 2)
    assert is_shattered_poly(cycle_graph(5), (), 2)
    assert is_shattered_bruteforce(complete_graph(5), (0, 1, 2), 2)
    assert not is_shattered_bruteforce(complete_graph(5), (0, 1, 2, 3), 2)
    assert is_shattered_bruteforce(star_graph(3), (1, 2, 3), 1)


def test_oracle_scale_guard():
    with pytest.raises(ScaleGuardError, match="oracle scale exceeded"):
        is_shattered_bruteforce(complete_graph(6), range(6), 2, Limits(bruteforce_max_set=5))


def test_poly_matches_bruteforce_on_small_atlas(small_atlas):
    for G in small_atlas:
        for k in (1, 2, 3):
            orc = TraceOracle(G, k)
            for r in range(G.n + 1):
                for A in itertools.combinations(range(G.n), r):
                    assert is_shattered_poly(G, A, k, oracle=orc) == is_shattered_bruteforce(G, A, k)


def test_twin_compression_agrees(atlas):
    rng = random.Random(7)
    for G in atlas[::3]:
        k = rng.choice((1, 2, 3))
        orc = TraceOracle(G, k)
        for A in itertools.combinations(range(G.n), min(4, G.n)):
            assert is_shattered_poly(G, A, k, oracle=orc) == is_shattered_poly(G, A, k, twins="auto", oracle=orc)


def test_large_graph_oracle_path_uses_trace_realization():
    G = cycle_graph(20)
    assert not is_shattered_bruteforce(G, (0, 5), 2)
    assert is_shattered_bruteforce(G, (0,), 2)


def test_general_k_search_finds_hidden_4_connected_subgraph():
    # two K5s sharing {0, 1, 2}: minimum degree 4 everywhere, but the
    # shared triangle separates, so only each K5 on its own is 4-connected
    first, second = (0, 1, 2, 3, 4), (0, 1, 2, 5, 6)
    edges = set(itertools.combinations(first, 2)) | set(itertools.combinations(second, 2))
    G = Graph(7, edges)
    assert family_member(G, first, 4)
    assert not family_member(G, range(7), 4)
    ok, wit = realizable(G, {3, 5}, {3}, 4, return_witness=True)
    assert ok and wit == set(first)
    assert not realizable(G, {3, 5}, {3, 5}, 4)


def test_certificate_round_trip_and_tamper():
    G = complete_graph(5)
    cert = certify_shattered(G, (0, 1, 2), 2)
    assert validate_certificate(G, cert)
    again = ShatterCertificate.from_json(cert.to_json())
    assert again == cert
    bad_traces = tuple((W, EMPTY if W == () else (0, 1)) for W, _ in cert.traces)
    with pytest.raises(VerificationError):
        validate_certificate(G, ShatterCertificate(cert.A, 2, bad_traces))
    with pytest.raises(VerificationError, match="misses"):
        validate_certificate(G, ShatterCertificate(cert.A, 2, cert.traces[:-1]))


def test_compressed_certificate_validates():
    G = complete_graph(6)
    cert = certify_shattered(G, (0, 1, 2, 3), 2, twins="auto")
    assert cert.classes == ((0, 1, 2, 3, 4, 5),)
    assert len(cert.traces) == 4  # empty plus one trace per size 1..3
    assert validate_certificate(G, cert)


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_dimension(n):
    assert vc_dimension(cycle_graph(n), 2).dimension == 1


def test_fixed_points():
    assert vc_dimension(complete_graph(4), 2).dimension == 2
    res = vc_dimension(complete_graph(5), 2)
    assert res.dimension == 3 and res.witness == (0, 1, 2)
    assert validate_certificate(complete_graph(5), res.certificate)


def test_vc_at_least_examples():
    assert vc_at_least(complete_graph(5), 2, 3).holds
    assert not vc_at_least(complete_graph(5), 2, 4).holds
    assert vc_at_least(cycle_graph(6), 2, 1)
    with pytest.raises(ValueError):
        vc_at_least(cycle_graph(6), 2, 0)


def test_search_modes_agree_with_exhaustive(small_atlas):
    for G in small_atlas:
        for k in (1, 2, 3):
            expected = exhaustive_vc(G, k)
            for tp, inc in ((True, True), (False, True), (True, False), (False, False)):
                res = vc_dimension(G, k, twin_pruning=tp, incremental=inc)
                assert res.dimension == expected
            assert is_shattered_bruteforce(G, res.witness, k)


def test_search_budget_guard():
    with pytest.raises(ScaleGuardError):
        vc_dimension(complete_graph(7), 2, limits=Limits(vc_search_budget=2))


def test_witness_is_lexicographically_first(small_atlas):
    for G in small_atlas[::4]:
        res = vc_dimension(G, 2)
        if res.dimension == 0:
            continue
        for A in itertools.combinations(range(G.n), res.dimension):
            if is_shattered_bruteforce(G, A, 2):
                assert A == res.witness
                break


def test_mask_helpers_consistent():
    assert to_mask((0, 3)) == 0b1001
