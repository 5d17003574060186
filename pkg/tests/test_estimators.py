import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from kvc import KConnectedVC, MaxLeafSpanningTree, VCBounds
from kvc._validation import check_graph
from kvc.graph import Graph, complete_graph


def test_check_graph_accepts_several_forms():
    K4 = complete_graph(4)
    assert check_graph(K4) is K4
    assert check_graph(nx.complete_graph(4)) == K4
    assert check_graph({"n": 4, "edges": [list(e) for e in K4.sorted_edges()]}) == K4
    assert check_graph(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)) == K4


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.array([[0, 1], [0, 0]]), np.eye(2), np.array([[0, 2], [2, 0]])])
def test_check_graph_rejects_bad_matrices(bad):
    with pytest.raises(ValueError):
        check_graph(bad)


def test_check_graph_rejects_loops():
    H = nx.Graph([(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        check_graph(H)


def test_vc_estimator():
    est = KConnectedVC(k=2).fit(nx.complete_graph(5))
    assert est.dimension_ == 3 and est.witness_ == (0, 1, 2)
    assert est.predict([[0, 1, 2], [0, 1, 2, 3], []]).tolist() == [True, False, True]
    assert est.get_params() == {"incremental": True, "k": 2, "limits": None, "twin_pruning": True}
    assert clone(est).set_params(k=3).fit(nx.complete_graph(5)).dimension_ == 2


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        KConnectedVC().predict([[0]])


def test_invalid_k():
    with pytest.raises(ValueError):
        KConnectedVC(k=0).fit(complete_graph(3))


def test_max_leaf_estimator():
    est = MaxLeafSpanningTree().fit(nx.petersen_graph())
    assert est.leaf_count_ == 6 and est.optimal_
    assert est.parent_.shape == (10,)


def test_bounds_estimator():
    est = VCBounds(k=2).fit(Graph(5, complete_graph(5).edges))
    assert est.upper_ == 3 and est.lower_ == 2
