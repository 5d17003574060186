"""scikit-learn style wrappers: configure with parameters, ``fit`` a graph,
read the fitted attributes (trailing underscore)."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_graph, check_k, check_vertex_sets
from .bounds import bound_report, max_leaf_spanning_tree
from .config import DEFAULT_LIMITS
from .shatter import TraceOracle, is_shattered_poly, vc_dimension


class KConnectedVC(BaseEstimator):
    """VC dimension of the family of k-connected induced subgraphs.

    After ``fit``: ``dimension_``, ``witness_`` (lexicographically smallest
    maximum shattered set), ``certificate_`` and ``search_stats_``.
    ``predict`` says which of the given vertex sets are shattered.
    """

    def __init__(self, k=2, twin_pruning=True, incremental=True, limits=None):
        self.k = k
        self.twin_pruning = twin_pruning
        self.incremental = incremental
        self.limits = limits

    def fit(self, X, y=None):
        G = check_graph(X)
        k = check_k(self.k)
        limits = self.limits if self.limits is not None else DEFAULT_LIMITS
        result = vc_dimension(G, k, self.twin_pruning, self.incremental, limits)
        self.graph_ = G
        self.dimension_ = result.dimension
        self.witness_ = result.witness
        self.certificate_ = result.certificate
        self.search_stats_ = result.search_stats
        self.oracle_ = TraceOracle(G, k, limits)
        return self

    def predict(self, sets):
        check_is_fitted(self, "dimension_")
        sets = check_vertex_sets(sets, self.graph_.n)
        k = check_k(self.k)
        return np.array([is_shattered_poly(self.graph_, S, k, oracle=self.oracle_) for S in sets], dtype=bool)


class MaxLeafSpanningTree(BaseEstimator):
    """Spanning tree with the most leaves (``mode="exact"``) or a greedy one."""

    def __init__(self, mode="exact", limits=None):
        self.mode = mode
        self.limits = limits

    def fit(self, X, y=None):
        G = check_graph(X)
        tree = max_leaf_spanning_tree(G, self.mode, self.limits if self.limits is not None else DEFAULT_LIMITS)
        self.tree_ = tree
        self.parent_ = np.array(tree.parent)
        self.leaf_count_ = tree.leaf_count
        self.optimal_ = tree.optimal
        return self


class VCBounds(BaseEstimator):
    """Closed-form bounds on the k-connected VC dimension."""

    def __init__(self, k=2, ell_mode="exact", limits=None):
        self.k = k
        self.ell_mode = ell_mode
        self.limits = limits

    def fit(self, X, y=None):
        G = check_graph(X)
        rep = bound_report(G, check_k(self.k), self.ell_mode, self.limits if self.limits is not None else DEFAULT_LIMITS)
        self.report_ = rep
        self.upper_ = rep.upper_kcon
        self.lower_ = max(v for v in (rep.lower_con, rep.lower_turan, rep.lower_thm5) if v is not None)
        return self
