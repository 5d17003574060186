"""Input coercion for the estimator wrappers."""
from __future__ import annotations

import networkx as nx
import numpy as np

from .graph import Graph, from_networkx
from .io import graph_from_dict


def check_graph(X) -> Graph:
    """Accept a Graph, a networkx graph, a ``{"n", "edges"}`` dict or a
    square symmetric 0/1 adjacency matrix."""
    if isinstance(X, Graph):
        return X
    if isinstance(X, nx.Graph):
        if X.is_directed() or X.is_multigraph():
            raise ValueError("expected a simple undirected networkx graph")
        if nx.number_of_selfloops(X):
            raise ValueError("graph has self-loops")
        return from_networkx(X)
    if isinstance(X, dict):
        return graph_from_dict(X)
    M = np.asarray(X)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {M.shape}")
    if not np.isin(M, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    if (M != M.T).any():
        raise ValueError("adjacency matrix must be symmetric")
    if np.diagonal(M).any():
        raise ValueError("adjacency matrix has a nonzero diagonal (self-loop)")
    rows, cols = np.nonzero(np.triu(M, 1))
    return Graph(M.shape[0], list(zip(rows.tolist(), cols.tolist())))


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def check_vertex_sets(sets, n: int) -> list:
    out = []
    for S in sets:
        S = tuple(sorted({int(v) for v in S}))
        if S and not (0 <= S[0] and S[-1] < n):
            raise ValueError(f"vertex set {S} has vertices outside 0..{n - 1}")
        out.append(S)
    return out
