"""Maximum-leaf spanning trees and the closed-form VC bounds built on them.

``ell`` below always means the number of leaves of a maximum-leaf spanning
tree.  Bound routines take plain integers so they can be evaluated without
a graph; ``bound_report`` ties them to one.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .config import DEFAULT_LIMITS, Limits
from .exceptions import ScaleGuardError
from .graph import Graph, _is_connected_mask, bits


@dataclass(frozen=True)
class SpanningTreeResult:
    """Spanning tree as a parent array (``parent[root] == -1``)."""

    parent: tuple
    leaf_count: int
    optimal: bool

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def edges(self) -> list:
        return sorted((min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p >= 0)

    def to_json(self) -> dict:
        return {
            "parent": list(self.parent),
            "leaf_count": self.leaf_count,
            "optimal": self.optimal,
            "edges": [list(e) for e in self.edges()],
        }


def _tree_leaf_count(parent) -> int:
    deg = [0] * len(parent)
    for v, p in enumerate(parent):
        if p >= 0:
            deg[v] += 1
            deg[p] += 1
    return sum(1 for d in deg if d == 1)


def _tree_from_internal(G: Graph, internal: int) -> list:
    """BFS tree of G[internal] with every other vertex hung on its smallest
    internal neighbour."""
    masks = G.masks
    root = (internal & -internal).bit_length() - 1
    parent = [-2] * G.n
    parent[root] = -1
    queue = [root]
    for u in queue:
        for w in bits(masks[u] & internal):
            if parent[w] == -2:
                parent[w] = u
                queue.append(w)
    for v in range(G.n):
        if parent[v] == -2:
            nb = masks[v] & internal
            parent[v] = (nb & -nb).bit_length() - 1
    return parent


def _greedy_tree(G: Graph) -> list:
    masks = G.masks
    start = min(range(G.n), key=lambda v: (-masks[v].bit_count(), v))
    parent = [-2] * G.n
    parent[start] = -1
    in_tree = 1 << start
    for w in bits(masks[start]):
        parent[w] = start
        in_tree |= 1 << w
    while in_tree != G.full_mask:
        best, best_gain = -1, 0
        for u in bits(in_tree):
            gain = (masks[u] & ~in_tree).bit_count()
            if gain > best_gain:
                best, best_gain = u, gain
        for w in bits(masks[best] & ~in_tree):
            parent[w] = best
            in_tree |= 1 << w
    return parent


def _min_connected_dominating_set(G: Graph, incumbent: int, budget: int) -> int:
    """Branch and bound over connected vertex sets grown from a seed.

    Every connected dominating set contains a vertex of N[v0] for a
    minimum-degree v0, so seeds are tried in turn, each excluding the
    previous ones.  A node is pruned when its size plus
    ceil(undominated / (maxdeg - 1)) cannot beat the incumbent.
    """
    masks, full = G.masks, G.full_mask
    closed = [masks[v] | (1 << v) for v in range(G.n)]
    spread = G.max_degree - 1
    best = [incumbent, incumbent.bit_count()]
    nodes = [0]

    def grow(I, dom, X):
        nodes[0] += 1
        if nodes[0] > budget:
            raise ScaleGuardError("max-leaf branch and bound exceeded its node budget")
        size = I.bit_count()
        if dom == full:
            if size < best[1]:
                best[0], best[1] = I, size
            return
        undominated = full & ~dom
        if size + -(-undominated.bit_count() // spread) >= best[1]:
            return
        for w in bits(undominated):
            if not closed[w] & ~X:
                return
        frontier = 0
        for v in bits(I):
            frontier |= masks[v]
        frontier &= ~I & ~X
        if not frontier:
            return
        u = max(bits(frontier), key=lambda x: ((masks[x] & undominated).bit_count(), -x))
        grow(I | (1 << u), dom | closed[u], X)
        grow(I, dom, X | (1 << u))

    v0 = min(range(G.n), key=lambda v: (masks[v].bit_count(), v))
    excluded = 0
    for seed in bits(closed[v0]):
        grow(1 << seed, closed[seed], excluded | 0)
        excluded |= 1 << seed
    return best[0]


def max_leaf_spanning_tree(G: Graph, mode: str = "exact", limits: Limits = DEFAULT_LIMITS) -> SpanningTreeResult:
    """Spanning tree with as many leaves as possible.

    ``exact`` minimises a connected dominating set (the internal vertices)
    by branch and bound; ``greedy`` repeatedly expands the tree vertex with
    the most neighbours outside the tree.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    if G.n < 2:
        raise ValueError("max-leaf spanning tree needs at least 2 vertices")
    if not _is_connected_mask(G.masks, G.full_mask):
        raise ValueError("graph is disconnected; it has no spanning tree")
    if G.n == 2:
        return SpanningTreeResult((-1, 0), 2, True)
    greedy = _greedy_tree(G)
    if mode == "greedy":
        return SpanningTreeResult(tuple(greedy), _tree_leaf_count(greedy), False)
    if G.n > limits.max_leaf_exact_max_n:
        raise ScaleGuardError(
            f"exact max-leaf search limited to n <= {limits.max_leaf_exact_max_n} (got {G.n})"
        )
    internal = 0
    for v, p in enumerate(greedy):
        if p >= 0:
            internal |= 1 << p
    internal = _min_connected_dominating_set(G, internal, limits.vc_search_budget)
    parent = _tree_from_internal(G, internal)
    return SpanningTreeResult(tuple(parent), _tree_leaf_count(parent), True)


def leaf_count_upper_bound(n: int, max_degree: int) -> int:
    """n - ceil((n - 2) / (maxdeg - 1)): no spanning tree has more leaves."""
    if max_degree < 2:
        raise ValueError("degenerate: G is a disjoint union of edges/vertices (max degree < 2)")
    if n < 2:
        raise ValueError("need n >= 2")
    return n - -(-(n - 2) // (max_degree - 1))


def upper_bound_kcon(ell: int, k: int) -> int:
    """ell - k + 1, reported raw (it may be nonpositive)."""
    if k < 2:
        raise ValueError("the k-connected upper bound needs k >= 2; for k = 1 use (ell, ell + 1)")
    return ell - k + 1


def _turan_ratio(n: int, m: int) -> Fraction:
    if n < 1 or m < 0 or 2 * m > n * (n - 1):
        raise ValueError(f"no simple graph has n={n}, m={m}")
    return Fraction(n * n, n * n - 2 * m)


def lower_bound_turan(n: int, m: int, k: int) -> int:
    """ceil(n^2 / (n^2 - 2m) - 1) - k, in exact rational arithmetic.

    Any graph this dense contains a clique large enough that a set of this
    size is shattered by k-connected subgraphs of it.
    """
    return math.ceil(_turan_ratio(n, m) - 1) - k


def lower_bound_thm5(n: int, m: int, max_degree: int, ell: int, k: int, exact: bool = False):
    """ell - k + 1 - (n + 2 - ceil((n-2)/(maxdeg-1)) - n^2/(n^2 - 2m)).

    Returned as a float unless ``exact`` is set, in which case the value is
    a ``Fraction``.  Not ceiled.
    """
    if max_degree < 2:
        raise ValueError("degenerate: max degree < 2")
    if n < 2:
        raise ValueError("need n >= 2")
    value = ell - k + 1 - (n + 2 - -(-(n - 2) // (max_degree - 1)) - _turan_ratio(n, m))
    return value if exact else float(value)


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    max_degree: int
    k: int
    ell: int
    ell_mode: str
    ell_upper: int | None
    upper_kcon: int | None
    lower_con: int | None
    lower_turan: int
    lower_thm5: float | None

    def to_json(self) -> dict:
        return asdict(self)


def bound_report(G: Graph, k: int, ell_mode: str = "exact", limits: Limits = DEFAULT_LIMITS) -> BoundReport:
    """Evaluate every bound for a connected graph.

    With ``ell_mode="greedy"`` ``ell`` is only a lower bound on the true
    leaf number, so the upper VC bound is taken from ``ell_upper`` instead;
    the Theorem-5 style lower bound grows with ell and stays valid.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tree = max_leaf_spanning_tree(G, ell_mode, limits)
    ell = tree.leaf_count
    delta = G.max_degree
    ell_upper = leaf_count_upper_bound(G.n, delta) if delta >= 2 else None
    ell_for_upper = ell if ell_mode == "exact" else (ell_upper if ell_upper is not None else ell)
    if k == 1:
        upper, lower_con = ell_for_upper + 1, ell
    else:
        upper, lower_con = upper_bound_kcon(ell_for_upper, k), None
    thm5 = lower_bound_thm5(G.n, G.m, delta, ell, k) if delta >= 2 and k >= 2 else None
    return BoundReport(
        n=G.n,
        m=G.m,
        max_degree=delta,
        k=k,
        ell=ell,
        ell_mode=ell_mode,
        ell_upper=ell_upper,
        upper_kcon=upper,
        lower_con=lower_con,
        lower_turan=lower_bound_turan(G.n, G.m, k),
        lower_thm5=thm5,
    )
