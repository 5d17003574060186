"""Undirected simple graphs and the connectivity machinery built on them.

Vertices are the dense integers ``0..n-1``.  Internally most routines work
on bitmasks: ``Graph.masks[v]`` is the neighbourhood of ``v`` as a Python
int and a vertex subset is an int with bit ``v`` set for each member.  The
public functions accept and return ``frozenset`` vertex sets.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

VertexSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    ``edges`` may be given as any iterable of pairs; it is normalised to a
    frozenset of ``(u, v)`` with ``u < v``.  Self-loops, duplicate edges and
    out-of-range endpoints raise ``ValueError``.  ``labels`` are metadata
    and never influence an algorithm.
    """

    n: int
    edges: frozenset = frozenset()
    labels: tuple | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        seen = set()
        for e in self.edges:
            u, v = e
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", frozenset(seen))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise ValueError(f"expected {self.n} labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @cached_property
    def masks(self) -> tuple:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def adj(self) -> tuple:
        return tuple(from_mask(m) for m in self.masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    @cached_property
    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.masks), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def check_vertex_set(G: Graph, S: Iterable[int]) -> frozenset:
    """Return ``S`` as a frozenset after checking every member is a vertex of ``G``."""
    out = frozenset(int(v) for v in S)
    for v in out:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} is not in the graph (n={G.n})")
    return out


# ---------------------------------------------------------------------------
# constructors

def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, ())


# ---------------------------------------------------------------------------
# bitmask kernels

def _component_of(masks, allowed: int, start: int) -> int:
    comp = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


def _components(masks, allowed: int) -> list:
    comps = []
    rest = allowed
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = _component_of(masks, allowed, v)
        comps.append(comp)
        rest &= ~comp
    return comps


def _is_connected_mask(masks, allowed: int) -> bool:
    if not allowed:
        return False
    v = (allowed & -allowed).bit_length() - 1
    return _component_of(masks, allowed, v) == allowed


def _k_core(masks, allowed: int, k: int) -> int:
    core = allowed
    queue = [v for v in bits(core) if (masks[v] & core).bit_count() < k]
    while queue:
        v = queue.pop()
        if not core >> v & 1:
            continue
        core &= ~(1 << v)
        for w in bits(masks[v] & core):
            if (masks[w] & core).bit_count() < k:
                queue.append(w)
    return core


def _blocks(masks, allowed: int) -> list:
    """Biconnected components of G[allowed] as masks (Hopcroft-Tarjan, iterative)."""
    disc: dict = {}
    low: dict = {}
    blocks = []
    counter = 0
    for root in bits(allowed):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not masks[root] & allowed:
            blocks.append(1 << root)
            continue
        stack = [(root, -1, bits(masks[root] & allowed))]
        edge_stack = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, bits(masks[w] & allowed)))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                    edge_stack.append((v, w))
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                comp = 0
                while True:
                    a, b = edge_stack.pop()
                    comp |= (1 << a) | (1 << b)
                    if a == u and b == v:
                        break
                blocks.append(comp)
    return blocks


class _SplitNetwork:
    """Unit vertex-capacity flow network for internally disjoint s-t paths.

    Vertex ``v`` becomes ``in = 2v`` and ``out = 2v + 1`` joined by an arc of
    capacity 1 (unbounded for ``s`` and ``t``); an edge ``uw`` becomes the
    unbounded arcs ``out(u) -> in(w)`` and ``out(w) -> in(u)``, so every
    minimum cut consists of vertex arcs.
    """

    def __init__(self, masks, allowed: int, s: int, t: int):
        self.s, self.t = s, t
        self.graph = defaultdict(list)
        self.cap: dict = {}
        big = allowed.bit_count() + 1
        for v in bits(allowed):
            self._add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
            for w in bits(masks[v] & allowed):
                self._add(2 * v + 1, 2 * w, big)
        self.original = dict(self.cap)

    def _add(self, a, b, c):
        if (a, b) not in self.cap:
            self.graph[a].append(b)
            self.graph[b].append(a)
            self.cap[(a, b)] = 0
            self.cap.setdefault((b, a), 0)
        self.cap[(a, b)] += c

    def _bfs(self):
        source, sink = 2 * self.s + 1, 2 * self.t
        parent = {source: None}
        queue = deque([source])
        while queue:
            a = queue.popleft()
            for b in self.graph[a]:
                if b not in parent and self.cap[(a, b)] > 0:
                    parent[b] = a
                    if b == sink:
                        return parent
                    queue.append(b)
        return parent

    def run(self, limit=None) -> int:
        flow = 0
        sink = 2 * self.t
        while limit is None or flow < limit:
            parent = self._bfs()
            if sink not in parent:
                self.reachable = parent
                return flow
            b = sink
            while parent[b] is not None:
                a = parent[b]
                self.cap[(a, b)] -= 1
                self.cap[(b, a)] += 1
                b = a
            flow += 1
        self.reachable = None
        return flow

    def separator(self) -> int:
        reach = self.reachable
        cut = 0
        for node in reach:
            v = node // 2
            if node % 2 == 0 and (2 * v + 1) not in reach:
                cut |= 1 << v
        return cut

    def paths(self) -> list:
        used = {
            arc: self.original[arc] - self.cap[arc]
            for arc in self.original
            if self.original[arc] - self.cap[arc] > 0
        }
        out = []
        source, sink = 2 * self.s + 1, 2 * self.t
        while True:
            succ = [b for b in self.graph[source] if used.get((source, b), 0) > 0]
            if not succ:
                break
            path = [self.s]
            a = source
            while a != sink:
                b = min(x for x in self.graph[a] if used.get((a, x), 0) > 0)
                used[(a, b)] -= 1
                if b % 2 == 0:
                    path.append(b // 2)
                a = b
            out.append(path)
        return out


def _local_connectivity(masks, allowed: int, s: int, t: int, limit=None):
    net = _SplitNetwork(masks, allowed, s, t)
    value = net.run(limit)
    return value, net


def _separator_below(masks, allowed: int, k: int):
    """Return ``None`` if G[allowed] is k-connected, else a separator mask.

    The separator has fewer than k vertices and disconnects G[allowed]; it is
    ``-1`` when G[allowed] is too small (at most k vertices) to be k-connected.
    Uses the Esfahanian-Hakimi pair selection with flows capped at k.
    """
    size = allowed.bit_count()
    if size < k + 1:
        return -1
    v = min(bits(allowed), key=lambda x: ((masks[x] & allowed).bit_count(), x))
    nbrs = masks[v] & allowed
    if nbrs.bit_count() < k:
        return nbrs
    for w in bits(allowed & ~nbrs & ~(1 << v)):
        value, net = _local_connectivity(masks, allowed, v, w, k)
        if value < k:
            return net.separator()
    nlist = list(bits(nbrs))
    for x, y in combinations(nlist, 2):
        if masks[x] >> y & 1:
            continue
        value, net = _local_connectivity(masks, allowed, x, y, k)
        if value < k:
            return net.separator()
    return None


def _is_k_connected_mask(masks, allowed: int, k: int) -> bool:
    if k == 1:
        return _is_connected_mask(masks, allowed)
    size = allowed.bit_count()
    if size < k + 1:
        return False
    if k == 2:
        blocks = _blocks(masks, allowed)
        return len(blocks) == 1 and blocks[0] == allowed
    return _separator_below(masks, allowed, k) is None


# ---------------------------------------------------------------------------
# public operations

def is_connected(G: Graph) -> bool:
    """True iff G has exactly one component; the empty graph is not connected."""
    return _is_connected_mask(G.masks, G.full_mask)


def connected_components(G: Graph) -> list:
    return [from_mask(c) for c in _components(G.masks, G.full_mask)]


def local_vertex_connectivity(G: Graph, u: int, v: int) -> int:
    """Maximum number of internally vertex-disjoint u-v paths (u, v non-adjacent)."""
    _check_pair(G, u, v)
    value, _ = _local_connectivity(G.masks, G.full_mask, u, v)
    return value


def disjoint_paths(G: Graph, u: int, v: int) -> list:
    """A maximum family of internally vertex-disjoint u-v paths, as vertex lists."""
    _check_pair(G, u, v)
    _, net = _local_connectivity(G.masks, G.full_mask, u, v)
    return net.paths()


def min_vertex_separator(G: Graph, u: int, v: int) -> frozenset:
    """A minimum set of vertices (excluding u, v) whose removal separates u from v."""
    _check_pair(G, u, v)
    _, net = _local_connectivity(G.masks, G.full_mask, u, v)
    return from_mask(net.separator())


def _check_pair(G, u, v):
    if u == v:
        raise ValueError("endpoints must differ")
    check_vertex_set(G, (u, v))
    if G.has_edge(u, v):
        raise ValueError(f"vertices {u} and {v} are adjacent")


def vertex_connectivity(G: Graph) -> int:
    """kappa(G): K_n gives n - 1, a disconnected graph gives 0."""
    if G.n < 2:
        raise ValueError("undefined connectivity for graphs with fewer than 2 vertices")
    masks, full = G.masks, G.full_mask
    if G.m == G.n * (G.n - 1) // 2:
        return G.n - 1
    if not _is_connected_mask(masks, full):
        return 0
    v = min(range(G.n), key=lambda x: (masks[x].bit_count(), x))
    best = masks[v].bit_count()
    for w in bits(full & ~masks[v] & ~(1 << v)):
        value, _ = _local_connectivity(masks, full, v, w, best)
        best = min(best, value)
    for x, y in combinations(bits(masks[v]), 2):
        if not masks[x] >> y & 1:
            value, _ = _local_connectivity(masks, full, x, y, best)
            best = min(best, value)
    return best


def is_k_connected(G: Graph, k: int) -> bool:
    """k >= 2: at least k+1 vertices and kappa >= k.  k = 1: connected and nonempty."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return _is_k_connected_mask(G.masks, G.full_mask, k)


def induced_subgraph(G: Graph, S: Iterable[int]):
    """Return ``(G[S], mapping)`` where ``mapping`` sends old ids to new ids.

    New ids follow the increasing order of the old ones.
    """
    S = sorted(check_vertex_set(G, S))
    mapping = {old: new for new, old in enumerate(S)}
    edges = [(mapping[u], mapping[v]) for u, v in G.edges if u in mapping and v in mapping]
    labels = None if G.labels is None else tuple(G.labels[v] for v in S)
    return Graph(len(S), edges, labels), mapping


def edge_union(G: Graph, S1: Iterable[int], S2: Iterable[int]):
    """The union of G[S1] and G[S2] as a graph on S1 | S2 (edges between
    S1 - S2 and S2 - S1 are not included).  Returns ``(graph, mapping)``."""
    S1 = check_vertex_set(G, S1)
    S2 = check_vertex_set(G, S2)
    verts = sorted(S1 | S2)
    mapping = {old: new for new, old in enumerate(verts)}
    edges = [
        (mapping[u], mapping[v])
        for u, v in G.edges
        if (u in S1 and v in S1) or (u in S2 and v in S2)
    ]
    return Graph(len(verts), edges), mapping


def blocks(G: Graph) -> list:
    """Biconnected components, sorted by their sorted member tuples.

    Bridges give 2-element blocks and isolated vertices singleton blocks.
    """
    found = [from_mask(b) for b in _blocks(G.masks, G.full_mask)]
    return sorted(found, key=lambda b: sorted(b))


def k_core(G: Graph, k: int) -> frozenset:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return from_mask(_k_core(G.masks, G.full_mask, k))


def is_planar(G: Graph) -> bool:
    """Exact planarity test (left-right algorithm from networkx)."""
    import networkx as nx

    if G.n >= 3 and G.m > 3 * G.n - 6:
        return False
    planar, _ = nx.check_planarity(to_networkx(G))
    return planar


def twin_classes(G: Graph, mode: str = "open") -> list:
    """Partition of the vertices into twin classes.

    ``open``: same open neighbourhood N(v); ``closed``: same N[v].  Classes
    are sorted tuples, listed by smallest member.
    """
    if mode not in ("open", "closed"):
        raise ValueError(f"mode must be 'open' or 'closed', got {mode!r}")
    groups: dict = {}
    for v in range(G.n):
        key = G.masks[v] | (1 << v) if mode == "closed" else G.masks[v]
        groups.setdefault(key, []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])


def symmetry_classes(G: Graph) -> list:
    """Merge of the open and closed twin partitions.

    Swapping two vertices of one class is an automorphism of G.  A vertex
    cannot have both an open and a closed twin, so the merge is a partition.
    """
    merged = [c for c in twin_classes(G, "open") if len(c) > 1]
    merged += [c for c in twin_classes(G, "closed") if len(c) > 1]
    covered = {v for c in merged for v in c}
    merged += [(v,) for v in range(G.n) if v not in covered]
    return sorted(merged, key=lambda c: c[0])


def to_networkx(G: Graph):
    import networkx as nx

    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def from_networkx(H) -> Graph:
    nodes = sorted(H.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in H.edges()])
