"""Shattering by k-connected subgraphs and the VC-dimension search.

A vertex set A is shattered when every W subset of A is the trace
``S & A`` of some family member S.  The family for a given k is the empty
set plus every S whose induced subgraph is k-connected (for k = 1: every
nonempty connected S, single vertices included).  Only induced subgraphs
are considered: adding edges never destroys k-connectivity and traces only
see vertex sets.

Two checkers are provided.  ``is_shattered_poly`` looks only at traces of
size at most k + 1: if every such trace is realisable, witnesses of the
traces K | {w} (fixed K of size k) pairwise share K, so their union is
again k-connected and realises any larger W.  ``is_shattered_bruteforce``
checks all 2^|A| traces and serves as the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .bounds import leaf_count_upper_bound
from .config import DEFAULT_LIMITS, Limits
from .exceptions import ScaleGuardError, VerificationError
from .graph import (
    Graph,
    _blocks,
    _component_of,
    _components,
    _is_connected_mask,
    _is_k_connected_mask,
    _k_core,
    _separator_below,
    bits,
    check_vertex_set,
    from_mask,
    symmetry_classes,
    to_mask,
)

EMPTY = "empty"


def _lowbit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _lex_key(mask: int) -> tuple:
    return tuple(bits(mask))


def _check_k(k) -> int:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    return k


# ---------------------------------------------------------------------------
# realizability

class TraceOracle:
    """Cached trace realizability for one graph and one k.

    ``realize(A, W)`` (bitmasks) returns a witness mask S with
    ``S & A == W`` whose induced subgraph is in the family, ``0`` for the
    empty trace, or ``None`` if no such S exists.  Results are cached on
    ``(A - W, W)``, which is all the answer depends on.
    """

    def __init__(self, G: Graph, k: int, limits: Limits = DEFAULT_LIMITS):
        self.G = G
        self.k = _check_k(k)
        self.limits = limits
        self.masks = G.masks
        self.full = G.full_mask
        self.cache: dict = {}
        self.calls = 0
        self.evaluations = 0

    def realize(self, A: int, W: int):
        self.calls += 1
        if not W:
            return 0
        key = (A & ~W, W)
        try:
            return self.cache[key]
        except KeyError:
            pass
        self.evaluations += 1
        allowed = self.full & ~key[0]
        if self.k == 1:
            result = self._realize_connected(allowed, W)
        elif self.k == 2:
            result = self._realize_blocks(allowed, W)
        else:
            result = self._realize_search(allowed, W)
        if len(self.cache) > 2_000_000:
            self.cache.clear()
        self.cache[key] = result
        return result

    def _realize_connected(self, allowed, W):
        comp = _component_of(self.masks, allowed, _lowbit(W))
        return comp if comp & W == W else None

    def _realize_blocks(self, allowed, W):
        # any 2-connected subgraph lies inside one block
        comp = _component_of(self.masks, allowed, _lowbit(W))
        if comp & W != W:
            return None
        best = None
        for b in _blocks(self.masks, comp):
            if b & W == W and b.bit_count() >= 3:
                if best is None or _lex_key(b) < _lex_key(best):
                    best = b
        return best

    def _realize_search(self, allowed, W):
        return _k_connected_container(self.masks, allowed, W, self.k, self.limits.general_k_budget)

    def member(self, S: int) -> bool:
        return not S or _is_k_connected_mask(self.masks, S, self.k)


def _k_connected_container(masks, allowed: int, W: int, k: int, budget: int):
    """Exact search for a k-connected induced subgraph containing W.

    Peel to the k-core and keep the component holding W.  If it is not
    k-connected take a separator S with |S| < k: a k-connected H stays
    connected after deleting S, so H lies in C | S for one component C of
    the rest.  Recurse on each such C | S that still contains W.
    """
    memo: dict = {}
    count = [0]
    anchor = _lowbit(W)

    def rec(X):
        if X in memo:
            return memo[X]
        count[0] += 1
        if count[0] > budget:
            raise ScaleGuardError(f"k-connected container search exceeded {budget} nodes")
        found = None
        X = _k_core(masks, X, k)
        if X & W == W:
            comp = _component_of(masks, X, anchor)
            if comp & W == W:
                sep = _separator_below(masks, comp, k)
                if sep is None:
                    found = comp
                elif sep != -1:
                    for part in _components(masks, comp & ~sep):
                        cand = part | sep
                        if cand & W == W:
                            found = rec(cand)
                            if found is not None:
                                break
        memo[X] = found
        return found

    return rec(allowed)


def family_member(G: Graph, S: Iterable[int], k: int) -> bool:
    """Is G[S] in the family: empty, or k-connected (k = 1: connected)."""
    _check_k(k)
    S = to_mask(check_vertex_set(G, S))
    return not S or _is_k_connected_mask(G.masks, S, k)


def realizable(G: Graph, A: Iterable[int], W: Iterable[int], k: int, return_witness: bool = False):
    """Is there a family member S with S & A == W?

    With ``return_witness`` the result is ``(flag, witness)`` where the
    witness is a frozenset, ``EMPTY`` for the empty trace, or ``None``.
    """
    A = check_vertex_set(G, A)
    W = check_vertex_set(G, W)
    if not W <= A:
        raise ValueError("trace W must be a subset of A")
    wit = TraceOracle(G, k).realize(to_mask(A), to_mask(W))
    if not return_witness:
        return wit is not None
    if wit is None:
        return False, None
    return True, (EMPTY if not W else from_mask(wit))


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class ShatterCertificate:
    """Witnesses for the checked traces of a shattered set.

    ``traces`` holds ``(W, witness)`` pairs of sorted tuples (``EMPTY`` for
    the empty trace).  When ``classes`` is set the certificate is
    compressed: only traces canonical under those twin classes appear.
    """

    A: tuple
    k: int
    traces: tuple
    classes: tuple | None = None

    def to_json(self) -> dict:
        out = {
            "A": list(self.A),
            "k": self.k,
            "traces": [
                {"W": list(W), "witness": wit if wit == EMPTY else list(wit)}
                for W, wit in self.traces
            ],
        }
        if self.classes is not None:
            out["classes"] = [list(c) for c in self.classes]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ShatterCertificate":
        traces = tuple(
            (tuple(t["W"]), EMPTY if t["witness"] == EMPTY else tuple(t["witness"]))
            for t in data["traces"]
        )
        classes = data.get("classes")
        if classes is not None:
            classes = tuple(tuple(c) for c in classes)
        return cls(tuple(data["A"]), int(data["k"]), traces, classes)


def _canonical_traces(A: int, k: int, classes) -> list:
    """Nonempty traces of size <= k + 1, canonical w.r.t. ``classes``.

    Without classes: all subsets.  With classes: W & class must be a prefix
    of the sorted members of A & class, for every class.
    """
    members = list(bits(A))
    limit = min(k + 1, len(members))
    if classes is None:
        out = []
        for size in range(1, limit + 1):
            for combo in combinations(members, size):
                out.append(to_mask(combo))
        return out
    groups = []
    for c in classes:
        inside = [v for v in c if A >> v & 1]
        if inside:
            groups.append(sorted(inside))
    groups.sort()
    out = []

    def rec(i, W, size):
        if i == len(groups):
            if size:
                out.append(W)
            return
        g = groups[i]
        prefix = 0
        rec(i + 1, W, size)
        for j, v in enumerate(g):
            if size + j + 1 > limit:
                break
            prefix |= 1 << v
            rec(i + 1, W | prefix, size + j + 1)

    rec(0, 0, 0)
    out.sort(key=lambda w: (w.bit_count(), _lex_key(w)))
    return out


def _verified_classes(G: Graph, classes) -> tuple:
    """Normalise a twin partition and check each class really is one."""
    out = []
    seen = set()
    for c in classes:
        c = tuple(sorted(int(v) for v in c))
        for v in c:
            if v in seen:
                raise ValueError(f"vertex {v} appears in two classes")
            seen.add(v)
        if len(c) > 1:
            first = c[0]
            for v in c[1:]:
                open_twin = G.masks[v] == G.masks[first]
                closed_twin = G.masks[v] | (1 << v) == G.masks[first] | (1 << first)
                if not (open_twin or closed_twin):
                    raise ValueError(f"vertices {first} and {v} are not twins")
        out.append(c)
    return tuple(sorted(out))


def _resolve_classes(G: Graph, twins):
    if twins is None or twins is False:
        return None
    if twins is True or twins == "auto":
        return tuple(symmetry_classes(G))
    return _verified_classes(G, twins)


def _check_small_traces(oracle: TraceOracle, A: int, classes):
    entries = []
    for W in _canonical_traces(A, oracle.k, classes):
        wit = oracle.realize(A, W)
        if wit is None:
            return None
        entries.append((W, wit))
    return entries


def is_shattered_poly(G: Graph, A: Iterable[int], k: int, twins=None, oracle: TraceOracle | None = None) -> bool:
    """Shattering via traces of size <= k + 1 only.

    ``twins``: ``None`` (check every small trace), ``"auto"`` (compress by the
    graph's twin classes) or an explicit twin partition.  Swapping two twins
    is an automorphism, so only one representative per orbit is checked.
    """
    return certify_shattered(G, A, k, twins, oracle) is not None


def certify_shattered(G: Graph, A: Iterable[int], k: int, twins=None, oracle: TraceOracle | None = None):
    """Certificate for the <= k+1 traces of A, or ``None`` if A is not shattered."""
    _check_k(k)
    A = check_vertex_set(G, A)
    if oracle is None:
        oracle = TraceOracle(G, k)
    classes = _resolve_classes(G, twins)
    Am = to_mask(A)
    entries = _check_small_traces(oracle, Am, classes)
    if entries is None:
        return None
    traces = [((), EMPTY)]
    traces += [(_lex_key(W), _lex_key(wit)) for W, wit in entries]
    return ShatterCertificate(tuple(sorted(A)), k, tuple(traces), classes)


def validate_certificate(G: Graph, cert: ShatterCertificate) -> bool:
    """Independently re-check a certificate; raise ``VerificationError`` on failure.

    Every entry must have ``witness & A == W`` and a family-member witness,
    and every (canonical) trace of size <= k + 1 must be present.
    """
    A = check_vertex_set(G, cert.A)
    Am = to_mask(A)
    k = cert.k
    classes = None if cert.classes is None else _verified_classes(G, cert.classes)
    seen = set()
    for W, wit in cert.traces:
        Wm = to_mask(W)
        if Wm & ~Am:
            raise VerificationError(f"trace {W} is not a subset of A")
        if wit == EMPTY:
            if Wm:
                raise VerificationError(f"empty witness used for nonempty trace {W}")
        else:
            S = to_mask(check_vertex_set(G, wit))
            if S & Am != Wm:
                raise VerificationError(f"witness {wit} has trace {_lex_key(S & Am)} instead of {W}")
            if not family_member(G, wit, k):
                raise VerificationError(f"witness {wit} is not {k}-connected")
        seen.add(Wm)
    missing = [W for W in _canonical_traces(Am, k, classes) if W not in seen]
    if missing or 0 not in seen:
        raise VerificationError(f"certificate misses {len(missing) + (0 not in seen)} required traces")
    return True


@lru_cache(maxsize=64)
def _family_masks(G: Graph, k: int) -> tuple:
    """Every nonempty S whose induced subgraph is in the family (2^n scan)."""
    masks = G.masks
    out = []
    for S in range(1, 1 << G.n):
        if k >= 2:
            if S.bit_count() < k + 1:
                continue
            if any((masks[v] & S).bit_count() < k for v in bits(S)):
                continue
        if _is_k_connected_mask(masks, S, k):
            out.append(S)
    return tuple(out)


def is_shattered_bruteforce(G: Graph, A: Iterable[int], k: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Check all 2^|A| traces.

    Small graphs enumerate the whole family and collect ``S & A`` directly,
    which shares no code with the trace-realizability routines.  Larger
    graphs fall back to realizing each trace separately.
    """
    _check_k(k)
    A = check_vertex_set(G, A)
    if len(A) > limits.bruteforce_max_set:
        raise ScaleGuardError(
            f"oracle scale exceeded: |A| = {len(A)} > {limits.bruteforce_max_set}"
        )
    Am = to_mask(A)
    need = 1 << len(A)
    if G.n <= limits.family_enum_max_n:
        traces = {0}
        for S in _family_masks(G, k):
            traces.add(S & Am)
            if len(traces) == need:
                return True
        return len(traces) == need
    oracle = TraceOracle(G, k, limits)
    members = sorted(A)
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            if oracle.realize(Am, to_mask(combo)) is None:
                return False
    return True


# ---------------------------------------------------------------------------
# VC dimension search

@dataclass
class VCResult:
    dimension: int
    witness: tuple
    certificate: ShatterCertificate
    search_stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "witness": list(self.witness),
            "certificate": self.certificate.to_json(),
            "search_stats": dict(self.search_stats),
        }


@dataclass
class DecisionResult:
    """Answer to "is VC >= s?" with the lexicographically first witness."""

    holds: bool
    s: int
    witness: tuple | None
    certificate: ShatterCertificate | None
    search_stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "s": self.s,
            "witness": None if self.witness is None else list(self.witness),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "search_stats": dict(self.search_stats),
        }


def size_upper_bound(G: Graph, k: int) -> int:
    """Cheap a priori bound on VC_k from the leaf-count bound."""
    if G.n >= 2 and G.max_degree >= 2 and _is_connected_mask(G.masks, G.full_mask):
        ub = leaf_count_upper_bound(G.n, G.max_degree)
        bound = ub + 1 if k == 1 else ub - k + 1
        return max(0, min(G.n, bound))
    return G.n


class _Search:
    """Depth-first growth of shattered sets in lexicographic order.

    Shattering is hereditary, so the tree of shattered sets (each extended
    only by larger vertices) contains every shattered set and is visited in
    lexicographic order.  With ``twin_pruning`` a vertex may only join after
    the previous member of its twin class; the lexicographically first
    maximum set always has this form, so results do not change.
    """

    def __init__(self, G, k, twin_pruning, incremental, limits):
        self.G = G
        self.k = _check_k(k)
        self.oracle = TraceOracle(G, k, limits)
        self.twin_pruning = twin_pruning
        self.incremental = incremental
        self.limits = limits
        self.nodes = 0
        self.classes = tuple(symmetry_classes(G)) if twin_pruning else None
        self.prev_twin = [-1] * G.n
        if twin_pruning:
            for c in self.classes:
                for a, b in zip(c, c[1:]):
                    self.prev_twin[b] = a
        self.candidates = [v for v in range(G.n) if self.oracle.realize(1 << v, 1 << v) is not None]

    def extend(self, A: int, traces: dict, v: int):
        """Trace table for A | {v} from the table of A, or ``None``."""
        A2 = A | (1 << v)
        if not self.incremental:
            entries = _check_small_traces(self.oracle, A2, self.classes)
            return None if entries is None else dict(entries)
        realize = self.oracle.realize
        vbit = 1 << v
        new = {}
        for W, wit in traces.items():
            if wit & vbit:
                wit = realize(A2, W)
                if wit is None:
                    return None
            new[W] = wit
        if self.twin_pruning:
            # W | {v} is canonical iff W holds every earlier class member in A
            same = 0
            u = self.prev_twin[v]
            while u >= 0:
                same |= 1 << u
                u = self.prev_twin[u]
            same &= A
        else:
            same = 0
        bases = [0] + [W for W in traces if W.bit_count() <= self.k]
        for W in bases:
            if W & same != same:
                continue
            W2 = W | vbit
            wit = realize(A2, W2)
            if wit is None:
                return None
            new[W2] = wit
        return new

    def run(self, goal: int | None):
        """Maximum search (``goal=None``) or decision search for size ``goal``."""
        cands = self.candidates
        bound = size_upper_bound(self.G, self.k)
        best = [0, 0]  # size, mask
        budget = self.limits.vc_search_budget
        prev_twin = self.prev_twin
        tp = self.twin_pruning

        def dfs(A, size, traces, start):
            self.nodes += 1
            if self.nodes > budget:
                raise ScaleGuardError(f"VC search exceeded {budget} nodes")
            if size > best[0]:
                best[0], best[1] = size, A
                if goal is not None and size >= goal:
                    return True
                if size >= bound:
                    return True
            for i in range(start, len(cands)):
                remaining = len(cands) - i
                if goal is None:
                    if size + remaining <= best[0]:
                        break
                elif size + remaining < goal:
                    break
                v = cands[i]
                if tp and prev_twin[v] >= 0 and not A >> prev_twin[v] & 1:
                    continue
                new = self.extend(A, traces, v)
                if new is None:
                    continue
                if dfs(A | (1 << v), size + 1, new, i + 1):
                    return True
            return False

        if goal is not None and goal <= 0:
            return 0, 0
        if goal is not None and goal > bound:
            return best[0], best[1]
        dfs(0, 0, {}, 0)
        return best[0], best[1]

    def stats(self) -> dict:
        return {
            "sets_examined": self.nodes,
            "realizability_calls": self.oracle.calls,
            "realizability_evaluations": self.oracle.evaluations,
            "candidates": len(self.candidates),
        }


def vc_dimension(
    G: Graph,
    k: int,
    twin_pruning: bool = True,
    incremental: bool = True,
    limits: Limits = DEFAULT_LIMITS,
) -> VCResult:
    """Exact VC dimension for the k-connected family, with the
    lexicographically smallest maximum shattered set as witness."""
    search = _Search(G, k, twin_pruning, incremental, limits)
    size, mask = search.run(None)
    witness = _lex_key(mask)
    cert = certify_shattered(G, witness, k, None, search.oracle)
    if cert is None:
        raise VerificationError("search produced a set that is not shattered")
    return VCResult(size, witness, cert, search.stats())


def vc_at_least(
    G: Graph,
    k: int,
    s: int,
    twin_pruning: bool = True,
    incremental: bool = True,
    limits: Limits = DEFAULT_LIMITS,
) -> DecisionResult:
    """Decide VC_k(G) >= s, stopping at the first shattered set of size s."""
    if s < 1:
        raise ValueError("s must be at least 1")
    search = _Search(G, k, twin_pruning, incremental, limits)
    size, mask = search.run(s)
    if size >= s:
        witness = _lex_key(mask)
        cert = certify_shattered(G, witness, k, None, search.oracle)
        if cert is None:
            raise VerificationError("search produced a set that is not shattered")
        return DecisionResult(True, s, witness, cert, search.stats())
    return DecisionResult(False, s, None, None, search.stats())
