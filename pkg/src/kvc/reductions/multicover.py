"""Set multicover and its reduction to VC of the k-connected family.

Vertex layout of the reduction graph (in this order):

* A: ``n`` columns of ``t + k + 1`` copies each, one column per element;
* B: one vertex per subset, joined to every copy of each of its elements;
* C: a clique on ``k`` vertices, joined to all of B and D;
* D: ``t + m + 1`` reservoir vertices.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..config import DEFAULT_LIMITS, Limits
from ..exceptions import ScaleGuardError, VerificationError
from ..shatter import certify_shattered, is_shattered_poly, validate_certificate, vc_at_least
from .gadget import Builder, GadgetGraph


@dataclass(frozen=True)
class MulticoverInstance:
    ground_size: int
    subsets: tuple
    k: int
    t: int

    def __post_init__(self):
        subsets = tuple(frozenset(int(a) for a in s) for s in self.subsets)
        for i, s in enumerate(subsets):
            bad = [a for a in s if not 0 <= a < self.ground_size]
            if bad:
                raise ValueError(f"subset {i} has elements outside 0..{self.ground_size - 1}: {sorted(bad)}")
        if self.k < 1:
            raise ValueError("coverage k must be at least 1")
        if self.t < 0:
            raise ValueError("budget t must be nonnegative")
        object.__setattr__(self, "subsets", subsets)

    @property
    def m(self) -> int:
        return len(self.subsets)

    def covers(self, I) -> bool:
        if len(I) > self.t:
            return False
        count = [0] * self.ground_size
        for i in I:
            for a in self.subsets[i]:
                count[a] += 1
        return all(c >= self.k for c in count)

    def to_json(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "subsets": [sorted(s) for s in self.subsets],
            "k": self.k,
            "t": self.t,
        }

    @classmethod
    def from_json(cls, data: dict, k: int | None = None, t: int | None = None):
        return cls(
            int(data["ground_size"]),
            tuple(data["subsets"]),
            int(data["k"] if k is None else k),
            int(data["t"] if t is None else t),
        )


def solve_multicover(inst: MulticoverInstance, limits: Limits = DEFAULT_LIMITS):
    """Lexicographically first feasible index set (as a sorted tuple), or ``None``.

    Index sets are compared as sorted tuples, so ``(0, 1) < (0, 1, 2) < (0, 2)``.
    """
    if inst.m > limits.multicover_max_m:
        raise ScaleGuardError(f"multicover enumeration limited to m <= {limits.multicover_max_m}")
    need = [inst.k] * inst.ground_size
    m, t = inst.m, inst.t
    # suffix coverage: how much the subsets i.. can still add per element
    avail = [[0] * inst.ground_size for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        avail[i] = list(avail[i + 1])
        for a in inst.subsets[i]:
            avail[i][a] += 1

    def rec(chosen, start):
        if all(c <= 0 for c in need):
            return tuple(chosen)
        if len(chosen) == t:
            return None
        for i in range(start, m):
            if any(need[a] > avail[i][a] for a in range(inst.ground_size)):
                return None
            chosen.append(i)
            for a in inst.subsets[i]:
                need[a] -= 1
            found = rec(chosen, i + 1)
            for a in inst.subsets[i]:
                need[a] += 1
            chosen.pop()
            if found is not None:
                return found
        return None

    return rec([], 0)


def multicover_to_graph(inst: MulticoverInstance) -> GadgetGraph:
    k, t, n, m = inst.k, inst.t, inst.ground_size, inst.m
    if k < 2:
        raise ValueError("the reduction needs k >= 2")
    b = Builder()
    columns = [[b.add("column", f"element:{j}") for _ in range(t + k + 1)] for j in range(n)]
    sets = [b.add("set", f"subset:{i}") for i in range(m)]
    clique = [b.add("clique", f"clique:{r}") for r in range(k)]
    reservoir = [b.add("reservoir", f"reservoir:{r}") for r in range(t + m + 1)]
    for x, u in enumerate(clique):
        for w in clique[x + 1:]:
            b.join(u, w)
        for w in sets + reservoir:
            b.join(u, w)
    for i, s in enumerate(inst.subsets):
        for j in s:
            for c in columns[j]:
                b.join(sets[i], c)
    G = b.graph()
    return GadgetGraph(
        G,
        tuple(b.roles),
        tuple(b.provenance),
        threshold=G.n - (t + k),
        intended_k=k,
        meta={"instance": inst.to_json()},
    )


def multicover_witness(gg: GadgetGraph, I) -> tuple:
    """V' = A + D + the subset vertices outside I."""
    chosen = {f"subset:{i}" for i in I}
    return tuple(
        v for v in range(gg.graph.n)
        if gg.roles[v] in ("column", "reservoir")
        or (gg.roles[v] == "set" and gg.provenance[v] not in chosen)
    )


def verify_multicover_reduction(inst: MulticoverInstance, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Solve both sides independently and compare.

    On yes-instances the constructed witness V' gets a compressed
    certificate which is re-validated, and any set found by the VC search is
    re-checked as well.
    """
    I = solve_multicover(inst, limits)
    gg = multicover_to_graph(inst)
    G, k = gg.graph, gg.intended_k
    decision = vc_at_least(G, k, gg.threshold, limits=limits)
    report = {
        "instance": inst.to_json(),
        "n_vertices": G.n,
        "threshold": gg.threshold,
        "multicover": None if I is None else list(I),
        "vc_at_least": decision.holds,
        "agree": (I is not None) == decision.holds,
        "search_stats": decision.search_stats,
    }
    if decision.holds:
        validate_certificate(G, decision.certificate)
        report["search_witness"] = list(decision.witness)
    if I is not None:
        witness = multicover_witness(gg, I)
        if len(witness) < gg.threshold:
            raise VerificationError(f"constructed witness has {len(witness)} < {gg.threshold} vertices")
        cert = certify_shattered(G, witness, k, twins="auto")
        if cert is None:
            report["witness_shattered"] = False
            report["agree"] = False
        else:
            validate_certificate(G, cert)
            report["witness_shattered"] = is_shattered_poly(G, witness, k)
            report["witness"] = list(witness)
            report["certificate"] = cert.to_json()
    return report
