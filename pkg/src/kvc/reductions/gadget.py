"""Reduction output: a graph plus per-vertex roles and provenance."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import Graph
from ..io import graph_from_dict, graph_to_dict

ROLE_COLOURS = {
    "centre": "red",
    "vein": "gray",
    "peak": "orange",
    "literal+": "green",
    "literal-": "darkgreen",
    "horizontal-left": "blue",
    "horizontal-right": "blue",
    "connector-mid": "purple",
    "column": "gray",
    "set": "orange",
    "clique": "red",
    "reservoir": "blue",
}


@dataclass(frozen=True)
class GadgetGraph:
    """A reduction instance.

    The reduction claims: VC for ``intended_k`` is at least ``threshold``
    iff the source instance is a yes-instance.  ``faithful_p`` is False
    when a gadget size parameter was overridden below the value the
    correctness argument needs.
    """

    graph: Graph
    roles: tuple
    provenance: tuple
    threshold: int
    intended_k: int
    faithful_p: bool = True
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(self.roles) != self.graph.n or len(self.provenance) != self.graph.n:
            raise ValueError("need one role and one provenance entry per vertex")

    def with_role(self, role: str, prefix: str | None = None) -> list:
        return [
            v for v in range(self.graph.n)
            if self.roles[v] == role and (prefix is None or self.provenance[v] == prefix
                                          or self.provenance[v].startswith(prefix + "/"))
        ]

    def role_counts(self) -> dict:
        counts: dict = {}
        for r in self.roles:
            counts[r] = counts.get(r, 0) + 1
        return dict(sorted(counts.items()))

    def to_json(self) -> dict:
        out = graph_to_dict(self.graph)
        out.update(
            roles=list(self.roles),
            provenance=list(self.provenance),
            threshold=self.threshold,
            intended_k=self.intended_k,
            faithful_p=self.faithful_p,
        )
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GadgetGraph":
        return cls(
            graph_from_dict(data),
            tuple(data["roles"]),
            tuple(data["provenance"]),
            int(data["threshold"]),
            int(data["intended_k"]),
            bool(data.get("faithful_p", True)),
            data.get("meta", {}),
        )

    def to_dot(self) -> str:
        lines = ["graph G {", "  node [style=filled];"]
        for v in range(self.graph.n):
            colour = ROLE_COLOURS.get(self.roles[v], "white")
            label = f"{v}\\n{self.roles[v]}"
            lines.append(f'  {v} [label="{label}", fillcolor={colour}];')
        for u, v in self.graph.sorted_edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class Builder:
    """Accumulates vertices with roles and edges for a gadget graph."""

    def __init__(self):
        self.roles: list = []
        self.provenance: list = []
        self.edges: list = []

    def add(self, role: str, prov: str) -> int:
        self.roles.append(role)
        self.provenance.append(prov)
        return len(self.roles) - 1

    def join(self, u: int, v: int):
        self.edges.append((u, v))

    def graph(self) -> Graph:
        return Graph(len(self.roles), self.edges)
