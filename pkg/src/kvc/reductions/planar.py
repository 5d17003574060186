"""Planar monotone 1-in-3-SAT to VC of the 2-connected family.

Gadgets (``p`` veins per leaf):

* shamrock: a triangle (the centre) plus, for every pair of centre
  vertices, a leaf of degree-2 vertices adjacent to exactly that pair;
* clause gadget: a shamrock whose leaf ``s`` also holds a peak wired to
  the literal vertex of the clause's ``s``-th literal;
* variable gadget: the 4-cycle hL - x - hR - ~x plus a peakless shamrock
  whose centre vertices are joined to x, ~x and hL respectively;
* connector: the edge hR(u) - hL(w) plus ``p`` paths of length two.

Connectors join consecutive variables of the layout order and one more
closes the ring from the last variable back to the first.  With a
satisfying assignment, removing the centres, horizontals, false literal
vertices and false peaks (5 per clause, 6 per variable) leaves a set of
size ``threshold`` shattered by 2-connected subgraphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product

from ..config import DEFAULT_LIMITS, Limits
from ..exceptions import ScaleGuardError, VerificationError
from ..graph import is_connected, is_k_connected, is_planar, induced_subgraph
from ..sat import (
    ABOVE,
    BELOW,
    Formula,
    RectilinearLayout,
    eval_1in3,
    formula_from_dict,
    formula_to_dict,
    is_monotone,
    validate_layout,
)
from ..shatter import TraceOracle, is_shattered_poly, vc_at_least
from .gadget import Builder, GadgetGraph

LEAF_PAIRS = ((0, 1), (1, 2), (0, 2))


@dataclass
class Fragment:
    """Vertices and edges of one gadget, with named attachment points."""

    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)


def _check_p(p):
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be a positive integer, got {p!r}")


def _shamrock(b: Builder, frag: Fragment, prov: str, p: int, peaks: bool):
    centre = [b.add("centre", prov) for _ in range(3)]
    for i, j in LEAF_PAIRS:
        frag.edges.append((centre[i], centre[j]))
    frag.vertices += centre
    frag.parts["centre"] = centre
    leaves, peak_ids = [], []
    for s, (i, j) in enumerate(LEAF_PAIRS):
        leaf = [b.add("vein", f"{prov}/leaf:{s}") for _ in range(p)]
        if peaks:
            peak = b.add("peak", f"{prov}/literal:{s}")
            leaf.append(peak)
            peak_ids.append(peak)
        for v in leaf:
            frag.edges += [(centre[i], v), (centre[j], v)]
        frag.vertices += leaf
        leaves.append(leaf)
    frag.parts["leaves"] = leaves
    if peaks:
        frag.parts["peaks"] = peak_ids


def build_clause_gadget(p: int, clause_id: int, builder: Builder | None = None) -> Fragment:
    _check_p(p)
    b = builder if builder is not None else Builder()
    frag = Fragment()
    _shamrock(b, frag, f"clause:{clause_id}", p, peaks=True)
    _flush(b, frag, builder)
    return frag


def build_variable_gadget(p: int, var_id: int, builder: Builder | None = None) -> Fragment:
    _check_p(p)
    b = builder if builder is not None else Builder()
    prov = f"var:{var_id}"
    frag = Fragment()
    hl = b.add("horizontal-left", prov)
    pos = b.add("literal+", prov)
    hr = b.add("horizontal-right", prov)
    neg = b.add("literal-", prov)
    frag.vertices += [hl, pos, hr, neg]
    frag.edges += [(hl, pos), (pos, hr), (hr, neg), (neg, hl)]
    _shamrock(b, frag, prov, p, peaks=False)
    c = frag.parts["centre"]
    frag.edges += [(c[0], pos), (c[1], neg), (c[2], hl)]
    frag.parts.update(left=hl, right=hr, positive=pos, negative=neg)
    _flush(b, frag, builder)
    return frag


def build_connector(p: int, left_var: int, right_var: int, connector_id: int = 0,
                    builder: Builder | None = None, ends: tuple | None = None) -> Fragment:
    """Edge hR(left_var) - hL(right_var) plus ``p`` length-two paths.

    Inside a shared builder ``ends`` gives the two existing horizontal
    vertices.  Standalone, the fragment numbers the two endpoints 0 and 1
    and the ``p`` new mid vertices after them.
    """
    _check_p(p)
    b = builder if builder is not None else Builder()
    if ends is None:
        if builder is not None:
            raise ValueError("ends are required when adding to a shared builder")
        ends = (b.add("horizontal-right", f"var:{left_var}"), b.add("horizontal-left", f"var:{right_var}"))
    left, right = ends
    frag = Fragment(edges=[(left, right)])
    for _ in range(p):
        mid = b.add("connector-mid", f"connector:{connector_id}")
        frag.vertices.append(mid)
        frag.edges += [(left, mid), (mid, right)]
    frag.parts.update(left=left, right=right)
    _flush(b, frag, builder)
    return frag


def _flush(b, frag, builder):
    # standalone fragments keep their edges; shared builders collect them
    if builder is not None:
        for u, v in frag.edges:
            b.join(u, v)


def default_p(F: Formula) -> int:
    return 5 * F.m + 6 * F.num_vars + 1


def _check_monotone_layout(F: Formula, L: RectilinearLayout):
    if not is_monotone(F):
        raise ValueError("formula is not monotone")
    problems = validate_layout(F, L)
    if problems:
        raise ValueError(f"invalid layout: {problems[0].kind}: {problems[0].detail}")
    for j, c in enumerate(F.clauses):
        want = BELOW if c[0].negated else ABOVE
        if L.sides[j] != want:
            raise ValueError(f"clause {j} is drawn {L.sides[j]} but its literals need {want}")


def monotone1in3_to_planar_graph(F: Formula, L: RectilinearLayout, p: int | None = None) -> GadgetGraph:
    """Build G_C; ``p`` defaults to 5m + 6n + 1 (smaller values are flagged)."""
    _check_monotone_layout(F, L)
    faithful = default_p(F)
    if p is None:
        p = faithful
    _check_p(p)
    b = Builder()
    variables = {}
    for v in L.order:
        variables[v] = build_variable_gadget(p, v, b)
    for j, c in enumerate(F.clauses):
        frag = build_clause_gadget(p, j, b)
        for s, x in enumerate(c):
            g = variables[x.var]
            b.join(frag.parts["peaks"][s], g.parts["negative" if x.negated else "positive"])
    n = len(L.order)
    for i in range(n):
        u, w = L.order[i], L.order[(i + 1) % n]
        ends = (variables[u].parts["right"], variables[w].parts["left"])
        build_connector(p, u, w, i, b, ends)
    G = b.graph()
    gg = GadgetGraph(
        G,
        tuple(b.roles),
        tuple(b.provenance),
        threshold=G.n - (5 * F.m + 6 * F.num_vars),
        intended_k=2,
        faithful_p=p >= faithful,
        meta={"p": p, "formula": formula_to_dict(F, L)},
    )
    if not is_planar(G):
        raise VerificationError("constructed graph is not planar")
    return gg


def gadget_formula(gg: GadgetGraph):
    """The (formula, layout) a planar gadget graph was built from."""
    return formula_from_dict(gg.meta["formula"])


def _literal_vertices(gg: GadgetGraph) -> dict:
    """var -> (positive literal vertex, negative literal vertex)."""
    out: dict = {}
    for v in range(gg.graph.n):
        role = gg.roles[v]
        if role in ("literal+", "literal-"):
            var = int(gg.provenance[v].split(":")[1])
            pair = out.setdefault(var, [None, None])
            pair[role == "literal-"] = v
    return {var: tuple(pair) for var, pair in out.items()}


def removed_set(gg: GadgetGraph, assignment, require_satisfying: bool = True) -> tuple:
    """A: centres, horizontals, false literal vertices and false peaks."""
    F, _ = gadget_formula(gg)
    if len(assignment) != F.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values for {F.num_vars} variables")
    if require_satisfying and not eval_1in3(F, assignment):
        raise ValueError("assignment does not 1-in-3 satisfy the formula")
    lits = _literal_vertices(gg)
    G = gg.graph
    false_literals = {lits[var][1 if value else 0] for var, value in enumerate(assignment)}
    A = []
    for v in range(G.n):
        role = gg.roles[v]
        if role in ("centre", "horizontal-left", "horizontal-right") or v in false_literals:
            A.append(v)
        elif role == "peak":
            literal = next(w for w in G.adj[v] if gg.roles[w] in ("literal+", "literal-"))
            if literal in false_literals:
                A.append(v)
    return tuple(A)


def check_removed_structure(gg: GadgetGraph, A) -> None:
    """Check the shape G[A] must have; raise ``VerificationError`` otherwise.

    G[A] is 2-connected; the horizontals and false literal vertices form a
    cycle of length 3n; every variable centre, and every clause centre
    together with its false peaks, is joined to that cycle by exactly two
    edges and to nothing else in A.
    """
    F, _ = gadget_formula(gg)
    G = gg.graph
    A = set(A)
    expected = 5 * F.m + 6 * F.num_vars
    if len(A) != expected:
        raise VerificationError(f"|A| = {len(A)}, expected {expected}")
    H, _ = induced_subgraph(G, sorted(A))
    if not is_k_connected(H, 2):
        raise VerificationError("G[A] is not 2-connected")
    cycle = {v for v in A if gg.roles[v] not in ("centre", "peak")}
    C, _ = induced_subgraph(G, sorted(cycle))
    if len(cycle) != 3 * F.num_vars or not is_connected(C) or any(C.degree(v) != 2 for v in range(C.n)):
        raise VerificationError("horizontals and false literals do not form a 3n-cycle")
    groups: dict = {}
    for v in A - cycle:
        groups.setdefault(gg.provenance[v].split("/")[0], set()).add(v)
    for name, members in sorted(groups.items()):
        outside = [(u, w) for u in members for w in G.adj[u] if w in A and w not in members]
        if len(outside) != 2 or any(w not in cycle for _, w in outside):
            raise VerificationError(f"{name} is joined to the rest of A by {len(outside)} edges, expected 2 to the cycle")


def shattered_set_from_assignment(gg: GadgetGraph, assignment, debug: bool = False) -> tuple:
    """V' = V minus A for a 1-in-3 satisfying assignment."""
    A = removed_set(gg, assignment)
    if debug:
        check_removed_structure(gg, A)
    drop = set(A)
    return tuple(v for v in range(gg.graph.n) if v not in drop)


def assignment_from_shattered_set(gg: GadgetGraph, V) -> tuple:
    """A literal is true iff its vertex is in V'.

    Literal vertices of degree 3 (their literal occurs in no clause) are
    ignored when the other literal vertex of the variable is present.
    """
    F, _ = gadget_formula(gg)
    V = set(V)
    if len(V) < gg.threshold:
        raise ValueError(f"|V'| = {len(V)} is below the threshold {gg.threshold}")
    G = gg.graph
    out = []
    for var in range(F.num_vars):
        pos, neg = _literal_vertices(gg)[var]
        present = [w for w in (pos, neg) if w in V]
        if len(present) == 2:
            present = [w for w in present if G.degree(w) != 3]
        if len(present) != 1:
            raise ValueError(f"not a canonical witness: variable {var} has {len(present)} literal vertices in V'")
        out.append(present[0] == pos)
    return tuple(out)


def miniature_probe(F: Formula, L: RectilinearLayout, p: int = 2, search_budget: int = 200,
                    limits: Limits = DEFAULT_LIMITS) -> dict:
    """Probe the reduction at a reduced ``p`` where its proof does not apply.

    Three checks, each reported rather than asserted:

    * ``forward``: for each satisfying assignment, is V minus A shattered?
    * ``canonical``: over all 2^n assignments, is the V minus A pattern a
      shattered set of threshold size exactly for the satisfying ones?
    * ``search``: VC_2 >= threshold by exhaustive search under
      ``search_budget`` nodes; ``None`` when the budget runs out.
    """
    gg = monotone1in3_to_planar_graph(F, L, p)
    G = gg.graph
    oracle = TraceOracle(G, 2, limits)
    forward, canonical = [], []
    for a in product((False, True), repeat=F.num_vars):
        sat = eval_1in3(F, a)
        A = set(removed_set(gg, a, require_satisfying=False))
        V = [v for v in range(G.n) if v not in A]
        shattered = is_shattered_poly(G, V, 2, twins="auto", oracle=oracle)
        canonical.append({
            "assignment": list(a),
            "satisfying": sat,
            "size": len(V),
            "shattered": shattered,
            "witness": shattered and len(V) >= gg.threshold,
        })
        if sat:
            forward.append(shattered)
    satisfiable = bool(forward)
    report = {
        "p": p,
        "faithful_p": gg.faithful_p,
        "n_vertices": G.n,
        "threshold": gg.threshold,
        "satisfiable": satisfiable,
        "forward_ok": all(forward),
        "canonical_ok": all(r["satisfying"] == r["witness"] for r in canonical),
        "canonical": canonical,
    }
    try:
        decision = vc_at_least(G, 2, gg.threshold, limits=replace(limits, vc_search_budget=search_budget))
    except ScaleGuardError as exc:
        report.update(search=None, search_agrees=None, search_note=str(exc))
        return report
    report.update(search=decision.holds, search_agrees=decision.holds == satisfiable)
    if decision.holds:
        report["search_witness"] = list(decision.witness)
        try:
            decoded = assignment_from_shattered_set(gg, decision.witness)
            report["decoded"] = list(decoded)
            report["decoded_satisfies"] = eval_1in3(F, decoded)
        except ValueError as exc:
            report["decoded"] = None
            report["decode_error"] = str(exc)
    return report
