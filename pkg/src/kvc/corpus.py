"""Seeded test corpora and the bounds sweep.

Everything here is deterministic given its arguments: the same seed gives
the same graphs, formulas and rows in the same order.
"""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor

import networkx as nx

from .bounds import bound_report
from .graph import Graph, from_networkx
from .sat import ABOVE, BELOW, Formula, Literal, RectilinearLayout, nesting_levels, validate_layout
from .shatter import vc_dimension

SWEEP_FIELDS = (
    "graph_id", "n", "m", "max_degree", "ell", "k", "vc",
    "upper_kcon", "lower_con", "lower_turan", "lower_thm5", "ok",
)


def atlas_graphs(max_n: int = 7, min_n: int = 1) -> list:
    """Connected graphs from the networkx atlas (one per isomorphism class)."""
    if max_n > 7:
        raise ValueError("the atlas only goes up to 7 vertices")
    return [
        from_networkx(H) for H in nx.graph_atlas_g()[1:]
        if min_n <= H.number_of_nodes() <= max_n and nx.is_connected(H)
    ]


def random_connected_graph(n: int, rng: random.Random, density: float | None = None) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``density``."""
    if density is None:
        density = rng.random()
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < density:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_graphs(count: int, seed: int, n_min: int = 2, n_max: int = 8) -> list:
    rng = random.Random(seed)
    return [random_connected_graph(rng.randint(n_min, n_max), rng) for _ in range(count)]


def random_laid_out_formula(rng: random.Random, n: int, m: int, attempts: int = 1000):
    """A formula with a valid random rectilinear layout, or ``None``."""
    for _ in range(attempts):
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(n), 3)
            clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in vs))
        F = Formula(n, tuple(clauses))
        order = list(range(n))
        rng.shuffle(order)
        sides = tuple(rng.choice((ABOVE, BELOW)) for _ in range(m))
        L = RectilinearLayout(tuple(order), sides, nesting_levels(F, order, sides))
        if not validate_layout(F, L):
            return F, L
    return None


def random_laid_out_formulas(count: int, seed: int, n_range=(3, 4), m_range=(1, 3)) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        got = random_laid_out_formula(rng, rng.randint(*n_range), rng.randint(*m_range))
        if got is not None:
            out.append(got)
    return out


def random_monotone_instances(count: int, seed: int, n_range=(3, 5), m_range=(1, 3)) -> list:
    """Laid-out formulas whose clause signs follow their side (monotone layouts)."""
    out = []
    for F, L in random_laid_out_formulas(count, seed, n_range, m_range):
        clauses = tuple(
            tuple(Literal(x.var, L.sides[j] == BELOW) for x in c)
            for j, c in enumerate(F.clauses)
        )
        out.append((Formula(F.num_vars, clauses), L))
    return out


def sweep_row(graph_id: int, G: Graph, k: int) -> dict:
    """VC and every bound for one graph, plus whether the inequalities hold."""
    vc = vc_dimension(G, k).dimension
    rep = bound_report(G, k)
    ok = vc >= rep.lower_turan
    if k == 1:
        ok = ok and rep.ell <= vc <= rep.ell + 1
    else:
        ok = ok and vc <= rep.upper_kcon
    if rep.lower_thm5 is not None:
        ok = ok and vc >= math.ceil(rep.lower_thm5 - 1e-9)
    return {
        "graph_id": graph_id,
        "n": G.n,
        "m": G.m,
        "max_degree": G.max_degree,
        "ell": rep.ell,
        "k": k,
        "vc": vc,
        "upper_kcon": rep.upper_kcon,
        "lower_con": rep.lower_con,
        "lower_turan": rep.lower_turan,
        "lower_thm5": None if rep.lower_thm5 is None else round(rep.lower_thm5, 6),
        "ok": ok,
    }


def _rows_for(job):
    graph_id, G, ks = job
    return [sweep_row(graph_id, G, k) for k in ks]


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("KVC_THREADS", "1")))
    except ValueError:
        return 1


def bounds_sweep(graphs, ks=(1, 2, 3), workers: int | None = None) -> list:
    """Rows for every graph (n >= 2) and k, sorted by (graph_id, k)."""
    jobs = [(i, G, tuple(ks)) for i, G in enumerate(graphs) if G.n >= 2]
    workers = thread_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_rows_for, jobs))
    else:
        chunks = [_rows_for(job) for job in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["graph_id"], r["k"]))
    return rows
