"""Graph readers and writers: canonical JSON and DIMACS edge format.

JSON form (0-indexed)::

    {"n": 4, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c", "d"]}

DIMACS form (1-indexed)::

    c comment
    p edge 4 2
    e 1 2
    e 2 3

Both readers reject self-loops and duplicate edges with an
``InputFormatError`` that names the offending line.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .exceptions import InputFormatError
from .graph import Graph

_PAIR = re.compile(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def dumps_json(payload) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def graph_to_dict(G: Graph) -> dict:
    out = {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}
    if G.labels is not None:
        out["labels"] = list(G.labels)
    return out


def _edge_lines(text: str) -> list:
    """Line number of each ``[u, v]`` pair inside the "edges" array."""
    start = text.find('"edges"')
    if start < 0:
        return []
    lines = []
    for match in _PAIR.finditer(text, start):
        lines.append(text.count("\n", 0, match.start()) + 1)
    return lines


def graph_from_dict(data, text: str | None = None, source=None) -> Graph:
    if not isinstance(data, dict):
        raise InputFormatError("graph JSON must be an object", source=source)
    try:
        n = data["n"]
        raw_edges = data.get("edges", [])
    except KeyError:
        raise InputFormatError('graph JSON needs an "n" field', source=source) from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputFormatError(f'"n" must be a nonnegative integer, got {n!r}', source=source)
    lines = _edge_lines(text) if text is not None else []
    seen = {}
    edges = []
    for i, e in enumerate(raw_edges):
        line = lines[i] if i < len(lines) else None
        if not (isinstance(e, (list, tuple)) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise InputFormatError(f"edge #{i} is not a pair of integers: {e!r}", line, source)
        u, v = e
        if u == v:
            raise InputFormatError(f"edge #{i} is a self-loop at vertex {u}", line, source)
        if not (0 <= u < n and 0 <= v < n):
            raise InputFormatError(f"edge #{i} ({u}, {v}) has an endpoint outside 0..{n - 1}", line, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputFormatError(
                f"edge #{i} {key} duplicates edge #{seen[key]}", line, source
            )
        seen[key] = i
        edges.append(key)
    labels = data.get("labels")
    if labels is not None and len(labels) != n:
        raise InputFormatError(f"expected {n} labels, got {len(labels)}", source=source)
    return Graph(n, edges, labels)


def read_graph_json(text: str, source=None) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    return graph_from_dict(data, text, source)


def write_graph_json(G: Graph) -> str:
    return dumps_json(graph_to_dict(G))


def read_graph_dimacs(text: str, source=None) -> Graph:
    n = m = None
    header_line = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InputFormatError("second problem line", lineno, source)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise InputFormatError(f"expected 'p edge N M', got {line!r}", lineno, source)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputFormatError(f"non-integer counts in {line!r}", lineno, source) from None
            header_line = lineno
        elif parts[0] == "e":
            if n is None:
                raise InputFormatError("edge line before the 'p edge' header", lineno, source)
            if len(parts) != 3:
                raise InputFormatError(f"expected 'e U V', got {line!r}", lineno, source)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise InputFormatError(f"non-integer endpoint in {line!r}", lineno, source) from None
            if u == v:
                raise InputFormatError(f"self-loop at vertex {u + 1}", lineno, source)
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"endpoint outside 1..{n}", lineno, source)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputFormatError(
                    f"duplicate edge {key[0] + 1}-{key[1] + 1} (first on line {seen[key]})",
                    lineno,
                    source,
                )
            seen[key] = lineno
            edges.append(key)
        else:
            raise InputFormatError(f"unknown record type {parts[0]!r}", lineno, source)
    if n is None:
        raise InputFormatError("missing 'p edge N M' header", source=source)
    if m != len(edges):
        raise InputFormatError(f"header declares {m} edges, found {len(edges)}", header_line, source)
    return Graph(n, edges)


def write_graph_dimacs(G: Graph) -> str:
    lines = [f"p edge {G.n} {G.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    """Read a graph file, choosing the format from its content."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return read_graph_json(text, source=str(path))
    return read_graph_dimacs(text, source=str(path))
