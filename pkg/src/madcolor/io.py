"""Text formats: edge lists, list assignments and colorings.

Edge list::

    # comment
    n m
    u v          (m lines, 1-based)

List assignment: one line ``v: c1 c2 ...`` per vertex.
Coloring: lines ``v c``; uncolored vertices are omitted.
"""

from __future__ import annotations

from pathlib import Path

from .errors import MalformedInputError
from .graph import Graph, build_graph


def _lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _read(path) -> str:
    return Path(path).read_text()


def parse_edge_list(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise MalformedInputError("empty edge list")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise MalformedInputError(f"bad header line {lines[0]!r}; expected 'n m'") from None
    body = lines[1:]
    if len(body) != m:
        raise MalformedInputError(f"header announces {m} edges but {len(body)} follow")
    edges = []
    for line in body:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInputError(f"bad edge line {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInputError(f"bad edge line {line!r}") from None
    return build_graph(n, edges)


def read_edge_list(source) -> Graph:
    """Read a graph from an edge-list file."""
    return parse_edge_list(_read(source))


def format_edge_list(G: Graph) -> str:
    out = [f"{G.n} {G.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def write_edge_list(G: Graph, path) -> None:
    Path(path).write_text(format_edge_list(G))


def parse_lists(text: str, n: int) -> list:
    lists = [None] * n
    for line in _lines(text):
        head, _, tail = line.partition(":")
        try:
            v = int(head)
            colors = frozenset(int(c) for c in tail.split())
        except ValueError:
            raise MalformedInputError(f"bad list line {line!r}") from None
        if not 1 <= v <= n:
            raise MalformedInputError(f"list for unknown vertex {v}")
        if lists[v - 1] is not None:
            raise MalformedInputError(f"vertex {v} has two list lines")
        lists[v - 1] = colors
    missing = [i + 1 for i, L in enumerate(lists) if L is None]
    if missing:
        raise MalformedInputError(f"no list for vertices {missing[:10]}")
    return lists


def read_lists(source, n: int) -> list:
    return parse_lists(_read(source), n)


def format_lists(lists) -> str:
    return "".join(f"{v + 1}: {' '.join(map(str, sorted(L)))}\n" for v, L in enumerate(lists))


def parse_coloring(text: str, n: int) -> list:
    col = [None] * n
    for line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInputError(f"bad coloring line {line!r}")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedInputError(f"bad coloring line {line!r}") from None
        if not 1 <= v <= n:
            raise MalformedInputError(f"color for unknown vertex {v}")
        col[v - 1] = c
    return col


def read_coloring(source, n: int) -> list:
    return parse_coloring(_read(source), n)


def format_coloring(col) -> str:
    return "".join(f"{v + 1} {c}\n" for v, c in enumerate(col) if c is not None)
