"""Sequential degree-list-coloring for graphs that are not tight Gallai trees.

``degree_list_color`` colors a connected graph from lists with
``|L(v)| >= d(v)`` whenever some list has slack or some block is neither a
clique nor an odd cycle.  Otherwise it returns ``None``: the hypotheses
fail, which says nothing about feasibility.
"""

from __future__ import annotations

import networkx as nx

from .errors import ContractError
from .graph import (Graph, bfs_distances, block_decomposition, block_kind, induced_subgraph,
                    is_connected)

__all__ = ["degree_list_color", "reverse_bfs_greedy", "clique_list_color"]


def _greedy_in_order(H: Graph, L, col, order):
    for u in order:
        taken = {col[w] for w in H.adj[u] if col[w] is not None}
        free = [c for c in L[u] if c not in taken]
        if not free:
            raise ContractError(f"list of vertex {H.ids[u]} exhausted during greedy extension")
        col[u] = min(free)
    return col


def _by_distance(H: Graph, sources, todo):
    # decreasing distance from the sources, ties by larger id first
    dist = bfs_distances(H, sources, allowed=set(todo) | set(sources))
    missing = [H.ids[u] for u in todo if u not in dist]
    if missing:
        raise ContractError(f"vertices {missing[:10]} are not reachable from the slack vertex")
    return sorted(todo, key=lambda u: (-dist[u], -H.ids[u]))


def reverse_bfs_greedy(H: Graph, L, v: int, precolored=None) -> list:
    """Color every uncolored vertex of ``H``, farthest from ``v`` first.

    Distances are measured among the uncolored vertices; each vertex
    takes its smallest list color not used by a colored neighbour, and
    ``v`` is colored last.

    Raises
    ------
    ContractError
        If a list runs out or an uncolored vertex cannot reach ``v``.
    """
    col = [None] * H.n if precolored is None else list(precolored)
    if col[v] is not None:
        raise ContractError(f"start vertex {H.ids[v]} is already colored")
    todo = [u for u in range(H.n) if col[u] is None]
    return _greedy_in_order(H, L, col, _by_distance(H, [v], todo))


def _check(H: Graph, L):
    if len(L) != H.n:
        raise ContractError("list assignment does not cover every vertex")
    short = [H.ids[v] for v in range(H.n) if len(L[v]) < H.degree(v)]
    if short:
        raise ContractError(f"vertices {short[:10]} have lists smaller than their degree")
    if H.n and not is_connected(H):
        raise ContractError("degree_list_color needs a connected graph")


def degree_list_color(H: Graph, L):
    """An ``L``-coloring of connected ``H`` with ``|L(v)| >= d_H(v)``, or ``None``.

    ``None`` means every list is tight and every block is a clique or an
    odd cycle; such instances may still be colorable.

    Raises
    ------
    ContractError
        If ``H`` is disconnected or some list is smaller than the degree.
    """
    _check(H, L)
    if H.n == 0:
        return []
    for v in range(H.n):
        if len(L[v]) > H.degree(v):
            return reverse_bfs_greedy(H, L, v)
    bd = block_decomposition(H)
    if len(bd.blocks) == 1:
        return _two_connected(H, L)
    bad = [sorted(b, key=H.ids.__getitem__) for b in bd.blocks if block_kind(H, b) == "other"]
    if not bad:
        return None
    core = min(bad, key=lambda b: [H.ids[x] for x in b])
    inside = set(core)
    col = [None] * H.n
    rest = [u for u in range(H.n) if u not in inside]
    _greedy_in_order(H, L, col, _by_distance(H, core, rest))
    B, mapping = induced_subgraph(H, core)
    LB = [frozenset(c for c in L[x] if all(col[w] != c for w in H.adj[x] if w not in inside))
          for x in mapping]
    sub = degree_list_color(B, LB)
    if sub is None:
        raise ContractError("bad block with pruned lists was not colorable; solver invariant broken")
    for i, x in enumerate(mapping):
        col[x] = sub[i]
    return col


def _two_connected(H: Graph, L):
    for u, v in H.edges():
        for a, b in ((u, v), (v, u)):
            extra = L[a] - L[b]
            if extra:
                col = [None] * H.n
                col[a] = min(extra)
                return reverse_bfs_greedy(H, L, b, col)
    k = H.degree(0)
    if H.m == H.n * (H.n - 1) // 2:
        return None
    colors = sorted(L[0])
    if k == 2:
        if H.n % 2:
            return None
        col = [None] * H.n
        prev, cur, i = None, 0, 0
        while col[cur] is None:
            col[cur] = colors[i % 2]
            nxt = [w for w in H.adj[cur] if w != prev and col[w] is None]
            prev, cur, i = cur, (nxt[0] if nxt else cur), i + 1
        return col
    for y in sorted(range(H.n), key=H.ids.__getitem__):
        nb = sorted(H.adj[y], key=H.ids.__getitem__)
        for i, x in enumerate(nb):
            for z in nb[i + 1:]:
                if H.has_edge(x, z):
                    continue
                rest = [w for w in range(H.n) if w not in (x, z)]
                if len(bfs_distances(H, [y], allowed=set(rest))) != len(rest):
                    continue
                col = [None] * H.n
                col[x] = col[z] = colors[0]
                return reverse_bfs_greedy(H, L, y, col)
    raise ContractError("no (y, x, z) triple in a regular 2-connected non-complete graph")


def clique_list_color(K: Graph, L):
    """Distinct representatives for the lists of a complete graph, or ``None``.

    Raises
    ------
    ContractError
        If ``K`` is not complete.
    """
    if K.m != K.n * (K.n - 1) // 2:
        raise ContractError("clique_list_color needs a complete graph")
    B = nx.Graph()
    left = [("v", v) for v in range(K.n)]
    B.add_nodes_from(left)
    for v in range(K.n):
        B.add_edges_from((("v", v), ("c", c)) for c in sorted(L[v]))
    match = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
    if any(x not in match for x in left):
        return None
    return [match[("v", v)][1] for v in range(K.n)]
