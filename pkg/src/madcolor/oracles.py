"""Centralized checkers and brute-force references.

Everything here is deliberately independent of the distributed code path:
blocks come from networkx rather than :mod:`madcolor.graph`, densities are
exact rationals computed by max-flow, and searches are exhaustive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

from .errors import CapExceededError
from .graph import Graph
from .structures import Classification, DEFAULT_C, RulingForest, log2_ceil, radius_for

__all__ = [
    "OracleCaps",
    "DEFAULT_CAPS",
    "check_proper",
    "check_list",
    "brute_chromatic",
    "brute_list_colorable",
    "mad_exact",
    "mad_bruteforce",
    "nash_williams_arboricity_bound",
    "happy_oracle",
    "nx_is_gallai_tree",
    "max_cliques_of_size",
    "check_ruling_forest",
]


@dataclass
class OracleCaps:
    chromatic: int = 40
    list_colorable: int = 25
    mad: int = 5000
    enumeration: int = 20


DEFAULT_CAPS = OracleCaps()


def check_proper(G: Graph, col) -> list:
    """Edges ``(u, v)``, ``u < v``, whose colored endpoints share a color."""
    bad = []
    for u, v in G.edges():
        cu = col[u]
        if cu is not None and cu == col[v]:
            bad.append((u, v))
    return bad


def check_list(G: Graph, col, lists) -> list:
    """Vertices colored outside their list, followed by improper edges.

    Uncolored vertices are never reported.
    """
    bad = [v for v in range(G.n) if col[v] is not None and col[v] not in lists[v]]
    return bad + check_proper(G, col)


def _require(n, cap, what):
    if n > cap:
        raise CapExceededError(f"{what}: {n} vertices exceeds cap {cap}")


def _max_clique_size(G: Graph) -> int:
    best = 1 if G.n else 0
    adj = G.adj_sets

    def grow(size, cand):
        nonlocal best
        if size > best:
            best = size
        cand = list(cand)
        while cand:
            if size + len(cand) <= best:
                return
            u = cand.pop()
            grow(size + 1, [w for w in cand if w in adj[u]])

    grow(0, range(G.n))
    return best


def _k_colorable(G: Graph, k: int) -> bool:
    n = G.n
    adj = G.adj
    deg = G.degrees
    col = [-1] * n
    cnt = [[0] * k for _ in range(n)]
    sat = [0] * n

    def pick():
        best, key = -1, None
        for v in range(n):
            if col[v] < 0:
                kv = (sat[v], deg[v], -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def place(v, c, sign):
        for w in adj[v]:
            row = cnt[w]
            if sign > 0:
                if row[c] == 0:
                    sat[w] += 1
                row[c] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    sat[w] -= 1

    def rec(done, used):
        if done == n:
            return True
        v = pick()
        # symmetry breaking: at most one fresh color per branch point
        for c in range(min(k, used + 1)):
            if cnt[v][c] == 0:
                col[v] = c
                place(v, c, +1)
                if rec(done + 1, max(used, c + 1)):
                    return True
                place(v, c, -1)
                col[v] = -1
        return False

    return rec(0, 0)


def _dsatur_upper(G: Graph) -> int:
    n = G.n
    col = [-1] * n
    for _ in range(n):
        best, key = -1, None
        for v in range(n):
            if col[v] < 0:
                s = len({col[w] for w in G.adj[v] if col[w] >= 0})
                kv = (s, G.degrees[v], -v)
                if key is None or kv > key:
                    best, key = v, kv
        taken = {col[w] for w in G.adj[best]}
        c = 0
        while c in taken:
            c += 1
        col[best] = c
    return max(col, default=-1) + 1


def brute_chromatic(G: Graph, cap: int | None = None) -> int:
    """Exact chromatic number by branch and bound.

    The clique number gives the lower bound, DSATUR the upper bound, and
    each intermediate ``k`` is decided by DSATUR-ordered backtracking.

    Raises
    ------
    CapExceededError
        If ``G`` has more vertices than ``cap`` (default 40).
    """
    _require(G.n, DEFAULT_CAPS.chromatic if cap is None else cap, "brute_chromatic")
    if G.n == 0:
        return 0
    lo = _max_clique_size(G)
    hi = _dsatur_upper(G)
    for k in range(lo, hi):
        if _k_colorable(G, k):
            return k
    return hi


def brute_list_colorable(G: Graph, lists, cap: int | None = None):
    """A full ``lists``-compliant proper coloring, or ``None`` if none exists."""
    _require(G.n, DEFAULT_CAPS.list_colorable if cap is None else cap, "brute_list_colorable")
    n = G.n
    adj = G.adj
    col = [None] * n
    options = [sorted(L) for L in lists]

    def available(v):
        taken = {col[w] for w in adj[v]}
        return [c for c in options[v] if c not in taken]

    def rec(done):
        if done == n:
            return True
        best, best_av = None, None
        for v in range(n):
            if col[v] is None:
                av = available(v)
                if best is None or len(av) < len(best_av):
                    best, best_av = v, av
                    if not av:
                        return False
        for c in best_av:
            col[best] = c
            if rec(done + 1):
                return True
        col[best] = None
        return False

    return list(col) if rec(0) else None


def _densest_closure(G: Graph, p: int, q: int):
    """Maximise ``q|E(H)| - p|V(H)|``; return (value, vertex set of H)."""
    F = nx.DiGraph()
    F.add_node("s")
    F.add_node("t")
    for u, v in G.edges():
        e = ("e", u, v)
        F.add_edge("s", e, capacity=q)
        F.add_edge(e, ("v", u))
        F.add_edge(e, ("v", v))
    for v in range(G.n):
        F.add_edge(("v", v), "t", capacity=p)
    cut, (side, _) = nx.minimum_cut(F, "s", "t")
    chosen = {x[1] for x in side if isinstance(x, tuple) and x[0] == "v"}
    return q * G.m - cut, chosen


def _edges_within(G: Graph, S) -> int:
    return sum(1 for u in S for w in G.adj[u] if w in S) // 2


def mad_exact(G: Graph, cap: int | None = None) -> Fraction:
    """Exact maximum average degree as a :class:`~fractions.Fraction`.

    Dinkelbach iteration over subgraph densities: starting from the whole
    graph, a max-closure min-cut either certifies the current density as
    maximal or returns a strictly denser subgraph.
    """
    _require(G.n, DEFAULT_CAPS.mad if cap is None else cap, "mad_exact")
    if G.m == 0:
        return Fraction(0)
    g = Fraction(G.m, G.n)
    while True:
        value, S = _densest_closure(G, g.numerator, g.denominator)
        if value <= 0 or not S:
            return 2 * g
        g2 = Fraction(_edges_within(G, S), len(S))
        if g2 <= g:
            return 2 * g
        g = g2


def mad_bruteforce(G: Graph, cap: int | None = None) -> Fraction:
    """Maximum average degree by enumerating every vertex subset."""
    _require(G.n, DEFAULT_CAPS.enumeration if cap is None else cap, "mad_bruteforce")
    best = Fraction(0)
    verts = range(G.n)
    for r in range(1, G.n + 1):
        for S in combinations(verts, r):
            s = set(S)
            best = max(best, Fraction(2 * _edges_within(G, s), r))
    return best


def _forced_closure(G: Graph, a: int, r: int) -> int:
    """max over H containing r of ``|E(H)| - a|V(H)|``."""
    F = nx.DiGraph()
    for u, v in G.edges():
        e = ("e", u, v)
        F.add_edge("s", e, capacity=1)
        F.add_edge(e, ("v", u))
        F.add_edge(e, ("v", v))
    for v in range(G.n):
        F.add_edge(("v", v), "t", capacity=a)
    F.add_edge("s", ("v", r))  # uncapacitated: r always on the source side
    cut = nx.minimum_cut_value(F, "s", "t")
    return G.m - cut


def nash_williams_arboricity_bound(G: Graph, cap: int | None = None) -> int:
    """``max ceil(|E(H)| / (|V(H)| - 1))`` over subgraphs with at least two vertices."""
    _require(G.n, DEFAULT_CAPS.mad if cap is None else cap, "nash_williams_arboricity_bound")
    if G.m == 0:
        return 0
    a = max(1, math.ceil(mad_exact(G, cap=cap) / 2))
    while True:
        if all(_forced_closure(G, a, r) <= -a for r in range(G.n) if G.degrees[r]):
            return a
        a += 1


def nx_is_gallai_tree(G: Graph, allowed=None) -> bool:
    """Gallai-tree test through networkx biconnected components."""
    verts = range(G.n) if allowed is None else allowed
    X = nx.Graph()
    X.add_nodes_from(verts)
    vs = set(verts)
    X.add_edges_from((u, w) for u in vs for w in G.adj[u] if w in vs and u < w)
    for comp in nx.connected_components(X):
        if len(comp) == 1:
            continue
        C = X.subgraph(comp)
        for block in nx.biconnected_components(C):
            B = C.subgraph(block)
            b = B.number_of_nodes()
            if B.number_of_edges() == b * (b - 1) // 2:
                continue
            if b % 2 == 1 and nx.is_connected(B) and all(d == 2 for _, d in B.degree()):
                continue
            return False
    return True


def happy_oracle(G: Graph, d: int, c: float = DEFAULT_C, radius: int | None = None,
                 alive=None) -> Classification:
    """Rich/poor/happy/sad computed straight from the definitions.

    Rich means degree at most ``d`` in the current graph; a rich vertex is
    happy when its radius-``radius`` ball inside the rich subgraph holds a
    vertex of degree at most ``d - 1`` or does not induce a Gallai tree.
    ``radius`` defaults to ``ceil(c log2 n)``.
    """
    verts = set(range(G.n)) if alive is None else set(alive)
    if radius is None:
        radius = radius_for(G.n, c)
    X = nx.Graph()
    X.add_nodes_from(verts)
    X.add_edges_from((u, w) for u in verts for w in G.adj[u] if w in verts)
    deg = dict(X.degree())
    rich = {v for v in verts if deg[v] <= d}
    XR = X.subgraph(rich)
    happy = set()
    for v in rich:
        B = nx.single_source_shortest_path_length(XR, v, cutoff=radius)
        if any(deg[u] <= d - 1 for u in B) or not nx_is_gallai_tree(G, set(B)):
            happy.add(v)
    return Classification(d, c, radius, frozenset(verts), frozenset(rich),
                          frozenset(verts - rich), frozenset(happy), frozenset(rich - happy))


def max_cliques_of_size(G: Graph, q: int) -> list:
    """Every ``q``-clique of ``G`` (as sorted index tuples), by exhaustion."""
    X = nx.Graph()
    X.add_nodes_from(range(G.n))
    X.add_edges_from(G.edges())
    out = set()
    for K in nx.enumerate_all_cliques(X):
        if len(K) == q:
            out.add(tuple(sorted(K)))
        elif len(K) > q:
            break
    return sorted(out)


def check_ruling_forest(H: Graph, U, k: int, forest: RulingForest, n: int | None = None) -> list:
    """Recheck the three ruling-forest properties with fresh BFS runs.

    Returns human-readable problem strings; an empty list means the forest
    covers ``U``, its roots are pairwise at distance at least ``k`` in ``H``
    and no tree is deeper than ``k * ceil(log2 n)``.
    """
    n = max(H.ids, default=1) if n is None else n
    beta = k * log2_ceil(n)
    problems = []
    members = set(forest.parent)
    for u in U:
        if u not in members:
            problems.append(f"vertex {u} of U is not covered")
    roots = list(forest.roots)
    for r in roots:
        if forest.parent.get(r, 0) is not None:
            problems.append(f"root {r} has a parent")
    X = nx.Graph()
    X.add_nodes_from(range(H.n))
    X.add_edges_from(H.edges())
    rootset = set(roots)
    for r in roots:
        dist = nx.single_source_shortest_path_length(X, r, cutoff=max(k - 1, 0))
        close = [s for s in dist if s in rootset and s != r]
        if close:
            problems.append(f"roots {r} and {close[0]} are closer than {k}")
    for v, p in forest.parent.items():
        if p is None:
            if v not in rootset:
                problems.append(f"vertex {v} has no parent but is not a root")
            continue
        if not H.has_edge(v, p):
            problems.append(f"parent edge ({v}, {p}) is not an edge")
        if forest.root_of[v] != forest.root_of[p]:
            problems.append(f"vertex {v} and its parent lie in different trees")
        if forest.depth[v] != forest.depth[p] + 1:
            problems.append(f"depth of {v} is not its parent's plus one")
    # tree depth recomputed by walking parent pointers
    for v in forest.parent:
        steps, x = 0, v
        while forest.parent[x] is not None:
            x = forest.parent[x]
            steps += 1
            if steps > H.n:
                problems.append(f"parent pointers from {v} cycle")
                break
        if steps > beta:
            problems.append(f"vertex {v} is {steps} > {beta} below its root")
    return problems
