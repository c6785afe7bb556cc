"""Immutable simple graphs, balls, blocks and Gallai-tree recognition.

Vertices are addressed by 0-based indices ``0..n-1``.  Every graph also
carries ``ids``, the external identifier of each index; graphs built from
edge lists get ids ``1..n`` and induced subgraphs keep the ids of their
host, so provenance survives any number of restrictions.  Identifiers are
what LOCAL nodes see and what every tie-break compares.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import MalformedInputError

__all__ = [
    "Graph",
    "BlockDecomposition",
    "build_graph",
    "from_index_edges",
    "induced_subgraph",
    "ball",
    "ball_within",
    "bfs_distances",
    "connected_components",
    "is_connected",
    "block_decomposition",
    "is_gallai_tree",
    "block_kind",
    "clique_at",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with sorted adjacency tuples.

    Do not construct directly; use :func:`build_graph` (1-based edge pairs)
    or :func:`from_index_edges` (0-based pairs).
    """

    n: int
    adj: tuple
    ids: tuple = field(default=None)

    def __post_init__(self):
        if self.ids is None:
            object.__setattr__(self, "ids", tuple(range(1, self.n + 1)))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adj_sets(self) -> tuple:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def index_of(self) -> dict:
        """Map external id -> index."""
        return {x: i for i, x in enumerate(self.ids)}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def edges(self):
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def vertices(self) -> range:
        return range(self.n)

    def labels(self, vertices: Iterable[int]) -> list:
        """External ids of ``vertices``, sorted."""
        return sorted(self.ids[v] for v in vertices)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.ids == other.ids

    def __hash__(self):
        return hash((self.n, self.adj, self.ids))


def from_index_edges(n: int, edges: Iterable[Sequence[int]], ids: Sequence[int] | None = None) -> Graph:
    """Build a graph from 0-based endpoint pairs; duplicates are merged."""
    if n < 0:
        raise MalformedInputError(f"vertex count must be non-negative, got {n}")
    nbrs = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise MalformedInputError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    if ids is not None:
        ids = tuple(ids)
        if len(ids) != n or len(set(ids)) != n:
            raise MalformedInputError("ids must be n distinct values")
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), ids)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on vertices ``1..n`` from 1-based endpoint pairs.

    Raises
    ------
    MalformedInputError
        If an endpoint lies outside ``1..n`` or an edge is a self-loop.
    """
    shifted = []
    for e in edges:
        u, v = e
        if not (1 <= u <= n and 1 <= v <= n):
            raise MalformedInputError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
        shifted.append((u - 1, v - 1))
    return from_index_edges(n, shifted)


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple]:
    """Return ``(H, mapping)`` with ``H = G[S]``.

    ``mapping[i]`` is the index in ``G`` of vertex ``i`` of ``H``; vertices
    keep their relative order and their external ids.
    """
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.n:
            raise MalformedInputError(f"vertex {v} is not in the graph")
    pos = {v: i for i, v in enumerate(verts)}
    adj = tuple(tuple(pos[u] for u in G.adj[v] if u in pos) for v in verts)
    return Graph(len(verts), adj, tuple(G.ids[v] for v in verts)), tuple(verts)


def bfs_distances(G: Graph, sources: Iterable[int], limit: int | None = None,
                  allowed=None) -> dict:
    """Multi-source BFS distances, optionally truncated and restricted.

    ``allowed`` is a container of vertices the search may enter; sources
    outside it are ignored.
    """
    dist = {}
    queue = deque()
    for s in sources:
        if (allowed is None or s in allowed) and s not in dist:
            dist[s] = 0
            queue.append(s)
    adj = G.adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = du + 1
                queue.append(w)
    return dist


def ball(G: Graph, v: int, r: int) -> frozenset:
    """Vertices at distance at most ``r`` from ``v``."""
    return frozenset(bfs_distances(G, [v], r))


def ball_within(G: Graph, R, v: int, r: int) -> frozenset:
    """Ball of radius ``r`` around ``v`` in ``G[R]``; empty when ``v`` is not in ``R``."""
    if v not in R:
        return frozenset()
    return frozenset(bfs_distances(G, [v], r, allowed=R))


def connected_components(G: Graph, allowed=None) -> list:
    """Components (sorted vertex lists) of ``G`` or of ``G[allowed]``."""
    seen = set()
    comps = []
    verts = range(G.n) if allowed is None else sorted(allowed)
    for s in verts:
        if s in seen:
            continue
        comp = sorted(bfs_distances(G, [s], allowed=allowed))
        seen.update(comp)
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(bfs_distances(G, [0])) == G.n


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks, cut vertices and the block-cut tree of a graph.

    ``tree_edges`` holds ``(block_index, cut_vertex)`` pairs; the block-cut
    tree is the bipartite graph on blocks and cut vertices they define.
    """

    blocks: tuple
    cut_vertices: frozenset
    tree_edges: tuple

    def blocks_of(self, v: int) -> list:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_decomposition(G: Graph, allowed=None) -> BlockDecomposition:
    """Blocks via iterative Hopcroft-Tarjan lowpoint search, linear time.

    Bridges are two-vertex blocks and isolated vertices are one-vertex
    blocks.  With ``allowed`` the decomposition is that of ``G[allowed]``.
    """
    adj = G.adj
    verts = range(G.n) if allowed is None else sorted(allowed)
    disc = {}
    low = {}
    blocks = []
    cuts = set()
    counter = 0
    for root in verts:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not any(allowed is None or w in allowed for w in adj[root]):
            blocks.append(frozenset([root]))
            continue
        root_children = 0
        edge_stack = []
        # frames: (vertex, parent, neighbor iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack[-1]
            nbrs = adj[u]
            if i < len(nbrs):
                stack[-1] = (u, parent, i + 1)
                w = nbrs[i]
                if allowed is not None and w not in allowed:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, 0))
                    if u == root:
                        root_children += 1
                elif w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            else:
                stack.pop()
                if not stack:
                    break
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if low[u] >= disc[p]:
                    # p separates the subtree of u: pop one block
                    comp = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.add(a)
                        comp.add(b)
                        if (a, b) == (p, u):
                            break
                    blocks.append(frozenset(comp))
                    if p != root:
                        cuts.add(p)
        if root_children > 1:
            cuts.add(root)
    tree_edges = tuple((i, c) for i, b in enumerate(blocks) for c in sorted(b & cuts))
    return BlockDecomposition(tuple(blocks), frozenset(cuts), tree_edges)


def block_kind(G: Graph, block) -> str:
    """Classify a block as ``"clique"``, ``"odd_cycle"`` or ``"other"``.

    A block on ``b`` vertices is a clique iff it spans ``b(b-1)/2`` edges and
    an odd cycle iff ``b`` is odd, ``b >= 3`` and every vertex has exactly two
    neighbours inside it.
    """
    b = len(block)
    inner = [sum(1 for w in G.adj[v] if w in block) for v in block]
    e = sum(inner) // 2
    if e == b * (b - 1) // 2:
        return "clique"
    if b >= 3 and b % 2 == 1 and all(x == 2 for x in inner):
        return "odd_cycle"
    return "other"


def is_gallai_tree(G: Graph, allowed=None) -> bool:
    """True iff every block of ``G`` (or ``G[allowed]``) is a clique or an odd cycle.

    Disconnected inputs count as Gallai trees exactly when every component
    is one; the empty graph is one vacuously.
    """
    if allowed is not None:
        allowed = allowed if isinstance(allowed, (set, frozenset)) else set(allowed)
    dec = block_decomposition(G, allowed)
    return all(block_kind(G, b) != "other" for b in dec.blocks)


def clique_at(G: Graph, v: int, q: int) -> frozenset | None:
    """A ``q``-clique containing ``v`` inside its closed neighbourhood.

    Among all such cliques the one whose sorted id sequence is
    lexicographically smallest is returned; ``None`` if there is none.
    """
    if q < 1:
        raise MalformedInputError("clique size must be at least 1")
    if q == 1:
        return frozenset([v])
    ids = G.ids
    cand = sorted(G.adj[v], key=ids.__getitem__)
    adj_sets = G.adj_sets
    found = _first_clique(cand, q - 1, adj_sets, ids)
    return None if found is None else frozenset(found) | {v}


def _first_clique(cand, size, adj_sets, ids):
    # candidates are id-sorted, so the first hit is lexicographically smallest
    if size == 0:
        return []
    for i, u in enumerate(cand):
        if len(cand) - i < size:
            return None
        rest = [w for w in cand[i + 1:] if w in adj_sets[u]]
        sub = _first_clique(rest, size - 1, adj_sets, ids)
        if sub is not None:
            return [u] + sub
    return None
