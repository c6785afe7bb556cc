"""Seeded constructors for the sparse families and the witness graphs.

Every builder validates its parameters and runs cheap structural
self-checks before returning, so a wrong transcription fails loudly.
"""

from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np

from .errors import ContractError, MalformedInputError
from .graph import Graph, from_index_edges

__all__ = [
    "FAMILIES",
    "generate",
    "path",
    "cycle",
    "clique",
    "star",
    "petersen",
    "grid",
    "tri_grid",
    "hex_grid",
    "klein_grid",
    "h_graph",
    "fisk",
    "fisk_smallest",
    "forest_union",
    "random_sparse",
    "plant_clique",
    "random_lists",
    "uniform_lists",
]


def _need(cond, msg):
    if not cond:
        raise MalformedInputError(msg)


def _self_check(cond, msg):
    if not cond:
        raise ContractError(f"generator self-check failed: {msg}")


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return from_index_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return from_index_edges(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    _need(n >= 1, "clique needs n >= 1")
    return from_index_edges(n, itertools.combinations(range(n), 2))


def star(n: int) -> Graph:
    """``K_{1,n}`` with the center at index 0."""
    _need(n >= 0, "star needs n >= 0")
    return from_index_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def petersen() -> Graph:
    X = nx.petersen_graph()
    return from_index_edges(10, sorted(X.edges()))


def _lattice(w, h, diag=False):
    _need(w >= 1 and h >= 1, "grid sizes must be positive")
    idx = lambda x, y: y * w + x  # noqa: E731
    edges = []
    for y in range(h):
        for x in range(w):
            if x + 1 < w:
                edges.append((idx(x, y), idx(x + 1, y)))
            if y + 1 < h:
                edges.append((idx(x, y), idx(x, y + 1)))
            if diag and x + 1 < w and y + 1 < h:
                edges.append((idx(x, y), idx(x + 1, y + 1)))
    return from_index_edges(w * h, edges)


def grid(w: int, h: int) -> Graph:
    """``w x h`` rectangular grid; planar and bipartite."""
    return _lattice(w, h)


def tri_grid(w: int, h: int) -> Graph:
    """Grid plus the diagonal ``(x, y)-(x+1, y+1)`` in every square; planar."""
    return _lattice(w, h, diag=True)


def hex_grid(w: int, h: int) -> Graph:
    """Brick-wall patch of the hexagonal lattice; planar with girth 6.

    Rows are paths and ``(x, y)-(x, y+1)`` is an edge when ``x + y`` is even.
    """
    _need(w >= 1 and h >= 1, "grid sizes must be positive")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h and (x + y) % 2 == 0:
                edges.append((v, v + w))
    return from_index_edges(w * h, edges)


def klein_grid(k: int, l: int) -> Graph:
    """``k x l`` grid on the Klein bottle.

    Vertex ``(i, j)`` sits on vertical cycle ``j`` of length ``k``; rows
    continue to ``(i, j+1)`` and the last column wraps with a twist,
    ``(i, l-1) - (k-1-i, 0)``.
    """
    _need(k >= 3 and l >= 3, "klein_grid needs k, l >= 3")
    idx = lambda i, j: j * k + i  # noqa: E731
    edges = []
    for j in range(l):
        for i in range(k):
            edges.append((idx(i, j), idx((i + 1) % k, j)))
            if j + 1 < l:
                edges.append((idx(i, j), idx(i, j + 1)))
            else:
                edges.append((idx(i, j), idx(k - 1 - i, 0)))
    G = from_index_edges(k * l, edges)
    _self_check(all(x == 4 for x in G.degrees), "klein_grid is not 4-regular")
    return G


def _triangle_free(G: Graph) -> bool:
    sets = G.adj_sets
    return not any(sets[u] & sets[v] for u, v in G.edges())


def h_graph(l: int) -> Graph:
    """Planar triangle-free ``H_{2l}``: ``2l`` nested 5-cycles joined radially."""
    _need(l >= 1, "h_graph needs l >= 1")
    layers = 2 * l
    edges = []
    for j in range(layers):
        for i in range(5):
            edges.append((5 * j + i, 5 * j + (i + 1) % 5))
            if j + 1 < layers:
                edges.append((5 * j + i, 5 * (j + 1) + i))
    G = from_index_edges(5 * layers, edges)
    _self_check(_triangle_free(G), "h_graph has a triangle")
    return G


def _hnf(b1, b2):
    # basis (g, y0), (0, c) of the lattice spanned by b1, b2
    (a1, c1), (a2, c2) = b1, b2
    det = abs(a1 * c2 - a2 * c1)
    g, s, t = _egcd(a1, a2)
    y0 = s * c1 + t * c2
    return g, y0 % (det // g), det // g


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _egcd(b, a % b)
    return g, t, s - (a // b) * t


def fisk(m: int) -> Graph:
    """Toroidal triangulation on ``3m + 1`` vertices with two adjacent odd vertices.

    The triangular lattice (steps ``(1,0)``, ``(0,1)``, ``(1,1)``) modulo
    the lattice spanned by ``(2,3)`` and ``(m mod 2, 3 ceil(m/2))`` is a
    6-regular triangulation of the torus on ``3m`` vertices; subdividing
    the edge ``(0,0)-(1,0)`` and joining the new vertex to both apexes
    makes exactly the two apexes odd, and they are adjacent.
    """
    _need(m >= 1, "fisk needs m >= 1")
    t = (m + 1) // 2
    g, y0, c = _hnf((2, 3), (m % 2, 3 * t))

    def canon(p):
        x, y = p
        q, r = divmod(x, g)
        return r, (y - q * y0) % c

    points = sorted({canon((x, y)) for x in range(g) for y in range(c)})
    index = {p: i for i, p in enumerate(points)}
    steps = ((1, 0), (0, 1), (1, 1))
    edges = set()
    for p in points:
        for dx, dy in steps:
            q = canon((p[0] + dx, p[1] + dy))
            _need(q != p, f"fisk({m}) lattice has loops; use a larger m")
            edges.add(tuple(sorted((index[p], index[q]))))
    base = from_index_edges(len(points), sorted(edges))
    _need(base.n == 3 * m and all(x == 6 for x in base.degrees),
          f"fisk({m}) lattice quotient is not a simple 6-regular triangulation; use a larger m")
    u, v = index[canon((0, 0))], index[canon((1, 0))]
    a, b = index[canon((1, 1))], index[canon((0, -1))]
    w = base.n
    edges.discard(tuple(sorted((u, v))))
    edges.update([(u, w), (v, w), (a, w), (b, w)])
    G = from_index_edges(w + 1, sorted(edges))
    odd = [x for x in range(G.n) if G.degree(x) % 2]
    _self_check(len(odd) == 2 and G.has_edge(*odd), "fisk odd vertices are not an adjacent pair")
    _self_check(G.m == 3 * G.n, "fisk edge count differs from 3n")
    return G


def fisk_smallest() -> tuple[int, Graph]:
    """Smallest ``m`` for which :func:`fisk` builds a simple graph."""
    for m in range(1, 50):
        try:
            return m, fisk(m)
        except MalformedInputError:
            continue
    raise ContractError("no simple fisk graph for m < 50")


def forest_union(a: int, n: int, seed: int = 0) -> Graph:
    """Union of ``a`` uniformly random spanning trees (duplicate edges dropped)."""
    _need(a >= 1 and n >= 1, "forest_union needs a >= 1 and n >= 1")
    rng = np.random.default_rng(seed)
    edges = set()
    if n >= 2:
        for _ in range(a):
            if n == 2:
                tree_edges = [(0, 1)]
            else:
                seq = rng.integers(0, n, size=n - 2).tolist()
                tree_edges = nx.from_prufer_sequence(seq).edges()
            edges.update(tuple(sorted(e)) for e in tree_edges)
    G = from_index_edges(n, sorted(edges))
    if n <= 60:
        from .oracles import nash_williams_arboricity_bound
        _self_check(nash_williams_arboricity_bound(G) <= a, "forest_union arboricity exceeds a")
    return G


RANDOM_SPARSE_EXACT_LIMIT = 100
RANDOM_SPARSE_ATTEMPTS = 1000


def random_sparse(n: int, d: int, seed: int = 0) -> Graph:
    """Random graph with maximum average degree at most ``d``.

    Up to ``RANDOM_SPARSE_EXACT_LIMIT`` vertices: ``G(n, p)`` with expected
    average degree ``d/2``, rejected until the exact mad is at most ``d``.
    Beyond that: a union of ``floor(d/2)`` random spanning trees.
    """
    _need(n >= 1 and d >= 2, "random_sparse needs n >= 1 and d >= 2")
    if n > RANDOM_SPARSE_EXACT_LIMIT:
        return forest_union(d // 2, n, seed)
    from .oracles import mad_exact
    rng = np.random.default_rng(seed)
    p = min(1.0, d / (2 * max(n - 1, 1)))
    for _ in range(RANDOM_SPARSE_ATTEMPTS):
        coins = rng.random(n * (n - 1) // 2)
        pairs = itertools.combinations(range(n), 2)
        G = from_index_edges(n, [e for e, x in zip(pairs, coins) if x < p])
        if mad_exact(G) <= d:
            return G
    raise ContractError(f"random_sparse rejected {RANDOM_SPARSE_ATTEMPTS} samples")


def plant_clique(G: Graph, q: int, seed: int = 0) -> Graph:
    """``G`` plus all edges among ``q`` seeded random vertices."""
    _need(1 <= q <= G.n, "clique size must be between 1 and n")
    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(G.n, size=q, replace=False).tolist())
    edges = set(G.edges()) | set(itertools.combinations(chosen, 2))
    return from_index_edges(G.n, sorted(edges), G.ids)


def random_lists(G: Graph, d: int, seed: int = 0, universe: int | None = None, sizes=None) -> list:
    """``d`` colors per vertex, drawn without replacement from ``1..3d``.

    The generator of vertex ``v`` is seeded with ``(seed, id(v))`` so
    lists do not depend on iteration order.  ``sizes`` overrides the
    per-vertex list size.
    """
    universe = 3 * d if universe is None else universe
    sizes = [d] * G.n if sizes is None else sizes
    _need(all(0 <= k <= universe for k in sizes) and universe >= 1,
          "list size must be between 0 and the universe size")
    out = []
    for v in range(G.n):
        rng = np.random.default_rng([seed, G.ids[v]])
        out.append(frozenset(int(c) + 1 for c in rng.choice(universe, size=sizes[v], replace=False)))
    return out


def uniform_lists(n: int, k: int) -> list:
    return [frozenset(range(1, k + 1))] * n


FAMILIES = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "clique": (clique, ("n",)),
    "star": (star, ("n",)),
    "petersen": (petersen, ()),
    "grid": (grid, ("w", "h")),
    "tri_grid": (tri_grid, ("w", "h")),
    "hex_grid": (hex_grid, ("w", "h")),
    "klein_grid": (klein_grid, ("k", "l")),
    "h_graph": (h_graph, ("l",)),
    "fisk": (fisk, ("m",)),
    "forest_union": (forest_union, ("a", "n")),
    "random_sparse": (random_sparse, ("n", "d")),
}


def generate(family: str, params=None, seed: int = 0) -> Graph:
    """Build ``family`` from a dict or sequence of integer parameters.

    Seeded families (``forest_union``, ``random_sparse``) use ``seed``;
    the others ignore it.
    """
    if family not in FAMILIES:
        raise MalformedInputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fn, names = FAMILIES[family]
    params = {} if params is None else params
    if not isinstance(params, dict):
        params = dict(zip(names, params))
    extra = set(params) - set(names)
    missing = [x for x in names if x not in params]
    if extra or missing:
        raise MalformedInputError(f"{family} takes parameters {names}")
    args = [int(params[x]) for x in names]
    if family in ("forest_union", "random_sparse"):
        return fn(*args, seed=seed)
    return fn(*args)


def heawood_number(g: int) -> int:
    return (7 + math.isqrt(24 * g + 1)) // 2
