"""Distributed building blocks: clique detection, (d+1)-coloring, ruling forests.

Each primitive exists as a :class:`~madcolor.local.NodeProgram` for the
message-passing engine and as a centralized fast path that reproduces the
same output and the same round count.  ``engine="auto"`` takes the fast
path once a message simulation would exceed ``AUTO_BUDGET`` vertex-steps.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import ContractError
from .graph import Graph, bfs_distances, connected_components
from .local import Halt, NodeProgram, RoundTranscript, run_program, to_all
from .structures import RulingForest, log2_ceil

__all__ = [
    "AUTO_BUDGET",
    "find_clique",
    "FindClique",
    "plus_one_coloring",
    "PlusOneColoring",
    "linial_schedule",
    "ruling_forest",
    "ruling_forest_rounds",
    "RulingForestProgram",
]

AUTO_BUDGET = 200_000


def _pick(engine, work):
    if engine not in ("auto", "message", "fast"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        return "message" if work <= AUTO_BUDGET else "fast"
    return engine


def _record(transcript, label, rounds):
    if transcript is not None:
        transcript.record(label, rounds)


# ----------------------------------------------------------------------------
# clique detection


def _first_clique(ids, adj, size):
    # ids sorted ascending, so the first hit is the lexicographically smallest
    if size == 0:
        return []
    for i, u in enumerate(ids):
        if len(ids) - i < size:
            return None
        rest = [w for w in ids[i + 1:] if w in adj[u]]
        sub = _first_clique(rest, adj, size - 1)
        if sub is not None:
            return [u] + sub
    return None


class FindClique(NodeProgram):
    """Round 1: learn neighbour ids.  Round 2: learn their neighbour lists."""

    def init(self, uid, n, params, degree, local_input):
        return {"uid": uid, "deg": degree, "q": params["q"], "step": 0, "nbrs": ()}

    def on_round(self, state, inbox):
        step = state["step"]
        state["step"] = step + 1
        if step == 0:
            return state, to_all(state["deg"], state["uid"]), None
        if step == 1:
            state["nbrs"] = tuple(sorted(inbox.values()))
            return state, to_all(state["deg"], (state["uid"], state["nbrs"])), None
        q = state["q"]
        if state["deg"] < q - 1:
            return state, None, Halt(None)
        adj = {x: set(row) for x, row in inbox.values()}
        found = _first_clique(sorted(adj), adj, q - 1)
        return state, None, Halt(None if found is None else tuple(sorted(found + [state["uid"]])))


def find_clique(G: Graph, d: int, transcript: RoundTranscript | None = None):
    """Distributed search for a ``(d+1)``-clique; two rounds.

    Every vertex reports the lexicographically smallest clique through it
    that it sees in its closed neighbourhood; the smallest report wins.
    Returns a frozenset of vertex indices or ``None``.
    """
    if d < 1:
        raise ContractError("clique search needs d >= 1")
    outputs, t = run_program(G, FindClique(), {"q": d + 1}, label="clique")
    if transcript is not None:
        transcript.absorb(t)
    found = [o for o in outputs if o is not None]
    if not found:
        return None
    best = min(found)
    return frozenset(G.index_of[x] for x in best)


# ----------------------------------------------------------------------------
# (d+1)-coloring


def _is_prime(q):
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _next_prime(q):
    while not _is_prime(q):
        q += 1
    return q


def _iroot_ceil(m, e):
    x = max(1, round(m ** (1 / e)))
    while x ** e < m:
        x += 1
    while x > 1 and (x - 1) ** e >= m:
        x -= 1
    return x


def linial_schedule(m: int, d: int):
    """Polynomial color-reduction steps from ``m`` colors for max degree ``d``.

    Returns ``(steps, palette)``: each step is a pair ``(q, k)`` mapping a
    color to ``(x, p(x))`` over GF(q) with ``p`` of degree ``k``; the
    schedule stops once a step no longer shrinks the palette.
    """
    steps = []
    while True:
        best = None
        k = 1
        while best is None or d * k + 1 <= best[0]:
            q = _next_prime(max(d * k + 1, _iroot_ceil(m, k + 1), 2))
            if best is None or q < best[0]:
                best = (q, k)
            k += 1
        q, k = best
        if q * q >= m:
            return steps, m
        steps.append((q, k))
        m = q * q


def _poly_eval(color, q, k, x):
    acc = 0
    for i in range(k, -1, -1):
        digit = (color // q ** i) % q
        acc = (acc * x + digit) % q
    return acc


def _linial_pick(color, others, q, k):
    for x in range(q):
        y = _poly_eval(color, q, k, x)
        if all(_poly_eval(c, q, k, x) != y for c in others):
            return x * q + y
    raise ContractError("polynomial color reduction found no free point; degree bound violated")


def _free_small(taken, d):
    for c in range(d + 1):
        if c not in taken:
            return c
    raise ContractError("no free color among d+1; degree bound violated")


class PlusOneColoring(NodeProgram):
    """Linial-style reduction to O(d^2) colors, then one class per round."""

    def init(self, uid, n, params, degree, local_input):
        return {"deg": degree, "color": uid - 1, "step": 0, "d": params["d"],
                "steps": params["steps"], "palette": params["palette"]}

    def on_round(self, state, inbox):
        s = state["step"]
        state["step"] = s + 1
        steps, d, palette = state["steps"], state["d"], state["palette"]
        n_linial = len(steps)
        total = n_linial + max(0, palette - (d + 1))
        others = list(inbox.values())
        if 1 <= s <= n_linial:
            q, k = steps[s - 1]
            state["color"] = _linial_pick(state["color"], others, q, k)
        elif s > n_linial:
            target = palette - (s - n_linial)
            if state["color"] == target:
                state["color"] = _free_small(set(others), d)
        if s == total:
            return state, None, Halt(state["color"] + 1)
        return state, to_all(state["deg"], state["color"]), None


def plus_one_coloring(H: Graph, d: int, n: int | None = None, engine: str = "auto",
                      transcript: RoundTranscript | None = None) -> list:
    """Proper coloring of ``H`` with colors ``1..d+1``.

    ``n`` is the size of the id space (defaults to the largest id of
    ``H``); it fixes the starting palette and hence the round count.

    Raises
    ------
    ContractError
        If some vertex of ``H`` has degree above ``d``.
    """
    if H.max_degree() > d:
        raise ContractError(f"plus_one_coloring needs max degree <= {d}, got {H.max_degree()}")
    n_ids = max(H.ids, default=0) if n is None else n
    steps, palette = linial_schedule(max(n_ids, 1), d)
    rounds = len(steps) + max(0, palette - (d + 1))
    if H.n == 0:
        _record(transcript, "plus_one", rounds)
        return []
    if _pick(engine, H.n * (rounds + 1)) == "message":
        params = {"d": d, "steps": steps, "palette": palette}
        outputs, t = run_program(H, PlusOneColoring(), params, n=n_ids, label="plus_one")
        if transcript is not None:
            transcript.absorb(t)
        return outputs
    colors = [x - 1 for x in H.ids]
    adj = H.adj
    for q, k in steps:
        colors = [_linial_pick(colors[v], [colors[u] for u in adj[v]], q, k) for v in range(H.n)]
    by_class = defaultdict(list)
    for v, c in enumerate(colors):
        if c > d:
            by_class[c].append(v)
    for c in sorted(by_class, reverse=True):
        for v in by_class[c]:
            colors[v] = _free_small({colors[u] for u in adj[v]}, d)
    _record(transcript, "plus_one", rounds)
    return [c + 1 for c in colors]


# ----------------------------------------------------------------------------
# ruling forests


def ruling_forest_rounds(k: int, n: int) -> int:
    """Round count of the ruling-forest program for distance ``k`` and id space ``n``."""
    bits = log2_ceil(n)
    return bits * max(k - 1, 0) + 2 * k * bits


class RulingForestProgram(NodeProgram):
    """Id-bit ruler elimination, truncated multi-source BFS, then pruning.

    Level ``j`` (``k - 1`` rounds): surviving rulers whose id bit ``j`` is 0
    flood their id prefix; a ruler with bit 1 that hears its own prefix
    steps down.  Then ``beta`` rounds of BFS from the final rulers build
    the trees (ties: smaller root id, then smaller parent id) and ``beta``
    more rounds keep only vertices that are, or lead to, a vertex of ``U``.
    """

    def init(self, uid, n, params, degree, local_input):
        return {"uid": uid, "x": uid - 1, "deg": degree, "step": 0, "ruler": bool(local_input),
                "in_u": bool(local_input), "seen": set(), "drop": False, "root": None,
                "parent": None, "parent_port": None, "depth": None, "kept": False,
                "k": params["k"], "bits": params["bits"], "beta": params["beta"]}

    def on_round(self, st, inbox):
        s = st["step"]
        st["step"] = s + 1
        L = st["k"] - 1
        bits, beta = st["bits"], st["beta"]
        T0 = bits * max(L, 0)
        T1 = T0 + beta
        T2 = T1 + beta
        out = {}
        if L > 0 and 1 <= s <= T0:
            j = (s - 1) // L
            h = s - j * L
            new = set()
            for msg in inbox.values():
                new |= msg[1] - st["seen"]
            st["seen"] |= new
            if st["ruler"] and (st["x"] >> j) & 1 and (st["x"] >> (j + 1)) in new:
                st["drop"] = True
            if h < L and new:
                out = to_all(st["deg"], ("tok", frozenset(new)))
            if h == L:
                if st["drop"]:
                    st["ruler"] = False
                st["drop"] = False
                st["seen"] = set()
        if L > 0 and s < T0 and s % L == 0:
            j = s // L
            if st["ruler"] and not (st["x"] >> j) & 1:
                prefix = st["x"] >> (j + 1)
                st["seen"].add(prefix)
                out = to_all(st["deg"], ("tok", frozenset([prefix])))
        if s == T0 and st["ruler"]:
            st["root"], st["depth"] = st["uid"], 0
            if beta > 0:
                out = to_all(st["deg"], ("tree", st["uid"], st["uid"]))
        if T0 < s <= T1 and st["root"] is None:
            offers = [(m[1], m[2], p) for p, m in inbox.items() if m[0] == "tree"]
            if offers:
                root, parent, port = min(offers)
                st["root"], st["parent"], st["parent_port"] = root, parent, port
                st["depth"] = s - T0
                if s < T1:
                    out = to_all(st["deg"], ("tree", root, st["uid"]))
        if s == T1 and st["root"] is not None and st["in_u"]:
            st["kept"] = True
            if st["parent_port"] is not None and s < T2:
                out = {st["parent_port"]: ("keep",)}
        if T1 < s <= T2 and not st["kept"] and any(m[0] == "keep" for m in inbox.values()):
            st["kept"] = True
            if st["parent_port"] is not None and s < T2:
                out = {st["parent_port"]: ("keep",)}
        if s == T2:
            result = (st["root"], st["parent"], st["depth"]) if st["kept"] else None
            return st, None, Halt(result)
        return st, out, None


def _fast_rulers(H: Graph, U, k: int, bits: int):
    rulers = set(U)
    if k <= 1:
        return rulers
    comp = {}
    small = {}
    for ci, c in enumerate(connected_components(H)):
        for v in c:
            comp[v] = ci
        ecc = max(bfs_distances(H, [c[0]]).values())
        small[ci] = 2 * ecc <= k - 1
    x = {v: H.ids[v] - 1 for v in range(H.n)}
    for j in range(bits):
        groups = defaultdict(lambda: ([], []))
        for r in rulers:
            groups[x[r] >> (j + 1)][(x[r] >> j) & 1].append(r)
        removed = set()
        for zeros, ones in groups.values():
            if not zeros or not ones:
                continue
            if all(small[comp[v]] for v in zeros + ones):
                zc = {comp[z] for z in zeros}
                removed.update(o for o in ones if comp[o] in zc)
            else:
                reach = bfs_distances(H, zeros, limit=k - 1)
                removed.update(o for o in ones if o in reach)
        rulers -= removed
    return rulers


def _fast_trees(H: Graph, roots, U, beta: int):
    ids = H.ids
    root_of = {r: r for r in roots}
    parent = {r: None for r in roots}
    depth = {r: 0 for r in roots}
    frontier = sorted(roots)
    for h in range(1, beta + 1):
        if not frontier:
            break
        offers = {}
        for u in frontier:
            key = (ids[root_of[u]], ids[u])
            for w in H.adj[u]:
                if w not in root_of and (w not in offers or key < offers[w][0]):
                    offers[w] = (key, u)
        for w, (_, u) in offers.items():
            root_of[w] = root_of[u]
            parent[w] = u
            depth[w] = h
        frontier = list(offers)
    kept = set()
    for v in U:
        x = v
        while x not in kept:
            kept.add(x)
            if parent[x] is None:
                break
            x = parent[x]
    return ({v: parent[v] for v in kept}, {v: depth[v] for v in kept},
            {v: root_of[v] for v in kept})


def ruling_forest(H: Graph, U, k: int, n: int | None = None, engine: str = "auto",
                  transcript: RoundTranscript | None = None) -> RulingForest:
    """A ``(k, k * ceil(log2 n))``-ruling forest of ``H`` with respect to ``U``.

    Roots lie in ``U`` and are pairwise at distance at least ``k`` in
    ``H``; every vertex of ``U`` is in a tree of depth at most
    ``k * ceil(log2 n)``.  ``n`` is the id-space size (default: largest id).
    """
    if k < 1:
        raise ContractError("ruling forest distance k must be >= 1")
    U = set(U)
    n_ids = max(H.ids, default=1) if n is None else n
    bits = log2_ceil(n_ids)
    beta = k * bits
    rounds = ruling_forest_rounds(k, n_ids)
    if not U:
        _record(transcript, "ruling_forest", rounds)
        return RulingForest((), {}, {}, {}, rounds, k, beta)
    if _pick(engine, H.n * (rounds + 1)) == "message":
        flags = [v in U for v in range(H.n)]
        outputs, t = run_program(H, RulingForestProgram(), {"k": k, "bits": bits, "beta": beta},
                                 flags, n=n_ids, label="ruling_forest")
        if transcript is not None:
            transcript.absorb(t)
        idx = H.index_of
        parent, depth, root_of = {}, {}, {}
        for v, o in enumerate(outputs):
            if o is None:
                continue
            root, par, dep = o
            root_of[v] = idx[root]
            parent[v] = None if dep == 0 else idx[par]
            depth[v] = dep
        roots = tuple(sorted((v for v, p in parent.items() if p is None), key=H.ids.__getitem__))
        return RulingForest(roots, parent, depth, root_of, t.rounds_executed, k, beta)
    rulers = _fast_rulers(H, U, k, bits)
    parent, depth, root_of = _fast_trees(H, rulers, U, beta)
    missing = U - set(parent)
    if missing:
        raise ContractError(f"ruling forest failed to cover {sorted(missing)[:10]}")
    _record(transcript, "ruling_forest", rounds)
    roots = tuple(sorted(rulers, key=H.ids.__getitem__))
    return RulingForest(roots, parent, depth, root_of, rounds, k, beta)
