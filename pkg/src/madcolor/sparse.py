"""Distributed list-coloring of sparse graphs by peeling happy vertices.

Each iteration classifies the vertices of the current graph ``G_i``:
rich vertices have degree at most ``d`` (or at most their list size),
and a rich vertex is happy when its ball of radius ``ceil(c log2 n)`` in
the rich subgraph holds a vertex with slack or is not a Gallai tree.
Happy vertices are removed; once nothing is left the removed layers are
colored back in reverse order with :func:`extend_to_happy`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import (BoundViolationError, ContractError, NotNiceError, ProgressStallError)
from .gallai import clique_list_color, degree_list_color
from .graph import (Graph, bfs_distances, ball_within, connected_components, from_index_edges,
                    induced_subgraph, is_gallai_tree)
from .local import GatherBall, RoundTranscript, run_program
from .oracles import check_list
from .structures import DEFAULT_C, Classification, PeelingTrace, radius_for
from .subroutines import _pick, find_clique, plus_one_coloring, ruling_forest

__all__ = [
    "ColoringResult",
    "PRESETS",
    "preset_d",
    "iteration_bound",
    "classify",
    "extend_to_happy",
    "color_sparse",
    "color_nice",
    "brooks_list",
    "is_nice",
]

PRESETS = ("planar", "planar-triangle-free", "planar-girth6", "arboricity:a", "genus:g")


def preset_d(name: str) -> int:
    """Degree bound ``d`` for a named sparse class.

    ``planar`` 6, ``planar-triangle-free`` 4, ``planar-girth6`` 3,
    ``arboricity:a`` ``2a`` and ``genus:g`` the Heawood number
    ``floor((7 + sqrt(24g + 1)) / 2)`` for ``g >= 1``.
    """
    fixed = {"planar": 6, "planar-triangle-free": 4, "planar-girth6": 3}
    if name in fixed:
        return fixed[name]
    kind, _, arg = name.partition(":")
    try:
        value = int(arg)
    except ValueError:
        raise ContractError(f"unknown preset {name!r}") from None
    if kind == "arboricity" and value >= 1:
        return 2 * value
    if kind == "genus" and value >= 1:
        return (7 + math.isqrt(24 * value + 1)) // 2
    raise ContractError(f"unknown or out-of-range preset {name!r}")


def iteration_bound(n: int, d: int) -> float:
    """``log2 n / log2(1 / (1 - 1/(27 d^3)))``."""
    return math.log2(max(n, 1)) / -math.log2(1 - 1 / (27 * d ** 3))


@dataclass
class ColoringResult:
    """Outcome of a coloring run.

    ``outcome`` is ``"coloring"``, ``"clique"`` or ``"infeasible"``; the
    matching payload is ``coloring``, ``clique`` or ``infeasible_component``.
    """

    outcome: str
    coloring: list | None = None
    clique: frozenset | None = None
    infeasible_component: frozenset | None = None
    trace: PeelingTrace = field(default_factory=PeelingTrace)
    transcript: RoundTranscript = field(default_factory=RoundTranscript)
    d: int | None = None
    c: float = DEFAULT_C
    radius: int = 0
    warnings: list = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return self.transcript.rounds_executed


# ----------------------------------------------------------------------------
# classification


def _caps(G: Graph, d, L):
    if d is not None:
        return [d] * G.n
    return [len(x) for x in L]


def _happy_in_ball(G: Graph, ball, deg, cap) -> bool:
    if any(deg[u] <= cap[u] - 1 for u in ball):
        return True
    return not is_gallai_tree(G, ball)


def _classify_fast(G: Graph, alive, deg, cap, radius):
    rich = {v for v in alive if deg[v] <= cap[v]}
    happy = set()
    for comp in connected_components(G, allowed=rich):
        cset = set(comp)
        ecc = max(bfs_distances(G, [comp[0]], allowed=cset).values())
        if 2 * ecc <= radius:
            if _happy_in_ball(G, cset, deg, cap):
                happy |= cset
            continue
        slack = [u for u in comp if deg[u] <= cap[u] - 1]
        near = bfs_distances(G, slack, limit=radius, allowed=cset) if slack else {}
        happy.update(near)
        for v in comp:
            if v not in near and not is_gallai_tree(G, ball_within(G, cset, v, radius)):
                happy.add(v)
    return rich, happy


def _evaluate(view):
    # a node's verdict from its gathered ball: (rich, happy)
    r = view.radius - 1
    deg = {x: len(nb) for x, nb in view.adjacency.items()}
    cap = view.inputs
    me = view.center
    if deg[me] > cap[me]:
        return False, False
    seen = {me: 0}
    frontier = [me]
    for dist in range(1, r + 1):
        nxt = []
        for x in frontier:
            for y in view.adjacency[x]:
                if y not in seen and deg[y] <= cap[y]:
                    seen[y] = dist
                    nxt.append(y)
        frontier = nxt
    if any(deg[x] <= cap[x] - 1 for x in seen):
        return True, True
    ids = sorted(seen)
    pos = {x: i for i, x in enumerate(ids)}
    B = from_index_edges(len(ids), [(pos[a], pos[b]) for a in ids for b in view.adjacency[a]
                                    if b in pos and a < b], ids)
    return True, not is_gallai_tree(B)


def classify(G: Graph, d: int | None, c: float = DEFAULT_C, alive=None, *, L=None, n: int | None = None,
             engine: str = "auto", transcript: RoundTranscript | None = None) -> Classification:
    """Rich/poor/happy/sad split of ``G_i = G[alive]``; ``radius + 1`` rounds.

    With ``d=None`` the list sizes of ``L`` replace ``d`` vertex by vertex.
    ``n`` fixes the radius ``ceil(c log2 n)`` and defaults to ``G.n``.
    """
    if d is not None and d < 1:
        raise ContractError("classify needs d >= 1")
    if d is None and L is None:
        raise ContractError("classify needs d or a list assignment")
    alive = frozenset(range(G.n)) if alive is None else frozenset(alive)
    radius = radius_for(G.n if n is None else n, c)
    cap = _caps(G, d, L)
    Gi, mapping = induced_subgraph(G, sorted(alive))
    if _pick(engine, Gi.n * Gi.n * (radius + 2)) == "message":
        caps = [cap[x] for x in mapping]
        outputs, t = run_program(Gi, GatherBall(radius + 1, _evaluate), inputs=caps,
                                 n=max(G.ids, default=0), label="classify")
        if transcript is not None:
            transcript.absorb(t)
        rich = {mapping[i] for i, o in enumerate(outputs) if o[0]}
        happy = {mapping[i] for i, o in enumerate(outputs) if o[1]}
    else:
        deg = [0] * G.n
        for i, x in enumerate(mapping):
            deg[x] = Gi.degree(i)
        rich, happy = _classify_fast(G, alive, deg, cap, radius)
        if transcript is not None:
            transcript.record("classify", radius + 1)
    return Classification(d, c, radius, alive, frozenset(rich), alive - frozenset(rich),
                          frozenset(happy), frozenset(rich) - frozenset(happy))


# ----------------------------------------------------------------------------
# extension


def _pruned(G: Graph, L, col, v, inside):
    used = {col[w] for w in G.adj[v] if w not in inside and col[w] is not None}
    return frozenset(L[v] - used)


def extend_to_happy(G: Graph, cls: Classification, col, L, *, n: int | None = None,
                    engine: str = "auto", transcript: RoundTranscript | None = None) -> list:
    """Extend a coloring of ``G_i - A`` to all of ``G_i``.

    Builds a ruling forest for the happy set, colors the trees leaf to
    root and finally recolors the ball around every root centrally.  Poor
    vertices and rich vertices outside the trees and root balls keep
    their colors; sad vertices inside them may change.

    Raises
    ------
    ContractError
        If ``col`` does not properly ``L``-color ``G_i - A`` or a root ball
        turns out not to be degree-choosable.
    """
    alive, A = cls.vertices, cls.happy
    col = list(col)
    for v in A:
        col[v] = None
    outside = [v for v in alive if v not in A]
    missing = [G.ids[v] for v in outside if col[v] is None]
    if missing:
        raise ContractError(f"vertices {sorted(missing)[:10]} of G_i - A are uncolored")
    for v in alive:
        if col[v] is not None:
            continue
        cap = cls.d if cls.d is not None else len(L[v])
        if len(L[v]) < cap:
            raise ContractError(f"vertex {G.ids[v]} has a list smaller than {cap}")
    restricted = [col[v] if v in alive else None for v in range(G.n)]
    bad = check_list(G, restricted, L)
    if bad:
        raise ContractError(f"input coloring of G_i - A violates lists or edges: {bad[:5]}")
    if not A:
        return col
    n_ids = max(G.ids, default=1) if n is None else n
    radius = cls.radius
    HR, mapR = induced_subgraph(G, sorted(cls.rich))
    posR = {x: i for i, x in enumerate(mapR)}
    forest = ruling_forest(HR, {posR[v] for v in A}, 2 * radius + 2, n=n_ids, engine=engine,
                           transcript=transcript)
    T = {mapR[i] for i in forest.parent}
    for v in T:
        col[v] = None
    H, mapT = induced_subgraph(G, sorted(T))
    LH = [_pruned(G, L, col, x, T) for x in mapT]
    d_plus = cls.d if cls.d is not None else max(G.max_degree(), 1)
    classes = plus_one_coloring(H, d_plus, n=n_ids, engine=engine, transcript=transcript)
    depth = [forest.depth[posR[x]] for x in mapT]
    colH = [None] * H.n
    layers = {}
    for i in range(H.n):
        if depth[i] > 0:
            layers.setdefault((depth[i], classes[i]), []).append(i)
    for key in sorted(layers, key=lambda t: (-t[0], t[1])):
        for i in layers[key]:
            taken = {colH[j] for j in H.adj[i] if colH[j] is not None}
            free = [c for c in LH[i] if c not in taken]
            if not free:
                raise ContractError(f"tree vertex {H.ids[i]} ran out of colors")
            colH[i] = min(free)
    for i, x in enumerate(mapT):
        col[x] = colH[i]
    if transcript is not None:
        transcript.record("greedy", forest.beta * (d_plus + 1))
    rich = set(cls.rich)
    balls = [ball_within(G, rich, mapR[r], radius) for r in forest.roots]
    for B in balls:
        for x in B:
            col[x] = None
    for B in balls:
        sub, mapB = induced_subgraph(G, sorted(B))
        LB = [_pruned(G, L, col, x, B) for x in mapB]
        solved = degree_list_color(sub, LB)
        if solved is None:
            raise ContractError(f"ball around root {sub.ids[0]} is a tight Gallai tree")
        for i, x in enumerate(mapB):
            col[x] = solved[i]
    if transcript is not None:
        transcript.record("ball_solve", 2 * radius + 1)
    return col


# ----------------------------------------------------------------------------
# peeling driver


def _peel(G: Graph, d, L, c, strict, engine, transcript, check_bounds):
    n = G.n
    alive = frozenset(range(n))
    trace = PeelingTrace()
    layers = []
    notes = []
    while alive:
        cls = classify(G, d, c, alive, L=L, n=n, engine=engine, transcript=transcript)
        if not cls.happy:
            raise ProgressStallError(
                f"no happy vertex among {len(alive)} remaining; maximum average degree exceeds the bound")
        n_i, a_i = len(alive), len(cls.happy)
        sad = cls.sad
        low = sum(1 for v in sad if sum(1 for w in G.adj[v] if w in sad) <= d - 1) if d else 0
        trace.happy_sets.append(cls.happy)
        trace.sizes.append(n_i)
        trace.poor_counts.append(len(cls.poor))
        trace.sad_counts.append(len(sad))
        trace.sad_low_degree.append(low)
        if check_bounds:
            it = len(layers)
            problems = []
            if a_i * (3 * d) ** 3 < n_i:
                problems.append(f"iteration {it}: |A|={a_i} < |G_i|/(3d)^3 with |G_i|={n_i}")
            if not cls.poor and a_i * (12 * d + 1) < n_i:
                problems.append(f"iteration {it}: |A|={a_i} < |G_i|/(12d+1) without poor vertices")
            if 12 * low < len(sad):
                problems.append(f"iteration {it}: {low} low-degree sad vertices < |S|/12 with |S|={len(sad)}")
            trace.bound_failures.extend(problems)
            for p in problems:
                if strict:
                    raise BoundViolationError(p)
                warnings.warn(p, RuntimeWarning, stacklevel=3)
                notes.append(p)
        layers.append(cls)
        alive = alive - cls.happy
    col = [None] * n
    for cls in reversed(layers):
        col = extend_to_happy(G, cls, col, L, n=n, engine=engine, transcript=transcript)
    bad = check_list(G, col, L)
    if bad or any(x is None for x in col):
        raise ContractError(f"final coloring failed verification: {bad[:5]}")
    return col, trace, notes


def _validate_lists(G: Graph, L, need):
    if len(L) != G.n:
        raise ContractError(f"list assignment has {len(L)} entries for {G.n} vertices")
    short = [G.ids[v] for v in range(G.n) if len(L[v]) < need(v)]
    if short:
        raise ContractError(f"vertices {short[:10]} have lists that are too small")


def color_sparse(G: Graph, d: int, L, *, c_override: float | None = None, engine: str = "auto",
                 check_bounds: bool = True) -> ColoringResult:
    """Find a ``(d+1)``-clique or an ``L``-coloring of a graph with mad at most ``d``.

    Lists may be longer than ``d``; they are never truncated.  The bound
    checks on each iteration raise under the default constant and only
    warn when ``c_override`` is given.

    Raises
    ------
    ContractError
        If ``d < 3`` or some list has fewer than ``d`` colors.
    ProgressStallError
        If an iteration finds no happy vertex (so mad exceeds ``d``).
    BoundViolationError
        If a per-iteration bound fails under the default constant.
    """
    if d < 3:
        raise ContractError("color_sparse needs d >= 3")
    L = [frozenset(x) for x in L]
    _validate_lists(G, L, lambda v: d)
    c = DEFAULT_C if c_override is None else c_override
    transcript = RoundTranscript()
    result = ColoringResult("coloring", transcript=transcript, d=d, c=c, radius=radius_for(G.n, c))
    clique = find_clique(G, d, transcript) if G.n else None
    if clique is not None:
        result.outcome, result.clique = "clique", clique
        return result
    d_eff = max(1, min(d, G.n))
    col, trace, notes = _peel(G, d_eff, L, c, c_override is None, engine, transcript, check_bounds)
    result.coloring, result.trace, result.warnings = col, trace, notes
    return result


def is_nice(G: Graph, L) -> list:
    """Vertices (indices) at which ``L`` fails to be nice."""
    bad = []
    for v in range(G.n):
        dv = G.degree(v)
        nb = G.adj[v]
        clique = all(G.has_edge(a, b) for i, a in enumerate(nb) for b in nb[i + 1:])
        need = dv + 1 if dv <= 2 or clique else dv
        if len(L[v]) < need:
            bad.append(v)
    return bad


def color_nice(G: Graph, L, *, c_override: float | None = None, engine: str = "auto") -> ColoringResult:
    """``L``-coloring for a nice list assignment; every vertex counts as rich.

    Raises
    ------
    NotNiceError
        Listing the ids of the vertices where ``L`` is not nice.
    """
    L = [frozenset(x) for x in L]
    if len(L) != G.n:
        raise ContractError(f"list assignment has {len(L)} entries for {G.n} vertices")
    bad = is_nice(G, L)
    if bad:
        raise NotNiceError([G.ids[v] for v in bad])
    c = DEFAULT_C if c_override is None else c_override
    transcript = RoundTranscript()
    col, trace, notes = _peel(G, None, L, c, False, engine, transcript, False)
    return ColoringResult("coloring", coloring=col, trace=trace, transcript=transcript, c=c,
                          radius=radius_for(G.n, c), warnings=notes)


def brooks_list(G: Graph, delta: int, L, *, c_override: float | None = None,
                engine: str = "auto") -> ColoringResult:
    """``L``-coloring with ``|L| >= delta`` for max degree ``delta``, or proof of infeasibility.

    Components equal to ``K_{delta+1}`` are decided by matching; the rest
    have nice lists and go through :func:`color_nice`.
    """
    if delta < 3:
        raise ContractError("brooks_list needs delta >= 3")
    if G.max_degree() > delta:
        raise ContractError(f"maximum degree {G.max_degree()} exceeds {delta}")
    L = [frozenset(x) for x in L]
    _validate_lists(G, L, lambda v: delta)
    col = [None] * G.n
    rest = []
    for comp in connected_components(G):
        K, mapping = induced_subgraph(G, comp)
        if K.n == delta + 1 and K.m == K.n * (K.n - 1) // 2:
            sol = clique_list_color(K, [L[x] for x in mapping])
            if sol is None:
                return ColoringResult("infeasible", infeasible_component=frozenset(comp), d=delta)
            for i, x in enumerate(mapping):
                col[x] = sol[i]
        else:
            rest.extend(comp)
    result = ColoringResult("coloring", d=delta, c=DEFAULT_C if c_override is None else c_override)
    if rest:
        H, mapping = induced_subgraph(G, sorted(rest))
        sub = color_nice(H, [L[x] for x in mapping], c_override=c_override, engine=engine)
        for i, x in enumerate(mapping):
            col[x] = sub.coloring[i]
        result.trace, result.transcript = sub.trace, sub.transcript
        result.radius, result.warnings = sub.radius, sub.warnings
    result.coloring = col
    return result
