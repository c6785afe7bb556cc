import random
import warnings

import networkx as nx
import pytest

from madcolor.errors import (BoundViolationError, ContractError, NotNiceError,
                             ProgressStallError)
from madcolor.generators import (clique, cycle, grid, hex_grid, path, petersen, plant_clique,
                                 random_lists, random_sparse, star, tri_grid, uniform_lists)
from madcolor.graph import build_graph, induced_subgraph
from madcolor.local import RoundTranscript
from madcolor.oracles import brute_list_colorable, check_list, happy_oracle
from madcolor.sparse import (brooks_list, classify, color_nice, color_sparse, extend_to_happy,
                             is_nice, iteration_bound, preset_d)
from madcolor.structures import DEFAULT_C, Classification

from helpers import from_nx


def test_presets():
    assert preset_d("planar") == 6
    assert preset_d("planar-triangle-free") == 4
    assert preset_d("planar-girth6") == 3
    assert preset_d("arboricity:3") == 6
    assert [preset_d(f"genus:{g}") for g in (1, 2, 3, 6)] == [6, 7, 7, 9]
    for bad in ("genus:0", "toroidal", "arboricity:x"):
        with pytest.raises(ContractError):
            preset_d(bad)


def test_classify_examples():
    assert classify(cycle(5), 3).happy == set(range(5))
    cls = classify(star(5), 3)
    assert cls.poor == {0} and cls.happy == set(range(1, 6))
    assert classify(petersen(), 3).happy == set(range(10))


@pytest.mark.parametrize("engine", ["message", "fast"])
def test_classify_matches_oracle(engine):
    rng = random.Random(9)
    for trial in range(60):
        n = rng.randint(1, 22)
        G = from_nx(nx.gnp_random_graph(n, rng.uniform(0.05, 0.4), seed=trial))
        d = rng.randint(3, 5)
        c = rng.choice([0.2, 0.5, 1.0, DEFAULT_C])
        alive = {v for v in range(n) if rng.random() < 0.8}
        got = classify(G, d, c, alive, engine=engine)
        assert got.same_sets(happy_oracle(G, d, c, alive=alive))


def test_classify_large_component_fast_path():
    # radius smaller than the component: per-vertex evaluation
    G = tri_grid(15, 15)
    H, _ = induced_subgraph(G, range(G.n))
    alive = set(range(G.n)) - {7 * 15 + 7}
    got = classify(H, 6, 0.3, alive)
    assert got.same_sets(happy_oracle(H, 6, 0.3, alive=alive))


def test_classify_rounds():
    t = RoundTranscript()
    cls = classify(cycle(6), 3, c=0.5, engine="message", transcript=t)
    assert t.phases == {"classify": cls.radius + 1}
    t2 = RoundTranscript()
    classify(cycle(6), 3, c=0.5, engine="fast", transcript=t2)
    assert t2.phases == t.phases


def test_extend_empty_happy_is_identity():
    G = cycle(6)
    L = uniform_lists(6, 3)
    col = [1, 2, 1, 2, 1, 2]
    cls = classify(G, 3, alive=set())
    assert extend_to_happy(G, cls, col, L) == col


def test_extend_c5_from_scratch():
    G = cycle(5)
    L = uniform_lists(5, 3)
    cls = classify(G, 3)
    col = extend_to_happy(G, cls, [None] * 5, L)
    assert check_list(G, col, L) == []


def test_extend_grid_after_peel():
    G = tri_grid(20, 20)
    L = random_lists(G, 6, seed=4)
    cls = classify(G, 6, 0.3)
    outside = sorted(set(range(G.n)) - cls.happy)
    H, mapping = induced_subgraph(G, outside)
    col = [None] * G.n
    if H.n:
        sub = color_sparse(H, 6, [L[x] for x in mapping], c_override=0.3)
        for i, x in enumerate(mapping):
            col[x] = sub.coloring[i]
    out = extend_to_happy(G, cls, col, L)
    assert check_list(G, out, L) == [] and None not in out
    for v in cls.poor:
        assert out[v] == col[v]


def test_extend_rejects_bad_input():
    G = cycle(5)
    everything = frozenset(range(5))
    cls = Classification(3, 1.0, 3, everything, everything, frozenset(), frozenset({0}),
                         everything - {0})
    with pytest.raises(ContractError):
        extend_to_happy(G, cls, [None] * 5, uniform_lists(5, 3))
    with pytest.raises(ContractError):
        extend_to_happy(G, cls, [None, 1, 1, 2, 1], uniform_lists(5, 3))
    with pytest.raises(ContractError):
        extend_to_happy(G, classify(G, 3), [None] * 5, uniform_lists(5, 2))


def test_color_sparse_examples():
    G = grid(10, 10)
    L = random_lists(G, 6, seed=2)
    res = color_sparse(G, 6, L)
    assert res.outcome == "coloring" and check_list(G, res.coloring, L) == []
    res = color_sparse(clique(4), 3, uniform_lists(4, 3))
    assert res.outcome == "clique" and res.clique == {0, 1, 2, 3} and res.rounds == 2
    res = color_sparse(cycle(5), 3, uniform_lists(5, 3))
    assert check_list(cycle(5), res.coloring, uniform_lists(5, 3)) == []


def test_color_sparse_keeps_long_lists():
    G = tri_grid(6, 6)
    L = [frozenset(range(10, 20))] * G.n
    res = color_sparse(G, 6, L)
    assert check_list(G, res.coloring, L) == []


def test_color_sparse_preconditions():
    with pytest.raises(ContractError):
        color_sparse(cycle(5), 2, uniform_lists(5, 3))
    with pytest.raises(ContractError):
        color_sparse(cycle(5), 3, uniform_lists(5, 2))


def test_color_sparse_stall_on_dense_input():
    # 4-regular, K5-free, with tight lists: no vertex is happy for d = 4 only
    # if every ball is a Gallai tree; the octahedron's single block is not.
    G = from_nx(nx.complete_multipartite_graph(2, 2, 2))
    res = color_sparse(G, 4, uniform_lists(6, 4))
    assert check_list(G, res.coloring, uniform_lists(6, 4)) == []
    # mad 5 > d = 4 with all vertices poor
    K = from_nx(nx.complete_multipartite_graph(3, 3, 3))
    with pytest.raises(ProgressStallError):
        color_sparse(K, 4, uniform_lists(9, 4))


def test_color_sparse_small_c_multiple_iterations():
    G = grid(25, 25)
    L = random_lists(G, 4, seed=3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = color_sparse(G, 4, L, c_override=0.05)
    assert res.trace.iterations > 1
    assert check_list(G, res.coloring, L) == []
    happy = res.trace.happy_sets
    assert sum(map(len, happy)) == G.n
    assert len(frozenset().union(*happy)) == G.n


def test_bounds_raise_under_default_c(monkeypatch):
    import madcolor.sparse as sp
    real = sp.classify

    def shrink(G, d, c=DEFAULT_C, alive=None, **kw):
        cls = real(G, d, c, alive, **kw)
        keep = frozenset(sorted(cls.happy)[:1])
        return cls.__class__(cls.d, cls.c, cls.radius, cls.vertices, cls.rich, cls.poor, keep,
                             cls.rich - keep)

    monkeypatch.setattr(sp, "classify", shrink)
    G = grid(10, 10)
    with pytest.raises(BoundViolationError):
        color_sparse(G, 4, random_lists(G, 4, seed=1))
    with pytest.warns(RuntimeWarning):
        color_sparse(path(40), 3, uniform_lists(40, 3), c_override=1.0)


def test_planted_clique_found():
    for d in (3, 4, 5, 6):
        G = plant_clique(tri_grid(8, 8), d + 1, seed=d)
        res = color_sparse(G, d, random_lists(G, d, seed=0))
        assert res.outcome == "clique" and len(res.clique) == d + 1
        assert res.transcript.phases == {"clique": 2}


def test_random_sparse_colored():
    G = random_sparse(60, 4, seed=5)
    L = random_lists(G, 4, seed=5)
    res = color_sparse(G, 4, L)
    assert res.outcome in ("coloring", "clique")
    if res.outcome == "coloring":
        assert check_list(G, res.coloring, L) == []


def test_iteration_bound_value():
    assert iteration_bound(1, 3) == 0
    assert iteration_bound(1024, 3) == pytest.approx(10 / -__import__("math").log2(1 - 1 / 729))


def test_color_nice_examples():
    P = path(5)
    L = [frozenset(range(1, P.degree(v) + 2)) for v in range(5)]
    res = color_nice(P, L)
    assert check_list(P, res.coloring, L) == []
    Pet = petersen()
    L = uniform_lists(10, 3)
    assert brute_list_colorable(Pet, L) is not None
    assert check_list(Pet, color_nice(Pet, L).coloring, L) == []
    # triangle with a pendant edge: degree-2 vertices need three colors
    G = build_graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    L = [frozenset({1, 2, 3}), frozenset({1, 2, 3}), frozenset({1, 2, 3}), frozenset({1, 3})]
    assert is_nice(G, L) == []
    assert brute_list_colorable(G, L) is not None
    assert check_list(G, color_nice(G, L).coloring, L) == []
    assert is_nice(G, [frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 2, 3}), frozenset({1, 3})]) == [0, 1]


def test_color_nice_rejects():
    G = build_graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    L = [frozenset({1, 2, 3}), frozenset({2, 3, 4}), frozenset({1, 2, 3}), frozenset({1})]
    with pytest.raises(NotNiceError) as err:
        color_nice(G, L)
    assert list(err.value.vertices) == [4]


def test_color_nice_random_tight():
    rng = random.Random(7)
    for trial in range(40):
        G = from_nx(nx.gnp_random_graph(rng.randint(2, 16), 0.3, seed=trial))
        sizes = []
        for v in range(G.n):
            nb = G.adj[v]
            cl = all(G.has_edge(a, b) for i, a in enumerate(nb) for b in nb[i + 1:])
            sizes.append(G.degree(v) + (1 if G.degree(v) <= 2 or cl else 0))
        L = [frozenset(rng.sample(range(1, 9), min(8, s))) for s in sizes]
        if is_nice(G, L):
            continue
        res = color_nice(G, L, c_override=rng.choice([0.3, DEFAULT_C]))
        assert check_list(G, res.coloring, L) == []


def test_brooks_examples():
    assert brooks_list(clique(4), 3, uniform_lists(4, 3)).outcome == "infeasible"
    L = [frozenset({1, 2, 3})] * 3 + [frozenset({1, 2, 4})]
    res = brooks_list(clique(4), 3, L)
    assert res.outcome == "coloring" and check_list(clique(4), res.coloring, L) == []
    res = brooks_list(petersen(), 3, uniform_lists(10, 3))
    assert check_list(petersen(), res.coloring, uniform_lists(10, 3)) == []


def test_brooks_mixed_components():
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6), (6, 7), (7, 8), (8, 5)]
    G = build_graph(8, edges)
    L = [frozenset({1, 2, 3})] * 3 + [frozenset({1, 2, 4})] + [frozenset({1, 2, 3})] * 4
    res = brooks_list(G, 3, L)
    assert res.outcome == "coloring" and check_list(G, res.coloring, L) == []
    with pytest.raises(ContractError):
        brooks_list(clique(5), 3, uniform_lists(5, 4))
