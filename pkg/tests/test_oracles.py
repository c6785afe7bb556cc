import itertools
import math
import random
from fractions import Fraction

import networkx as nx
import pytest

from madcolor.errors import CapExceededError
from madcolor.generators import (clique, cycle, forest_union, grid, hex_grid, klein_grid, path,
                                 petersen, star, tri_grid, uniform_lists)
from madcolor.graph import build_graph, from_index_edges
from madcolor.oracles import (brute_chromatic, brute_list_colorable, check_list, check_proper,
                              happy_oracle, mad_bruteforce, mad_exact, max_cliques_of_size,
                              nash_williams_arboricity_bound)

from helpers import from_nx


def test_check_proper():
    assert check_proper(cycle(4), ["a", "b", "a", "b"]) == []
    assert check_proper(path(2), [1, 1]) == [(0, 1)]
    assert check_proper(cycle(5), [None] * 5) == []


def test_check_list():
    G = path(2)
    assert check_list(G, [5, None], [{1, 2}, {1}]) == [0]
    assert check_list(G, [1, 2], [{1, 2}, {2}]) == []
    assert check_list(G, [None, None], [set(), set()]) == []


def test_brute_chromatic_goldens():
    assert brute_chromatic(cycle(5)) == 3
    assert brute_chromatic(petersen()) == 3
    assert brute_chromatic(klein_grid(5, 7)) == 4
    assert brute_chromatic(clique(6)) == 6
    assert brute_chromatic(build_graph(3, [])) == 1


def test_brute_chromatic_cap():
    with pytest.raises(CapExceededError):
        brute_chromatic(path(41))
    assert brute_chromatic(path(41), cap=50) == 2


def _exhaustive_list(G, L):
    for combo in itertools.product(*[sorted(x) for x in L]):
        if not check_proper(G, list(combo)):
            return True
    return False


def test_brute_list_examples():
    K3 = clique(3)
    L = [{1, 2}, {2, 3}, {1, 3}]
    col = brute_list_colorable(K3, L)
    assert col is not None and check_list(K3, col, L) == []
    assert brute_list_colorable(clique(4), uniform_lists(4, 3)) is None
    assert brute_list_colorable(build_graph(1, []), [{7}]) == [7]


def test_brute_list_matches_exhaustive():
    rng = random.Random(2)
    for trial in range(150):
        n = rng.randint(1, 6)
        G = from_nx(nx.gnp_random_graph(n, 0.5, seed=trial))
        L = [set(rng.sample(range(1, 5), rng.randint(1, 3))) for _ in range(n)]
        col = brute_list_colorable(G, L)
        assert (col is not None) == _exhaustive_list(G, L)
        if col is not None:
            assert check_list(G, col, L) == []


@pytest.mark.parametrize("G", [cycle(5), petersen(), path(6), clique(4), grid(3, 3)])
def test_uniform_lists_match_chromatic(G):
    chi = brute_chromatic(G)
    assert brute_list_colorable(G, uniform_lists(G.n, chi)) is not None
    assert brute_list_colorable(G, uniform_lists(G.n, chi - 1)) is None


def test_mad_examples():
    assert mad_exact(cycle(7)) == 2
    assert mad_exact(clique(4)) == 3
    assert mad_exact(build_graph(4, [])) == 0
    assert mad_exact(hex_grid(8, 8)) < 3


def test_mad_exact_matches_bruteforce():
    for seed in range(40):
        X = nx.gnp_random_graph(9, 0.35, seed=seed)
        G = from_nx(X)
        assert mad_exact(G) == mad_bruteforce(G)
        assert isinstance(mad_exact(G), Fraction)


def _nash_bruteforce(G):
    best = 0
    for k in range(2, G.n + 1):
        for S in itertools.combinations(range(G.n), k):
            s = set(S)
            e = sum(1 for u, v in G.edges() if u in s and v in s)
            best = max(best, math.ceil(e / (k - 1)))
    return best


def test_nash_williams_examples():
    assert nash_williams_arboricity_bound(path(6)) == 1
    assert nash_williams_arboricity_bound(clique(4)) == 2
    T1 = [(i, i + 1) for i in range(7)]
    T2 = [(0, i) for i in range(2, 8)] + [(1, 7)]
    assert nash_williams_arboricity_bound(from_index_edges(8, T1 + T2)) == 2


def test_nash_williams_matches_bruteforce():
    for seed in range(30):
        G = from_nx(nx.gnp_random_graph(8, 0.45, seed=seed))
        assert nash_williams_arboricity_bound(G) == _nash_bruteforce(G)


def test_density_inequalities():
    graphs = [petersen(), clique(5), grid(5, 5), tri_grid(5, 5), forest_union(3, 30, 4)]
    for G in graphs:
        mad = mad_exact(G)
        a = nash_williams_arboricity_bound(G)
        assert mad <= 2 * a
        assert math.ceil(mad) >= 2 * a - 2


@pytest.mark.parametrize("G,g", [(grid(6, 6), 4), (hex_grid(8, 8), 6), (tri_grid(6, 6), 3)])
def test_girth_density_bound(G, g):
    assert nx.girth(nx.Graph(list(G.edges()))) >= g
    assert mad_exact(G) < Fraction(2 * g, g - 2)


def test_happy_oracle_examples():
    cls = happy_oracle(cycle(5), 3)
    assert cls.happy == set(range(5))
    cls = happy_oracle(star(5), 3)
    assert cls.poor == {0} and cls.happy == set(range(1, 6))
    cls = happy_oracle(petersen(), 3)
    assert cls.happy == set(range(10))
    cls = happy_oracle(clique(4), 3)
    assert cls.sad == set(range(4))


def test_happy_oracle_partitions():
    for seed in range(20):
        G = from_nx(nx.gnp_random_graph(15, 0.3, seed=seed))
        cls = happy_oracle(G, 4, c=0.5)
        assert cls.rich | cls.poor == cls.vertices
        assert cls.happy | cls.sad == cls.rich
        assert not cls.happy & cls.sad and not cls.rich & cls.poor


def test_max_cliques_of_size():
    assert max_cliques_of_size(clique(4), 3) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert max_cliques_of_size(cycle(5), 3) == []
