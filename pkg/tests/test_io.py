import pytest

from madcolor.errors import MalformedInputError
from madcolor.generators import tri_grid
from madcolor.io import (format_coloring, format_edge_list, format_lists, parse_coloring,
                         parse_edge_list, parse_lists, read_edge_list, write_edge_list)


def test_edge_list_roundtrip(tmp_path):
    G = tri_grid(4, 3)
    path = tmp_path / "g.txt"
    write_edge_list(G, path)
    assert read_edge_list(path) == G
    assert parse_edge_list(format_edge_list(G)) == G


def test_edge_list_comments():
    G = parse_edge_list("# header\n3 2  # n m\n1 2\n# middle\n2 3\n")
    assert (G.n, G.m) == (3, 2)


@pytest.mark.parametrize("text", ["", "3\n", "3 2\n1 2\n", "3 1\n1 x\n", "3 1\n1 1\n", "2 1\n1 3\n"])
def test_edge_list_malformed(text):
    with pytest.raises(MalformedInputError):
        parse_edge_list(text)


def test_lists_roundtrip():
    L = [frozenset({1, 2}), frozenset({3}), frozenset({1, 5, 9})]
    assert parse_lists(format_lists(L), 3) == L


@pytest.mark.parametrize("text", ["1: 1 2\n", "1: 1\n1: 2\n2: 1\n", "1: a\n2: 1\n", "3: 1\n"])
def test_lists_malformed(text):
    with pytest.raises(MalformedInputError):
        parse_lists(text, 2)


def test_coloring_roundtrip():
    col = [3, None, 1]
    assert format_coloring(col) == "1 3\n3 1\n"
    assert parse_coloring(format_coloring(col), 3) == col
    with pytest.raises(MalformedInputError):
        parse_coloring("1 a\n", 3)
