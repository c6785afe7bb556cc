"""Shared test helpers."""

import networkx as nx

from madcolor.graph import from_index_edges


def from_nx(X):
    X = nx.convert_node_labels_to_integers(X)
    return from_index_edges(X.number_of_nodes(), sorted(tuple(sorted(e)) for e in X.edges()))


# acceptance verdict lines, echoed in the terminal summary
ACCEPTANCE_LINES = []


def report(criterion, ok, detail):
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok
