from __future__ import annotations

import random

import networkx as nx
import pytest

from pqvol.graphs import Graph, from_edge_list


def nx_to_graph(nxg: nx.Graph) -> Graph:
    nodes = sorted(nxg.nodes())
    relabel = {v: i + 1 for i, v in enumerate(nodes)}
    return from_edge_list(
        len(nodes), [(relabel[u], relabel[v]) for u, v in nxg.edges()]
    )


def graph_to_nx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(1, g.n + 1))
    nxg.add_edges_from(g.sorted_edges)
    return nxg


def connected_catalog(n_max: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs, n <= n_max <= 7."""
    out = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if n == 0 or n > n_max:
            continue
        if not nx.is_connected(nxg):
            continue
        out.append(nx_to_graph(nxg))
    return out


def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260814)
