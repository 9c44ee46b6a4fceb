"""Shared fixtures for all tests."""
import itertools
import os
import random

import networkx as nx
import pytest

from pid_treedepth.graph import Graph

EXHAUSTIVE = os.environ.get("PID_TREEDEPTH_EXHAUSTIVE") == "1"


def graph_from_1based(n, edges):
    return Graph.from_edges(n, [(u - 1, v - 1) for u, v in edges])


def path_graph(n):
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complete_graph(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(leaves):
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def from_networkx(g):
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def all_connected_graphs(n):
    """Every connected labelled graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[j] for j in range(len(pairs)) if mask >> j & 1]
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        if nx.is_connected(g):
            yield Graph.from_edges(n, edges)


def random_connected_graphs(count, n_range=(7, 10), probabilities=(0.2, 0.5, 0.8), seed=2020):
    rng = random.Random(seed)
    graphs = []
    while len(graphs) < count:
        n = rng.randint(*n_range)
        p = probabilities[len(graphs) % len(probabilities)]
        g = nx.gnp_random_graph(n, p, seed=rng.randrange(1 << 30))
        if nx.is_connected(g):
            graphs.append(from_networkx(g))
    return graphs


@pytest.fixture
def k1():
    return Graph.from_edges(1, [])


@pytest.fixture
def k2():
    return graph_from_1based(2, [(1, 2)])


@pytest.fixture
def p3():
    return graph_from_1based(3, [(1, 2), (2, 3)])


@pytest.fixture
def p4():
    return graph_from_1based(4, [(1, 2), (2, 3), (3, 4)])


@pytest.fixture
def c5():
    return graph_from_1based(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])


@pytest.fixture
def star3():
    return graph_from_1based(4, [(1, 2), (1, 3), (1, 4)])


@pytest.fixture(scope="session")
def small_connected_graphs():
    """All connected labelled graphs with up to 5 vertices (up to 6 in exhaustive mode)."""
    top = 6 if EXHAUSTIVE else 5
    return [g for n in range(1, top + 1) for g in all_connected_graphs(n)]


@pytest.fixture(scope="session")
def sampled_connected_graphs():
    return random_connected_graphs(500 if EXHAUSTIVE else 40)
