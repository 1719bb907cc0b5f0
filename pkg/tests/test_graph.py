import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halinlab.errors import PreconditionError
from halinlab.graph import (
    Graph,
    VertexSetPair,
    bipartition,
    degree_between,
    vertex_connectivity,
    vertex_connectivity_at_least,
)

from oracles import cut_connectivity_at_least, random_graph


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    return Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def test_rejects_bad_edges():
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 3)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 1), (1, 0)])


def test_basic_queries():
    g = Graph.complete_bipartite(2, 3)
    assert g.n == 5 and g.edge_count == 6
    assert g.degree(0) == 3 and g.degree(2) == 2
    assert g.neighbors(0) == frozenset({2, 3, 4})
    assert not g.has_edge(0, 1)
    assert g.has_edge(4, 1)


def test_induced_subgraph_relabels():
    g = Graph.cycle(5)
    sub, mapping = g.induced_subgraph([1, 2, 4])
    assert mapping == [1, 2, 4]
    assert sub.edge_count == 1 and sub.has_edge(0, 1)


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_handshake(g):
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.edge_count


def test_degree_between_complete():
    g = Graph.complete(4)
    assert degree_between(g, VertexSetPair([0, 1], [2, 3])) == (2, 2, 4)


def test_degree_between_edgeless():
    g = Graph.empty(4)
    assert degree_between(g, VertexSetPair([0, 1], [2, 3])) == (0, 0, 0)


def test_degree_between_bipartite_sides():
    g = Graph.complete_bipartite(3, 4)
    a, b = range(3), range(3, 7)
    assert degree_between(g, VertexSetPair(a, b)) == (4, 4, 12)
    assert degree_between(g, VertexSetPair(b, a)) == (3, 3, 12)


def test_degree_between_rejects_overlap():
    g = Graph.complete(4)
    with pytest.raises(PreconditionError):
        VertexSetPair([0, 1], [1, 2])
    with pytest.raises(PreconditionError):
        degree_between(g, VertexSetPair([0], [9]))


def test_connectivity_examples():
    assert vertex_connectivity_at_least(Graph.complete(4), 3)
    assert not vertex_connectivity_at_least(Graph.path(3), 2)
    assert vertex_connectivity_at_least(Graph.complete_bipartite(3, 4), 3)
    assert not vertex_connectivity_at_least(Graph.complete_bipartite(3, 4), 4)


def test_connectivity_conventions():
    assert vertex_connectivity(Graph.empty(0)) == 0
    assert vertex_connectivity(Graph.empty(1)) == 0
    assert vertex_connectivity(Graph.complete(5)) == 4
    assert vertex_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0


def test_connectivity_monotone_in_k():
    rng = random.Random(5)
    for _ in range(25):
        g = random_graph(rng, rng.randrange(1, 9), rng.random())
        values = [vertex_connectivity_at_least(g, k) for k in range(g.n + 2)]
        assert values == sorted(values, reverse=True)


def test_connectivity_against_cut_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 9)
        g = random_graph(rng, n, rng.choice([0.2, 0.4, 0.6, 0.8]))
        for k in range(0, n + 1):
            assert vertex_connectivity_at_least(g, k) == cut_connectivity_at_least(
                g, k
            ), (g.edges(), n, k)


def test_bipartition_examples():
    g = Graph.complete_bipartite(3, 4)
    pair = bipartition(g)
    assert {len(pair.left), len(pair.right)} == {3, 4}
    assert bipartition(Graph.complete(3)) is None
    pair = bipartition(Graph.cycle(6))
    assert len(pair.left) == len(pair.right) == 3


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_bipartition_has_no_internal_edges(g):
    pair = bipartition(g)
    if pair is None:
        return
    assert pair.left | pair.right == set(range(g.n))
    for side in (pair.left, pair.right):
        if side:
            assert degree_between(g, VertexSetPair(side, set(range(g.n)) - side))[
                2
            ] == g.edge_count
    for u, v in g.edges():
        assert (u in pair.left) != (v in pair.left)
