import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from fraccover.errors import InvalidVertexError
from fraccover.extremal import build_extremal
from fraccover.graph import (
    Graph,
    complete,
    degree,
    delete_vertices,
    disjoint_union,
    gnp,
    is_independent,
    join,
    matching,
    min_degree,
    neighborhood,
    path,
    star,
)


def test_graph_invariants_on_construction():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert G.m == 4
    assert all((G.adj[v] >> u & 1) == (G.adj[u] >> v & 1) for u in range(4) for v in range(4))
    assert all(not G.adj[v] >> v & 1 for v in range(4))


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidVertexError):
        Graph.from_edges(3, [(0, 3)])


def test_repeated_edge_is_set_semantics():
    assert Graph.from_edges(2, [(0, 1), (1, 0)]).m == 1


class TestNeighborhood:
    def test_complete(self):
        assert neighborhood(complete(3), {0}) == {1, 2}

    def test_matching_partners(self):
        assert neighborhood(matching(2), {0, 2}) == {1, 3}

    def test_empty_set(self):
        assert neighborhood(complete(4), set()) == frozenset()

    def test_may_intersect_x(self):
        assert neighborhood(matching(1), {0, 1}) == {0, 1}

    def test_extremal_b_side_counts(self):
        inst = build_extremal(2, 3, 0, 7)
        for X in [{3}, {3, 4}, {3, 5, 7}, set(range(3, 10))]:
            assert len(neighborhood(inst.graph, X)) == len(inst.A) + len(X)

    def test_invalid_vertex(self):
        with pytest.raises(InvalidVertexError):
            neighborhood(complete(3), {3})


@given(graphs(max_n=8), st.data())
def test_neighborhood_union_and_monotone(G, data):
    X = data.draw(st.frozensets(st.integers(0, max(G.n - 1, 0)), max_size=G.n)) if G.n else frozenset()
    Y = X | (data.draw(st.frozensets(st.integers(0, G.n - 1))) if G.n else frozenset())
    union = frozenset().union(*(neighborhood(G, {v}) for v in X))
    assert neighborhood(G, X) == union
    assert neighborhood(G, X) <= neighborhood(G, Y)


class TestDelete:
    def test_identity(self):
        H, labels = delete_vertices(complete(4), set())
        assert H == complete(4) and labels == (0, 1, 2, 3)

    def test_complete_minus_vertex(self):
        H, labels = delete_vertices(complete(4), {0})
        assert H == complete(3) and labels == (1, 2, 3)

    def test_path_cut_vertex(self):
        H, labels = delete_vertices(path(3), {1})
        assert H == Graph.empty(2) and labels == (0, 2)


@given(graphs(max_n=8), st.data())
def test_delete_composes(G, data):
    X = data.draw(st.frozensets(st.integers(0, G.n - 1))) if G.n else frozenset()
    H1, lab1 = delete_vertices(G, X)
    Y_new = data.draw(st.frozensets(st.integers(0, H1.n - 1))) if H1.n else frozenset()
    H2, lab2 = delete_vertices(H1, Y_new)
    H12, lab12 = delete_vertices(G, X | {lab1[v] for v in Y_new})
    assert H2 == H12
    assert tuple(lab1[v] for v in lab2) == lab12


def test_degrees():
    assert all(degree(complete(4), v) == 3 for v in range(4))
    assert degree(star(3), 0) == 3
    assert min_degree(star(3)) == 1
    with pytest.raises(ValueError):
        min_degree(Graph.empty(0))


def test_extremal_b_vertex_degree():
    # 3 hub vertices plus one matching partner
    G = build_extremal(2, 3, 0, 7).graph
    assert degree(G, 3) == 4
    assert min_degree(G) == 4


def test_independence():
    assert is_independent(complete(3), set())
    assert not is_independent(complete(3), {0, 1})
    assert is_independent(matching(2), {0, 2})


class TestConstructions:
    def test_join_k1_k1(self):
        assert join(complete(1), complete(1)) == complete(2)

    def test_join_extremal_counts(self):
        G = join(complete(3), matching(4))
        assert (G.n, G.m) == (11, 3 + 4 + 3 * 8)

    def test_disjoint_union(self):
        assert disjoint_union(matching(1), matching(1)) == matching(2)

    def test_gnp_extremes(self):
        assert gnp(5, 0, 7) == Graph.empty(5)
        assert gnp(5, 1, 7) == complete(5)


@settings(max_examples=30)
@given(st.integers(0, 12), st.sampled_from(["1/3", "1/2", "9/10"]), st.integers(0, 2**32))
def test_gnp_deterministic(n, p, seed):
    assert gnp(n, p, seed) == gnp(n, p, seed)


def test_gnp_float_means_decimal():
    assert gnp(10, 0.9, 3) == gnp(10, "9/10", 3)


def test_gnp_rejects_bad_p():
    with pytest.raises(ValueError):
        gnp(3, "3/2", 0)
