import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from fraccover.errors import ParseError
from fraccover.graph import Graph, complete, gnp
from fraccover.graphio import (
    emit_graph,
    emit_graph6,
    iter_graph6_file,
    parse_graph,
    parse_graph6,
    read_graph,
    write_graph,
)


def test_edge_list_k2():
    assert parse_graph("2 1\n0 1\n") == complete(2)
    assert emit_graph(complete(2)) == "2 1\n0 1\n"


def test_graph6_k5_round_trip():
    G = parse_graph6("D~{")
    assert G == complete(5)
    assert emit_graph6(G) == "D~{"


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<D~{") == complete(5)


@given(graphs(max_n=9))
def test_round_trip_both_formats(G):
    assert parse_graph(emit_graph(G, "edge-list"), "edge-list") == G
    assert parse_graph(emit_graph(G, "graph6"), "graph6") == G


@given(graphs(max_n=9))
def test_graph6_matches_networkx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    expected = nx.to_graph6_bytes(H, header=False).decode().strip()
    assert emit_graph6(G) == expected


def test_graph6_large_order_header():
    G = gnp(70, "1/10", 5)
    text = emit_graph6(G)
    assert text[0] == "~"
    assert parse_graph6(text) == G
    H = nx.from_graph6_bytes(text.encode())
    assert sorted(H.edges()) == G.edges()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2 1\n0 1\n0 1\n", "header declares 1 edges, found 2"),
        ("2 2\n0 1\n1 0\n", "line 3: duplicate edge"),
        ("2 1\n1 1\n", "line 2: self-loop"),
        ("2 1\n0 2\n", "line 2: label out of range"),
        ("2 1\n0 x\n", "line 2: non-integer"),
        ("", "line 1"),
    ],
)
def test_edge_list_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph(text)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "missing graph6 order header"),
        ("D~", "expected 2 adjacency bytes"),
        ("D~{?", "expected 2 adjacency bytes"),
        ("D~!", "byte 2: character"),
        ("D~~", "nonzero padding"),
        ("~?", "truncated"),
    ],
)
def test_graph6_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph6(text)


def test_corpus_and_files(tmp_path):
    corpus = tmp_path / "c.g6"
    gs = [complete(3), Graph.empty(2), gnp(8, "1/2", 1)]
    corpus.write_text("".join(emit_graph6(g) + "\n" for g in gs))
    assert list(iter_graph6_file(corpus)) == gs
    f = tmp_path / "g.txt"
    write_graph(gs[2], f)
    assert read_graph(f) == gs[2]
    f6 = tmp_path / "g.g6"
    write_graph(gs[2], f6)
    assert f6.read_text().strip() == emit_graph6(gs[2])
    assert read_graph(f6) == gs[2]


def test_corpus_error_names_line(tmp_path):
    corpus = tmp_path / "bad.g6"
    corpus.write_text("D~{\nD~\n")
    with pytest.raises(ParseError, match="bad.g6:2"):
        list(iter_graph6_file(corpus))
