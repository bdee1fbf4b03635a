import networkx as nx
import pytest

from app.services.graph_service import graph_service
from app.utils.graph6 import HEADER, parse_graph6, read_graph6_file, write_graph6
from app.utils.validators import GraphValidationError
from tests.conftest import fam


def test_parse_k2():
    g = parse_graph6("A_")
    assert g.n == 2 and g.edges() == [(0, 1)]


def test_parse_accepts_header():
    assert parse_graph6(HEADER + "A_") == parse_graph6("A_")


def test_sample_line_reproduces():
    assert write_graph6(parse_graph6("D?{")) == "D?{"


@pytest.mark.parametrize("text", ["path:5", "cycle:7", "complete:6", "dstar:2,3", "hk:4:3,2,3,2", "empty:1"])
def test_write_matches_networkx(text):
    g = fam(text)
    expected = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
    assert write_graph6(g) == expected


def test_parse_matches_networkx_on_every_5_vertex_graph():
    for g in graph_service.enumerate_labeled_graphs(5):
        line = write_graph6(g)
        reference = nx.from_graph6_bytes(line.encode())
        assert sorted(map(tuple, map(sorted, reference.edges()))) == g.edges()


def test_large_order_header():
    g = graph_service.build_graph(63, [(0, 62)])
    line = write_graph6(g)
    assert line.startswith("~")
    assert parse_graph6(line) == g


@pytest.mark.parametrize("line", ["", "A", "A__", "A\x7f", "C~~"])
def test_parse_errors(line):
    with pytest.raises(GraphValidationError):
        parse_graph6(line)


def test_read_file_reports_line(tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("A_\n\nBw\nC\n")
    with pytest.raises(GraphValidationError, match=":4:"):
        read_graph6_file(path)

    path.write_text("A_\nBw\n")
    graphs = read_graph6_file(path)
    assert [g.n for g in graphs] == [2, 3]


def test_read_missing_file(tmp_path):
    with pytest.raises(GraphValidationError):
        read_graph6_file(tmp_path / "missing.g6")
