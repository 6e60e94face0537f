import xml.etree.ElementTree as ET
import re

import numpy as np
import pytest

from scatternet import (NodeKind, NodeMeta, ReportDocument, build_graph, export_dot, export_graphml,
                        graph_from_text, parse_hyperlinks, parse_nodes, parse_scatter_edges, read_graph,
                        write_graph)
from scatternet.exceptions import (BadKind, DuplicateId, MalformedRow, ParseError, SameKindEdge, SelfLink,
                                   UnknownNode)
from scatternet.io import file_digest, flatten, serialize_nodes, serialize_scatter_edges
from scatternet.surfer import HyperlinkOverlay

from oracles import g1, make_graph, random_bipartite

HEADER = "id\tkind\tlabel\ttopic\tsite\n"
NS = "{http://graphml.graphdrawing.org/xmlns}"


def test_parse_nodes_basic():
    decls = parse_nodes(HEADER + "F1\tfact\tHigh UV\trisk\t\n")
    assert decls == [("F1", NodeKind.FACT, NodeMeta("High UV", "risk", None))]


@pytest.mark.parametrize("body,exc", [
    ("X1\tdocument\t\t\t\n", BadKind),
    ("F1\tfact\t\t\t\nF1\tfact\t\t\t\n", DuplicateId),
    ("F1\tfact\t\t\n", MalformedRow),
    ("F1\tfact\t\t\ta.com\n", MalformedRow),
])
def test_parse_nodes_errors(body, exc):
    with pytest.raises(exc):
        parse_nodes(HEADER + body)


def test_parse_nodes_error_has_line():
    with pytest.raises(DuplicateId) as info:
        parse_nodes(HEADER + "F1\tfact\t\t\t\n\nF1\tfact\t\t\t\n")
    assert info.value.line == 4
    assert str(info.value).startswith("line 4:")


def test_parse_nodes_needs_header():
    with pytest.raises(MalformedRow):
        parse_nodes("F1\tfact\t\t\t\n")


def test_parse_scatter_edges():
    assert parse_scatter_edges("P1\tF1\n") == [("P1", "F1")]
    assert parse_scatter_edges("") == []
    assert parse_scatter_edges("page_id\tfact_id\nP1\tF1\nP1\tF1\n") == [("P1", "F1"), ("P1", "F1")]
    with pytest.raises(MalformedRow) as info:
        parse_scatter_edges("P1\tF1\textra\n")
    assert info.value.line == 1


def test_parse_hyperlinks():
    assert parse_hyperlinks("P1\tP2\n") == [("P1", "P2")]
    assert parse_hyperlinks("P1\tP2\nP1\tP2\n") == [("P1", "P2")]
    with pytest.raises(SelfLink):
        parse_hyperlinks("P1\tP1\n")


def test_graph_from_text_line_numbers():
    nodes = HEADER + "P1\tpage\t\t\t\nF1\tfact\t\t\t\nF2\tfact\t\t\t\n"
    with pytest.raises(UnknownNode) as info:
        graph_from_text(nodes, "page_id\tfact_id\nP1\tF1\nP1\tF9\n")
    assert isinstance(info.value, ParseError) and info.value.line == 3
    with pytest.raises(SameKindEdge) as info:
        graph_from_text(nodes, "F1\tF2\n")
    assert info.value.line == 1


def _random_meta_graph(rng):
    g = random_bipartite(rng, max_nodes=14)
    nodes = []
    for v in g.nodes:
        kind = g.kind(v)
        site = f"s{int(rng.integers(3))}.org" if kind is NodeKind.PAGE and rng.random() < 0.5 else None
        topic = ["risk", "treatment", None][int(rng.integers(3))]
        nodes.append((v, kind, NodeMeta(f"label {v}", topic, site)))
    return build_graph(nodes, g.edges)


def test_round_trip_random_graphs(tmp_path):
    rng = np.random.default_rng(5)
    for _ in range(100):
        g = _random_meta_graph(rng)
        back = graph_from_text(serialize_nodes(g), serialize_scatter_edges(g))
        assert back == g
        assert serialize_nodes(back) == serialize_nodes(g)
    write_graph(g, tmp_path / "n.tsv", tmp_path / "s.tsv")
    assert read_graph(tmp_path / "n.tsv", tmp_path / "s.tsv") == g


def _graphml_counts(text):
    root = ET.fromstring(text)
    graph = root.find(NS + "graph")
    nodes = graph.findall(NS + "node")
    edges = graph.findall(NS + "edge")
    undirected = [e for e in edges if e.get("directed") == "false"]
    directed = [e for e in edges if e.get("directed") == "true"]
    return len(nodes), len(undirected), len(directed), graph


def test_graphml_g1():
    n, und, dir_, graph = _graphml_counts(export_graphml(g1()))
    assert (n, und, dir_) == (6, 5, 0)
    assert graph.get("edgedefault") == "undirected"


def test_graphml_empty_and_overlay():
    assert _graphml_counts(export_graphml(make_graph([], [], [])))[:3] == (0, 0, 0)
    g = g1()
    overlay = HyperlinkOverlay(g, [("P1", "P2")])
    n, und, dir_, _ = _graphml_counts(export_graphml(g, overlay))
    assert (n, und, dir_) == (6, 5, 1)


def test_graphml_node_attributes():
    g = g1()
    text = export_graphml(g, node_attributes={"community": {v: i % 2 for i, v in enumerate(g.nodes)}})
    root = ET.fromstring(text)
    keys = {k.get("id") for k in root.findall(NS + "key")}
    assert "community" in keys
    node = root.find(f"{NS}graph/{NS}node[@id='F2']")
    data = {d.get("key"): d.text for d in node.findall(NS + "data")}
    assert data["kind"] == "fact" and data["community"] == "1"


def _dot_parse(text):
    header = re.match(r"(graph|digraph) \w+ \{", text)
    assert header and text.rstrip().endswith("}")
    nodes = re.findall(r'^\s+"([^"]+)" \[', text, re.M)
    edges = re.findall(r'^\s+"([^"]+)" (--|->) "([^"]+)"', text, re.M)
    return header.group(1), nodes, edges


def test_dot_g1_and_empty():
    kind, nodes, edges = _dot_parse(export_dot(g1()))
    assert kind == "graph" and len(nodes) == 6 and len(edges) == 5
    assert all(op == "--" for _, op, _ in edges)
    kind, nodes, edges = _dot_parse(export_dot(make_graph([], [], [])))
    assert nodes == [] and edges == []


def test_dot_with_overlay_and_determinism():
    g = g1()
    overlay = HyperlinkOverlay(g, [("P1", "P2")])
    text = export_dot(g, overlay)
    kind, nodes, edges = _dot_parse(text)
    assert kind == "digraph" and len(edges) == 6
    assert text.count("dir=none") == 5
    assert export_dot(g, overlay) == text
    assert export_graphml(g, overlay) == export_graphml(g, overlay)


def test_report_document(tmp_path):
    path = tmp_path / "x.txt"
    path.write_text("abc")
    doc = ReportDocument("demo", {"rows": [{"a": 1, "b": None}], "v": float("nan")},
                         version="0", inputs={"x": file_digest(path)}, seed=3, table="rows")
    text = doc.to_json()
    assert '"v": null' in text
    assert "sha256:ba7816bf" in text
    assert doc.to_csv() == "a,b\n1,\n"
    doc.table = None
    assert "result.v," in doc.to_csv()
    assert list(flatten({"b": {"d": [1, 2], "c": 2}, "a": 0})) == [("a", 0), ("b.c", 2), ("b.d", [1, 2])]
