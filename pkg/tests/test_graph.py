import pytest

from scatternet import (NodeKind, NodeMeta, build_graph, connected_components, degree, fact_connectivity,
                        one_mode_projection, projection_components)
from scatternet.exceptions import BadParameters, DuplicateNode, SameKindEdge, UnknownNode

from oracles import g1, k22, make_graph


def test_minimal_graph():
    g = make_graph(["P1"], ["F1"], [("P1", "F1")])
    assert (g.n_pages, g.n_facts, g.n_edges) == (1, 1, 1)


def test_same_kind_edge_rejected():
    with pytest.raises(SameKindEdge):
        make_graph([], ["F1", "F2"], [("F1", "F2")])


def test_duplicate_edges_collapse_and_either_order():
    g = make_graph(["P1"], ["F1"], [("P1", "F1"), ("F1", "P1"), ("P1", "F1")])
    assert g.n_edges == 1
    assert g.edges == (("P1", "F1"),)


def test_unknown_and_duplicate_nodes():
    with pytest.raises(UnknownNode):
        make_graph(["P1"], [], [("P1", "F9")])
    with pytest.raises(DuplicateNode):
        build_graph([("X", "page"), ("X", "fact")], [])


def test_fact_with_site_rejected():
    with pytest.raises(BadParameters):
        build_graph([("F1", "fact", NodeMeta(site="a.com"))], [])


def test_degrees_g1():
    g = g1()
    assert degree(g, "P1") == 2
    assert degree(g, "F1") == 1
    iso = make_graph(["P1"], ["F1"], [])
    assert degree(iso, "F1") == 0
    with pytest.raises(UnknownNode):
        degree(g, "nope")


def test_kind_and_meta_accessors():
    g = build_graph([("P1", "page", {"label": "home", "site": "a.com"}), ("F1", "fact")], [("P1", "F1")])
    assert g.kind("P1") is NodeKind.PAGE
    assert g.meta("P1").site == "a.com"
    assert g.meta("F1") == NodeMeta()
    assert "P1" in g and "zz" not in g


def test_projection_g1_onto_facts():
    proj = one_mode_projection(g1(), "fact")
    assert proj.edges == (("F1", "F2", 1), ("F2", "F3", 1))
    assert proj.weight("F1", "F3") == 0


def test_projection_k22_weight_two():
    pages, facts, edges = k22()
    proj = one_mode_projection(make_graph(pages, facts, edges), NodeKind.FACT)
    assert proj.edges == (("F1", "F2", 2),)
    proj = one_mode_projection(make_graph(pages, facts, edges), "page")
    assert proj.weight("P2", "P1") == 2


def test_projection_single_edge_empty():
    proj = one_mode_projection(make_graph(["P1"], ["F1"], [("P1", "F1")]), "fact")
    assert proj.edges == ()
    assert projection_components(proj).n_components == 1


def test_components():
    comps = connected_components(g1())
    assert comps.n_components == 1 and list(comps.sizes) == [6]
    g = make_graph(["P1", "P2", "P3"], ["F1", "F2", "F3", "F4"], g1().edges)
    comps = connected_components(g)
    assert sorted(comps.sizes) == [1, 6]
    assert comps.members(comps.giant) == ["F1", "F2", "F3", "P1", "P2", "P3"]
    empty = make_graph([], [], [])
    assert connected_components(empty).n_components == 0
    assert connected_components(empty).giant is None


def test_fact_connectivity():
    assert fact_connectivity(g1()) == [("F1", "F2", "F3")]
    # every rare fact alone in its own document
    g = make_graph(["P1", "P2", "P3"], ["F1", "F2", "F3"], [("P1", "F1"), ("P2", "F2"), ("P3", "F3")])
    assert fact_connectivity(g) == [("F1",), ("F2",), ("F3",)]
    star = make_graph(["P1"], ["F1", "F2", "F3", "F4"], [("P1", f) for f in ["F1", "F2", "F3", "F4"]])
    assert fact_connectivity(star) == [("F1", "F2", "F3", "F4")]
    proj = one_mode_projection(star, "fact")
    assert len(proj.edges) == 6


def test_without_pages_and_with_edges():
    g = g1()
    h = g.without_pages(["P1"])
    assert "P1" not in h and h.n_facts == 3 and h.n_edges == 3
    assert g.with_edges([("P3", "F1")]).n_edges == 1
    assert g == make_graph(["P1", "P2", "P3"], ["F1", "F2", "F3"], list(reversed(g.edges)))
