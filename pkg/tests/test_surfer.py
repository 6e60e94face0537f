import numpy as np
import pytest

from scatternet import HyperlinkOverlay, RandomWalker, SmartSurfer, random_walker, smart_surfer, synth_site
from scatternet.exceptions import BadParameters, EmptyMatchingSet, SelfLink, UnknownNode
from scatternet.surfer import best_page, resolve_matching

from oracles import make_graph


def hub_graph():
    facts = ["H1", "H2", "H3", "H4", "A", "B", "C"]
    edges = [("HUB", f) for f in facts[:4]] + [("PA", "A"), ("PB", "B"), ("PC", "C")]
    g = make_graph(["HUB", "PA", "PB", "PC"], facts, edges)
    return g, HyperlinkOverlay(g, [("HUB", "PA"), ("HUB", "PB"), ("HUB", "PC")])


def chain():
    g = make_graph(["P1", "P2", "P3"], ["F1", "F2", "F3"], [("P1", "F1"), ("P2", "F2"), ("P3", "F3")])
    return g, HyperlinkOverlay(g, [("P1", "P2"), ("P2", "P3")])


def test_overlay_validation():
    g, _ = chain()
    ov = HyperlinkOverlay(g, [("P1", "P2"), ("P1", "P2")])
    assert ov.edges == (("P1", "P2"),)
    with pytest.raises(SelfLink):
        HyperlinkOverlay(g, [("P1", "P1")])
    with pytest.raises(BadParameters):
        HyperlinkOverlay(g, [("P1", "F1")])
    with pytest.raises(UnknownNode):
        HyperlinkOverlay(g, [("P1", "P9")])


def test_matching():
    g = make_graph(["P1", "P2"], ["F1"], [("P1", "F1")])
    assert resolve_matching(g, "all") == ["P1", "P2"]
    assert resolve_matching(g, "all-with-facts") == ["P1"]
    with pytest.raises(EmptyMatchingSet):
        resolve_matching(g, [])
    with pytest.raises(BadParameters):
        resolve_matching(g, ["F1"])


def test_single_page_flat():
    g = make_graph(["P1"], ["F1", "F2", "F3"], [("P1", f) for f in ("F1", "F2", "F3")])
    ov = HyperlinkOverlay(g, [])
    for trace in (random_walker(g, ov, steps=5, trials=3), smart_surfer(g, ov, steps=5, trials=3)):
        assert trace.mean_facts == [3.0] * 6


def test_chain_walk():
    g, ov = chain()
    trace = random_walker(g, ov, ["P1", "P2", "P3"], steps=2, trials=5, start="P1")
    assert trace.mean_facts == [1.0, 2.0, 3.0]
    with pytest.raises(BadParameters):
        random_walker(g, ov, ["P2", "P3"], start="P1")


def test_hub_smart_surfer():
    g, ov = hub_graph()
    assert best_page(g, g.pages) == "HUB"
    trace = smart_surfer(g, ov, steps=6, trials=50, seed=3)
    assert trace.mean_facts[0] == 4.0
    # read, jump back, read, jump back, read
    assert trace.mean_facts[5] == 7.0 and trace.mean_facts[6] == 7.0
    assert trace.rows[1]["std_facts"] == 0.0


def test_all_facts_on_best_page_flat():
    facts = ["F1", "F2", "F3", "F4"]
    edges = [("P1", f) for f in facts] + [("P2", "F1"), ("P3", "F2")]
    g = make_graph(["P1", "P2", "P3"], facts, edges)
    ov = HyperlinkOverlay(g, [("P1", "P2"), ("P2", "P3"), ("P3", "P1")])
    assert smart_surfer(g, ov, steps=10, trials=20).mean_facts == [4.0] * 11


def test_smart_surfer_skips_factless_pages():
    g = make_graph(["P1", "P2", "P3"], ["F1", "F2"], [("P1", "F1"), ("P3", "F2")])
    ov = HyperlinkOverlay(g, [("P1", "P2"), ("P2", "P3")])
    # P3 is only reachable through a zero-fact page, so the surfer never gets there
    assert smart_surfer(g, ov, steps=4, trials=10).mean_facts == [1.0] * 5
    assert random_walker(g, ov, steps=4, trials=10, start="P1").mean_facts[-1] == 2.0


def test_determinism_and_monotone():
    g, ov = synth_site(seed=4)
    for fn in (random_walker, smart_surfer):
        a = fn(g, ov, steps=15, trials=30, seed=9)
        b = fn(g, ov, steps=15, trials=30, seed=9)
        assert a.to_dict() == b.to_dict()
        means = a.mean_facts
        assert all(x <= y for x, y in zip(means, means[1:]))
        assert means[-1] <= g.n_facts


def test_strongly_connected_reaches_everything():
    pages = [f"P{i}" for i in range(5)]
    facts = [f"F{i}" for i in range(5)]
    g = make_graph(pages, facts, [(p, f) for p, f in zip(pages, facts)])
    ov = HyperlinkOverlay(g, [(pages[i], pages[(i + 1) % 5]) for i in range(5)])
    assert random_walker(g, ov, steps=10, trials=20).mean_facts[-1] == 5.0
    assert smart_surfer(g, ov, steps=10, trials=20).mean_facts[-1] == 5.0


def test_greedy_choice():
    g, ov = hub_graph()
    trace = smart_surfer(g, ov, steps=6, trials=3, choice="greedy")
    assert trace.mean_facts[5] == 7.0
    with pytest.raises(BadParameters):
        smart_surfer(g, ov, choice="best")


def test_synth_site_shape():
    g, ov = synth_site(m=20, n=8, fact_pages=6, seed=1)
    assert g.n_pages == 20 and g.n_facts == 8
    assert sum(g.degree(p) > 0 for p in g.pages) <= 6
    assert all(a != b for a, b in ov.edges)
    with pytest.raises(BadParameters):
        synth_site(m=5, fact_pages=6)


def test_estimators():
    g, ov = hub_graph()
    smart = SmartSurfer(steps=6, n_trials=5, random_state=1).fit(g, ov)
    walker = RandomWalker(steps=6, n_trials=5, random_state=1).fit(g, ov)
    assert smart.mean_facts_ == smart_surfer(g, ov, steps=6, trials=5, seed=1).mean_facts
    assert walker.trace_.policy == "random"
    assert smart.get_params()["choice"] == "uniform"
