"""Page-removal robustness: how fact connectivity degrades as documents go away."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import BadParameters, NoSiteMetadata
from .graph import BipartiteGraph, fact_connectivity
from .metrics import _index_adjacency, betweenness, brandes
from .validation import check_fractions, check_graph, check_positive_int, check_seed, child_rngs

STRATEGIES = ("random", "degree", "betweenness", "site")
DEFAULT_TRIALS = 100
DEFAULT_FRACTIONS = tuple(round(0.05 * i, 2) for i in range(21))


@dataclass(frozen=True)
class RemovalStrategy:
    """``random`` (averaged over ``trials``), ``degree``, ``betweenness``
    (static ranking unless ``recompute``; path ends per ``endpoints``) or
    ``site`` (all pages of ``site``)."""

    kind: str
    trials: int = DEFAULT_TRIALS
    recompute: bool = False
    site: str | None = None
    endpoints: str = "all"

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise BadParameters(f"strategy must be one of {STRATEGIES}, got {self.kind!r}")
        if self.kind == "random":
            check_positive_int(self.trials, "trials")
        if self.kind == "site" and not self.site:
            raise BadParameters("site strategy needs a site")
        if self.endpoints not in ("all", "facts"):
            raise BadParameters(f"endpoints must be 'all' or 'facts', got {self.endpoints!r}")

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "random":
            d["trials"] = self.trials
        if self.kind == "betweenness":
            d["recompute"] = self.recompute
            d["endpoints"] = self.endpoints
        if self.kind == "site":
            d["site"] = self.site
        return d


@dataclass
class RobustnessCurve:
    strategy: RemovalStrategy
    rows: list
    seed: int | None
    trials: int
    n_facts: int
    initial_giant: int
    removal_order: list | None = field(default=None, repr=False)

    def half_disconnected_fraction(self):
        """Smallest grid fraction at which at least half of the facts in the
        initial giant fact group have left it (None if never reached)."""
        for row in self.rows:
            if self.initial_giant - row["giant_fact_count"] >= self.initial_giant / 2:
                return row["fraction_removed"]
        return None

    def to_dict(self):
        return {"strategy": self.strategy.to_dict(), "seed": self.seed, "trials": self.trials,
                "n_facts": self.n_facts, "initial_giant": self.initial_giant,
                "half_disconnected_fraction": self.half_disconnected_fraction(), "rows": self.rows}


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def fact_groups_after_removal(g: BipartiteGraph, removed) -> list[int]:
    """Sizes of fact groups (facts linked through surviving pages)."""
    removed = set(removed)
    parent = {f: f for f in g.facts}
    for p in g.pages:
        if p in removed:
            continue
        ns = g.neighbors(p)
        if not ns:
            continue
        root = _find(parent, ns[0])
        for f in ns[1:]:
            r = _find(parent, f)
            if r != root:
                parent[r] = root
    sizes: dict = {}
    for f in g.facts:
        r = _find(parent, f)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values(), reverse=True)


def measure(g: BipartiteGraph, removed):
    """(giant fact count, isolated facts, fact group count) after removal.

    A group only counts as giant if it holds at least two facts; a lone fact
    reaches nothing.
    """
    sizes = fact_groups_after_removal(g, removed)
    giant = sizes[0] if sizes and sizes[0] >= 2 else 0
    return giant, g.n_facts - giant, len(sizes)


def degree_order(g: BipartiteGraph):
    return sorted(g.pages, key=lambda p: (-g.degree(p), p))


def betweenness_order(g: BipartiteGraph, recompute=False, endpoints="all"):
    """Pages by decreasing betweenness (ties lexicographic). With
    ``recompute``, the ranking is redone on the surviving graph after every
    removal."""
    if not recompute:
        scores = betweenness(g, endpoints)
        return sorted(g.pages, key=lambda p: (-scores[p], p))
    adj = _index_adjacency(g)
    nodes = g.nodes
    facts = set(g.facts)
    is_target = [endpoints == "all" or v in facts for v in nodes]
    alive = [True] * len(nodes)
    page_idx = [i for i, v in enumerate(nodes) if v not in facts]
    order = []
    remaining = set(page_idx)
    while remaining:
        scores = brandes(adj, is_target, alive)
        # page_idx is lexicographic, so min picks the smallest id among ties
        top = min(remaining, key=lambda i: (-scores[i], i))
        if scores[top] == 0.0:
            order.extend(nodes[i] for i in sorted(remaining))
            break
        order.append(nodes[top])
        alive[top] = False
        remaining.discard(top)
    return order


def _count(f, m):
    # guard against 0.3 * 10 = 3.0000000000000004 style rounding
    return min(m, math.floor(f * m + 1e-9))


def remove_and_measure(g: BipartiteGraph, strategy, fractions=DEFAULT_FRACTIONS, seed=0) -> RobustnessCurve:
    """Remove ``floor(f * m)`` pages for each grid fraction ``f`` and measure
    fact connectivity on what survives.

    Only pages are removed. Random removal averages over ``strategy.trials``
    nested orderings (one child seed per trial). The site strategy ignores
    the grid and yields one row for the site's pages.
    """
    g = check_graph(g)
    if isinstance(strategy, str):
        strategy = RemovalStrategy(strategy)
    fractions = check_fractions(fractions)
    seed = check_seed(seed)
    m = g.n_pages
    initial_giant = measure(g, ())[0]

    if strategy.kind == "site":
        removed = [p for p in g.pages if g.meta(p).site == strategy.site]
        if not removed:
            raise BadParameters(f"no pages on site {strategy.site!r}")
        giant, isolated, comps = measure(g, removed)
        row = _row(len(removed) / m, len(removed), [giant], [isolated], [comps])
        return RobustnessCurve(strategy, [row], None, 1, g.n_facts, initial_giant, removed)

    if strategy.kind == "random":
        orders = [list(rng.permutation(g.pages)) for rng in child_rngs(seed, strategy.trials)]
        used_seed = seed
    elif strategy.kind == "degree":
        orders, used_seed = [degree_order(g)], None
    else:
        orders, used_seed = [betweenness_order(g, strategy.recompute, strategy.endpoints)], None

    rows = []
    for f in fractions:
        k = _count(f, m)
        stats = [measure(g, order[:k]) for order in orders]
        rows.append(_row(f, k, *zip(*stats)))
    return RobustnessCurve(strategy, rows, used_seed, len(orders), g.n_facts, initial_giant,
                           orders[0] if len(orders) == 1 else None)


def _row(f, k, giants, isolated, comps):
    giants = np.asarray(giants, dtype=float)
    return {
        "fraction_removed": float(f),
        "pages_removed": k,
        "giant_fact_count": float(giants.mean()),
        "giant_fact_std": float(giants.std()),
        "isolated_facts": float(np.mean(isolated)),
        "components": float(np.mean(comps)),
    }


def site_removal_report(g: BipartiteGraph) -> list[dict]:
    """One row per site: what taking all of that site's pages offline does.

    ``facts_disconnected`` lists facts that were in the giant fact group and
    are no longer in it; ``facts_lost_entirely`` lists facts left with no
    containing page at all.
    """
    g = check_graph(g)
    sites = sorted({g.meta(p).site for p in g.pages if g.meta(p).site})
    if not sites:
        raise NoSiteMetadata("no page carries site metadata")
    before = _giant_members(g, ())
    rows = []
    for site in sites:
        removed = {p for p in g.pages if g.meta(p).site == site}
        after = _giant_members(g, removed)
        lost = [f for f in g.facts
                if g.degree(f) > 0 and all(p in removed for p in g.neighbors(f))]
        rows.append({
            "site": site,
            "pages_removed": len(removed),
            "facts_disconnected": sorted(before - after),
            "facts_lost_entirely": lost,
        })
    return rows


def _giant_members(g, removed):
    groups = fact_connectivity(g.without_pages(removed))
    if not groups:
        return set()
    best = max(groups, key=len)
    return set(best) if len(best) >= 2 else set()


class RemovalSimulation(BaseEstimator):
    """Estimator form of :func:`remove_and_measure`.

    After ``fit(g)``: ``curve_`` and ``half_disconnected_fraction_``.
    """

    def __init__(self, strategy="degree", fractions=DEFAULT_FRACTIONS, n_trials=DEFAULT_TRIALS,
                 recompute=False, site=None, endpoints="all", random_state=0):
        self.strategy = strategy
        self.fractions = fractions
        self.n_trials = n_trials
        self.recompute = recompute
        self.site = site
        self.endpoints = endpoints
        self.random_state = random_state

    def fit(self, g, y=None):
        strategy = RemovalStrategy(self.strategy, self.n_trials, self.recompute, self.site,
                                   self.endpoints)
        self.curve_ = remove_and_measure(g, strategy, self.fractions, self.random_state)
        self.half_disconnected_fraction_ = self.curve_.half_disconnected_fraction()
        return self
