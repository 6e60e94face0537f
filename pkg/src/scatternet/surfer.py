"""Random walker and smart surfer over a scatter graph plus page hyperlinks.

Both policies count a jump (random re-landing, or returning to the best
page) as one step, so curves from the two policies share an x-axis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import BadParameters, EmptyMatchingSet, SelfLink, UnknownNode
from .graph import BipartiteGraph, NodeKind, NodeMeta, build_graph
from .null_model import synth_scatter
from .validation import check_graph, check_positive_int, check_seed, child_rngs


class HyperlinkOverlay:
    """Directed page-to-page links layered on a scatter graph's pages."""

    def __init__(self, g: BipartiteGraph, links):
        out: dict[str, set] = {p: set() for p in g.pages}
        for a, b in links:
            for x in (a, b):
                if x not in g:
                    raise UnknownNode(f"hyperlink ({a}, {b}) references unknown node {x!r}")
                if g.kind(x) is not NodeKind.PAGE:
                    raise BadParameters(f"hyperlink ({a}, {b}) touches non-page node {x!r}")
            if a == b:
                raise SelfLink(f"page {a!r} links to itself")
            out[a].add(b)
        self.out = {p: tuple(sorted(ns)) for p, ns in out.items()}
        self.edges = tuple((a, b) for a in sorted(out) for b in self.out[a])

    def __len__(self):
        return len(self.edges)

    def successors(self, p):
        return self.out[p]


def resolve_matching(g: BipartiteGraph, matching="all") -> list[str]:
    """``"all"``, ``"all-with-facts"`` or an explicit collection of page ids."""
    if matching == "all":
        pages = list(g.pages)
    elif matching == "all-with-facts":
        pages = [p for p in g.pages if g.degree(p) > 0]
    else:
        pages = sorted(set(matching))
        for p in pages:
            if p not in g:
                raise UnknownNode(f"unknown page {p!r}")
            if g.kind(p) is not NodeKind.PAGE:
                raise BadParameters(f"{p!r} is not a page")
    if not pages:
        raise EmptyMatchingSet("no matching pages")
    return pages


@dataclass
class SurferTrace:
    policy: str
    rows: list
    trials: int
    seed: int
    matching_pages: list
    jump_counts_as_step: bool = True

    @property
    def mean_facts(self):
        return [r["mean_facts"] for r in self.rows]

    def to_dict(self):
        return {"policy": self.policy, "trials": self.trials, "seed": self.seed,
                "matching_pages": self.matching_pages,
                "jump_counts_as_step": self.jump_counts_as_step, "rows": self.rows}


def _aggregate(policy, runs, trials, seed, matching):
    arr = np.asarray(runs, dtype=float)
    rows = [{"step": s, "mean_facts": float(arr[:, s].mean()), "std_facts": float(arr[:, s].std())}
            for s in range(arr.shape[1])]
    return SurferTrace(policy, rows, trials, seed, list(matching))


def _pick(rng, options):
    return options[int(rng.integers(len(options)))]


def _random_walk(g, overlay, matching, in_matching, steps, rng, start):
    current = start if start is not None else _pick(rng, matching)
    visited = {current}
    facts = set(g.neighbors(current))
    counts = [len(facts)]
    for _ in range(steps):
        options = [w for w in overlay.out[current] if w in in_matching and w not in visited]
        if not options:
            options = [p for p in matching if p not in visited]
        if options:
            current = _pick(rng, options)
            visited.add(current)
            facts.update(g.neighbors(current))
        counts.append(len(facts))
    return counts


def random_walker(g: BipartiteGraph, overlay: HyperlinkOverlay, matching_pages="all", steps=20,
                  trials=100, seed=0, start=None) -> SurferTrace:
    """Land on a random matching page, follow links to unvisited matching
    pages, and jump to a random unvisited matching page when stuck.

    ``start`` pins the landing page (used for hand-checkable walks).
    """
    g = check_graph(g)
    matching = resolve_matching(g, matching_pages)
    steps = check_positive_int(steps, "steps", minimum=0)
    trials = check_positive_int(trials, "trials")
    seed = check_seed(seed)
    if start is not None and start not in matching:
        raise BadParameters(f"start page {start!r} is not a matching page")
    in_matching = set(matching)
    runs = [_random_walk(g, overlay, matching, in_matching, steps, rng, start)
            for rng in child_rngs(seed, trials)]
    return _aggregate("random", runs, trials, seed, matching)


def best_page(g: BipartiteGraph, pages):
    return min(pages, key=lambda p: (-g.degree(p), p))


def _reaches_unvisited(start, qualifying_out, visited):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in qualifying_out[v]:
            if w not in visited:
                return True
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def _smart_walk(g, best, qualifying_out, steps, rng, choice):
    current = best
    visited = {best}
    facts = set(g.neighbors(best))
    counts = [len(facts)]
    restarting = False
    for _ in range(steps):
        fresh = [w for w in qualifying_out[current] if w not in visited]
        if fresh:
            if choice == "greedy":
                current = min(fresh, key=lambda w: (-len(set(g.neighbors(w)) - facts), w))
            else:
                current = _pick(rng, fresh)
            visited.add(current)
            facts.update(g.neighbors(current))
            restarting = False
        elif restarting or current == best:
            # walking back out from the best page through pages already read
            through = [w for w in qualifying_out[current] if _reaches_unvisited(w, qualifying_out, visited)]
            if through:
                current = _pick(rng, through)
                restarting = True
            elif current != best and _reaches_unvisited(best, qualifying_out, visited):
                current, restarting = best, True
            else:
                counts.extend([len(facts)] * (steps + 1 - len(counts)))
                break
        elif _reaches_unvisited(best, qualifying_out, visited):
            current, restarting = best, True
        else:
            counts.extend([len(facts)] * (steps + 1 - len(counts)))
            break
        counts.append(len(facts))
    return counts


def smart_surfer(g: BipartiteGraph, overlay: HyperlinkOverlay, matching_pages="all", steps=20,
                 trials=100, seed=0, choice="uniform") -> SurferTrace:
    """Start on the most fact-rich matching page and follow only links to
    matching pages that hold at least one fact, preferring unvisited ones.

    When stuck, jump back to the best page and head out again; stop once no
    unvisited fact-bearing page can be reached from it. ``choice="greedy"``
    takes the link with the most new facts instead of a uniform pick.
    """
    g = check_graph(g)
    matching = resolve_matching(g, matching_pages)
    steps = check_positive_int(steps, "steps", minimum=0)
    trials = check_positive_int(trials, "trials")
    seed = check_seed(seed)
    if choice not in ("uniform", "greedy"):
        raise BadParameters(f"choice must be 'uniform' or 'greedy', got {choice!r}")
    qualifying = {p for p in matching if g.degree(p) > 0}
    qualifying_out = {p: [w for w in overlay.out[p] if w in qualifying] for p in g.pages}
    best = best_page(g, matching)
    runs = [_smart_walk(g, best, qualifying_out, steps, rng, choice) for rng in child_rngs(seed, trials)]
    return _aggregate("smart", runs, trials, seed, matching)


def synth_site(m=36, n=13, fact_pages=14, links_per_page=3, exponent=1.5, seed=0,
               related_cycle=True):
    """A website-like fixture: ``m`` pages, of which ``fact_pages`` hold facts
    with heavy-tailed counts, plus random directed links (``links_per_page``
    out-links per page). Returns ``(graph, overlay)``.

    ``related_cycle`` adds a directed cycle through the fact-bearing pages in
    random order, so every fact page can be browsed to from every other.
    """
    m = check_positive_int(m, "m")
    fact_pages = check_positive_int(fact_pages, "fact_pages")
    if fact_pages > m:
        raise BadParameters("fact_pages cannot exceed m")
    links_per_page = check_positive_int(links_per_page, "links_per_page", minimum=0)
    core = synth_scatter(fact_pages, n, "heavytail", seed=seed, exponent=exponent)
    width = len(str(m))
    rng = np.random.default_rng(check_seed(seed) + 1)
    # shuffle so fact-bearing pages are not simply the first ids
    names = [f"P{i:0{width}d}" for i in rng.permutation(m) + 1]
    rename = dict(zip(core.pages, names))
    nodes = [(names[i], NodeKind.PAGE, NodeMeta()) for i in range(m)]
    nodes += [(f, NodeKind.FACT, NodeMeta()) for f in core.facts]
    g = build_graph(nodes, [(rename[p], f) for p, f in core.edges])
    links = []
    for p in g.pages:
        others = [q for q in g.pages if q != p]
        k = min(links_per_page, len(others))
        for j in rng.choice(len(others), size=k, replace=False):
            links.append((p, others[int(j)]))
    if related_cycle:
        bearing = [p for p in g.pages if g.degree(p) > 0]
        ring = [bearing[int(i)] for i in rng.permutation(len(bearing))]
        links += [(a, b) for a, b in zip(ring, ring[1:] + ring[:1]) if a != b]
    return g, HyperlinkOverlay(g, links)


class _SurferEstimator(BaseEstimator):
    def fit(self, g, overlay, y=None):
        self.trace_ = self._run(g, overlay)
        self.mean_facts_ = self.trace_.mean_facts
        return self


class RandomWalker(_SurferEstimator):
    def __init__(self, matching_pages="all", steps=20, n_trials=100, random_state=0, start=None):
        self.matching_pages = matching_pages
        self.steps = steps
        self.n_trials = n_trials
        self.random_state = random_state
        self.start = start

    def _run(self, g, overlay):
        return random_walker(g, overlay, self.matching_pages, self.steps, self.n_trials,
                             self.random_state, self.start)


class SmartSurfer(_SurferEstimator):
    def __init__(self, matching_pages="all", steps=20, n_trials=100, random_state=0, choice="uniform"):
        self.matching_pages = matching_pages
        self.steps = steps
        self.n_trials = n_trials
        self.random_state = random_state
        self.choice = choice

    def _run(self, g, overlay):
        return smart_surfer(g, overlay, self.matching_pages, self.steps, self.n_trials,
                            self.random_state, self.choice)
