"""Degree distributions, bipartite assortativity, C4 clustering and betweenness."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .exceptions import TooFewEdges, ZeroVariance
from .graph import BipartiteGraph


def pearson(xs, ys):
    """Pearson correlation, or None when either series has zero variance.

    Integer inputs are summed exactly, so hand-checkable cases come out exact.
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("series differ in length")
    if n < 2:
        return None
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    syy = sum(y * y for y in ys)
    sxy = sum(x * y for x, y in zip(xs, ys))
    vx = n * sxx - sx * sx
    vy = n * syy - sy * sy
    # relative guard: float series that are constant up to rounding
    if vx <= 1e-12 * n * sxx or vy <= 1e-12 * n * syy:
        return None
    r = (n * sxy - sx * sy) / math.sqrt(vx * vy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class DegreeRow:
    k: int
    count: int
    ccdf: float


def degree_distribution(g: BipartiteGraph, kind) -> list[DegreeRow]:
    """Counts and complementary cumulative fractions P(degree >= k), ascending k."""
    nodes = g.of_kind(kind)
    counts = Counter(g.degree(v) for v in nodes)
    total = len(nodes)
    rows = []
    at_least = total
    for k in sorted(counts):
        rows.append(DegreeRow(k, counts[k], at_least / total))
        at_least -= counts[k]
    return rows


@dataclass
class AssortativityReport:
    r: float | None
    n_edges: int
    null: object = None

    @property
    def defined(self) -> bool:
        return self.r is not None

    def to_dict(self):
        d = {"r": self.r, "defined": self.defined, "n_edges": self.n_edges}
        if self.null is not None:
            d["null"] = self.null
        return d


def edge_degree_pairs(g: BipartiteGraph):
    return [(g.degree(p), g.degree(f)) for p, f in g.edges]


def assortativity_value(g: BipartiteGraph):
    pairs = edge_degree_pairs(g)
    return pearson([a for a, _ in pairs], [b for _, b in pairs])


def bipartite_assortativity(g: BipartiteGraph) -> AssortativityReport:
    """Correlation between page degree and fact degree across containment edges."""
    if g.n_edges < 2:
        raise TooFewEdges(f"assortativity needs at least 2 edges, graph has {g.n_edges}")
    return AssortativityReport(assortativity_value(g), g.n_edges)


@dataclass
class ClusteringReport:
    cycles4: int
    quadruples: int
    c4: float
    null: object = None

    def to_dict(self):
        d = {"cycles4": self.cycles4, "quadruples": self.quadruples, "c4": self.c4}
        if self.null is not None:
            d["null"] = self.null
        return d


def c4_from_counts(cycles4, quadruples) -> float:
    return 4 * cycles4 / quadruples if quadruples else 0.0


def count_cycles4(g: BipartiteGraph) -> int:
    # every 4-cycle is one pair of same-side nodes sharing two neighbours
    side = g.pages if len(g.pages) >= len(g.facts) else g.facts
    shared = Counter()
    for w in side:
        for u, v in combinations(g.neighbors(w), 2):
            shared[u, v] += 1
    return sum(c * (c - 1) // 2 for c in shared.values())


def count_quadruples(g: BipartiteGraph) -> int:
    # a 3-edge path is fixed by its middle edge; no triangles in a bipartite graph
    return sum((g.degree(p) - 1) * (g.degree(f) - 1) for p, f in g.edges)


def clustering_c4(g: BipartiteGraph) -> ClusteringReport:
    cycles, quads = count_cycles4(g), count_quadruples(g)
    return ClusteringReport(cycles, quads, c4_from_counts(cycles, quads))


def _index_adjacency(g: BipartiteGraph):
    index = {v: i for i, v in enumerate(g.nodes)}
    return [[index[w] for w in g.neighbors(v)] for v in g.nodes]


def brandes(adj, is_target, alive=None):
    """Betweenness on an integer adjacency list, summed over ordered
    (source, target) pairs with both ends flagged in ``is_target``.

    ``alive`` optionally masks nodes out of the graph. Sources run in index
    order, so the float sums are reproducible.
    """
    n = len(adj)
    scores = [0.0] * n
    sigma = [0] * n
    dist = [-1] * n
    delta = [0.0] * n
    for s in range(n):
        if not is_target[s] or (alive is not None and not alive[s]):
            continue
        order = [s]
        preds = {s: []}
        sigma[s] = 1
        dist[s] = 0
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            dv = dist[v] + 1
            sv = sigma[v]
            for w in adj[v]:
                if dist[w] < 0:
                    if alive is not None and not alive[w]:
                        continue
                    dist[w] = dv
                    order.append(w)
                    preds[w] = [v]
                    sigma[w] = sv
                elif dist[w] == dv:
                    sigma[w] += sv
                    preds[w].append(v)
        for w in reversed(order):
            coeff = ((1.0 if is_target[w] else 0.0) + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                scores[w] += delta[w]
        for v in order:
            sigma[v] = 0
            dist[v] = -1
            delta[v] = 0.0
    return scores


def betweenness(g: BipartiteGraph, endpoints="all") -> dict[str, float]:
    """Unnormalised shortest-path betweenness over unordered endpoint pairs.

    ``endpoints="facts"`` only counts paths whose two ends are both facts.
    """
    if endpoints == "all":
        is_target = [True] * len(g.nodes)
    elif endpoints == "facts":
        facts = set(g.facts)
        is_target = [v in facts for v in g.nodes]
    else:
        raise ValueError(f"endpoints must be 'all' or 'facts', got {endpoints!r}")
    scores = brandes(_index_adjacency(g), is_target)
    return {v: x / 2.0 for v, x in zip(g.nodes, scores)}


def degree_betweenness_correlation(g: BipartiteGraph, scores=None, kind=None) -> float:
    """Pearson r between degree and betweenness over all nodes (or one kind)."""
    nodes = g.nodes if kind is None else g.of_kind(kind)
    if scores is None:
        scores = betweenness(g)
    r = pearson([g.degree(v) for v in nodes], [scores[v] for v in nodes])
    if r is None:
        raise ZeroVariance("degree or betweenness is constant over the nodes")
    return r
