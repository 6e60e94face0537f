"""Modularity and greedy agglomerative community detection on the plain
(unipartite view of the) scatter graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from sklearn.base import BaseEstimator, ClusterMixin

from .exceptions import IncompletePartition, NoEdges
from .graph import BipartiteGraph
from .validation import check_graph


def _relabel(groups):
    """Community ids numbered by each group's smallest member."""
    ordered = sorted(sorted(gr) for gr in groups)
    return {v: cid for cid, gr in enumerate(ordered) for v in gr}, [tuple(gr) for gr in ordered]


def modularity(g: BipartiteGraph, partition) -> float:
    """Q = sum over communities of (internal edge fraction - endpoint fraction^2).

    ``partition`` maps every node to a community label (any hashable), or is
    an iterable of node groups.
    """
    if not isinstance(partition, dict):
        partition = {v: i for i, grp in enumerate(partition) for v in grp}
    missing = [v for v in g.nodes if v not in partition]
    if missing:
        raise IncompletePartition(f"partition misses {len(missing)} node(s), e.g. {missing[0]!r}")
    m = g.n_edges
    if m == 0:
        return 0.0
    internal: dict = {}
    degree_sum: dict = {}
    for p, f in g.edges:
        if partition[p] == partition[f]:
            internal[partition[p]] = internal.get(partition[p], 0) + 1
    for v in g.nodes:
        degree_sum[partition[v]] = degree_sum.get(partition[v], 0) + g.degree(v)
    # integer numerator over 4 m^2
    num = sum(4 * m * internal.get(c, 0) - d * d for c, d in degree_sum.items())
    return num / (4 * m * m)


@dataclass
class Partition:
    labels: dict
    communities: list
    modularity: float
    merge_history: list = field(default_factory=list)

    @property
    def n_communities(self) -> int:
        return len(self.communities)

    def to_dict(self):
        return {
            "modularity": self.modularity,
            "n_communities": self.n_communities,
            "communities": [list(c) for c in self.communities],
            "merge_history": [{"a": a, "b": b, "delta_q": dq} for a, b, dq in self.merge_history],
        }


def greedy_modularity(g: BipartiteGraph) -> Partition:
    """Agglomerative greedy modularity maximisation.

    Starts from singletons and repeatedly merges the connected pair of
    communities with the largest modularity gain (ties: lexicographically
    smallest pair of community representatives) until no connected pair is
    left. Returns the partition with the highest modularity seen; on equal
    modularity the later (coarser) one wins. Isolated nodes stay singletons.
    """
    check_graph(g)
    m = g.n_edges
    if m == 0:
        raise NoEdges("community detection needs at least one edge")
    two_m = 2 * m
    # communities keyed by representative = smallest member id
    members = {v: [v] for v in g.nodes}
    dsum = {v: g.degree(v) for v in g.nodes}
    links: dict[str, dict[str, int]] = {v: {} for v in g.nodes}
    for p, f in g.edges:
        links[p][f] = links[p].get(f, 0) + 1
        links[f][p] = links[f].get(p, 0) + 1

    # exact arithmetic: Q * 4m^2 and dQ * 2m^2 are integers
    q_num = -sum(d * d for d in dsum.values())
    best_q, best_groups = q_num, [list(v) for v in members.values()]
    history = []
    while True:
        best_key = None
        for a in sorted(links):
            for b, lab in links[a].items():
                if b <= a:
                    continue
                gain = two_m * lab - dsum[a] * dsum[b]
                key = (-gain, a, b)
                if best_key is None or key < best_key:
                    best_key = key
        if best_key is None:
            break
        neg_gain, a, b = best_key
        # merge b into a (a < b keeps a as representative)
        members[a].extend(members.pop(b))
        dsum[a] += dsum.pop(b)
        for c, lab in links.pop(b).items():
            if c == a:
                continue
            links[c].pop(b)
            links[a][c] = links[a].get(c, 0) + lab
            links[c][a] = links[c].get(a, 0) + lab
        links[a].pop(b, None)
        q_num += -2 * neg_gain
        history.append((a, b, -neg_gain / (2 * m * m)))
        if q_num >= best_q:
            best_q, best_groups = q_num, [list(v) for v in members.values()]

    labels, communities = _relabel(best_groups)
    return Partition(labels, communities, best_q / (4 * m * m), history)


class GreedyModularity(ClusterMixin, BaseEstimator):
    """Estimator wrapper around :func:`greedy_modularity`.

    ``labels_`` follows ``g.nodes`` order; ``partition_`` keeps the full result.
    """

    def fit(self, g, y=None):
        self.partition_ = greedy_modularity(g)
        self.labels_ = [self.partition_.labels[v] for v in g.nodes]
        self.modularity_ = self.partition_.modularity
        self.n_communities_ = self.partition_.n_communities
        return self

