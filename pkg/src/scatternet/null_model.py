"""Degree-preserving randomization, Monte-Carlo null summaries and a synthetic
scatter-network generator used for fixtures and benchmarks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import BadParameters, MetricUndefined
from .graph import BipartiteGraph, NodeKind, NodeMeta, build_graph
from .metrics import assortativity_value, clustering_c4
from .validation import (check_graph, check_positive_float, check_positive_int, check_seed,
                         child_rngs)

DEFAULT_SWAP_FACTOR = 10.0
DEFAULT_SAMPLES = 200


def swap_attempts(n_edges, factor=DEFAULT_SWAP_FACTOR) -> int:
    return math.ceil(check_positive_float(factor, "swap factor") * n_edges)


def _double_edge_swaps(g: BipartiteGraph, rng, factor):
    edges = list(g.edges)
    present = set(edges)
    n = len(edges)
    attempts = swap_attempts(n, factor)
    picks = rng.integers(0, n, size=(attempts, 2))
    accepted = 0
    for i, j in picks.tolist():
        p1, f1 = edges[i]
        p2, f2 = edges[j]
        if p1 == p2 or f1 == f2 or (p1, f2) in present or (p2, f1) in present:
            continue
        present.difference_update(((p1, f1), (p2, f2)))
        present.update(((p1, f2), (p2, f1)))
        edges[i] = (p1, f2)
        edges[j] = (p2, f1)
        accepted += 1
    return g.with_edges(edges), accepted


def randomize_degree_preserving(g: BipartiteGraph, seed=0, swap_factor=DEFAULT_SWAP_FACTOR) -> BipartiteGraph:
    """Rewire containment edges by double swaps, keeping every node's degree.

    ``ceil(swap_factor * |E|)`` swaps are proposed; a proposal
    ``(p1,f1),(p2,f2) -> (p1,f2),(p2,f1)`` is rejected (but still counted) if it
    would create a duplicate edge.
    """
    check_graph(g, min_edges=2)
    rng = np.random.default_rng(check_seed(seed))
    return _double_edge_swaps(g, rng, swap_factor)[0]


METRICS = {
    "assortativity": assortativity_value,
    "c4": lambda g: clustering_c4(g).c4,
}


def normal_test(observed, mean, std):
    """z-score and two-sided normal p-value. Both are None when std is 0 and
    the observation differs from the mean."""
    if std > 0:
        z = (observed - mean) / std
        return z, math.erfc(abs(z) / math.sqrt(2.0))
    if observed == mean:
        return 0.0, 1.0
    return None, None


@dataclass
class NullSummary:
    metric: str
    observed: float
    mean: float
    std: float
    z: float | None
    p: float | None
    p_empirical: float
    samples: int
    seed: int
    swap_factor: float
    values: list

    def to_dict(self):
        return {
            "metric": self.metric, "observed": self.observed, "mean": self.mean,
            "std": self.std, "z": self.z, "p": self.p, "p_empirical": self.p_empirical,
            "samples": self.samples, "seed": self.seed, "swap_factor": self.swap_factor,
            "values": self.values,
        }


def null_distribution(g: BipartiteGraph, metric="c4", samples=DEFAULT_SAMPLES, seed=0,
                      swap_factor=DEFAULT_SWAP_FACTOR) -> NullSummary:
    """Evaluate ``metric`` on ``samples`` independent degree-preserving rewirings.

    Sample ``i`` uses child seed ``i`` of ``seed``, so its value does not depend
    on how many samples are drawn. ``p_empirical`` is the fraction of samples
    at least as large as the observed value.
    """
    if metric not in METRICS:
        raise BadParameters(f"metric must be one of {sorted(METRICS)}, got {metric!r}")
    check_graph(g, min_edges=2)
    samples = check_positive_int(samples, "samples", minimum=2)
    seed = check_seed(seed)
    fn = METRICS[metric]
    observed = fn(g)
    if observed is None:
        raise MetricUndefined(f"{metric} is undefined on the observed graph")
    values = []
    for i, rng in enumerate(child_rngs(seed, samples)):
        value = fn(_double_edge_swaps(g, rng, swap_factor)[0])
        if value is None:
            raise MetricUndefined(f"{metric} is undefined on randomized sample {i}", sample_index=i)
        values.append(value)
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    std = float(arr.std(ddof=1))
    z, p = normal_test(observed, mean, std)
    return NullSummary(metric, observed, mean, std, z, p,
                       float(np.mean(arr >= observed)), samples, seed, float(swap_factor), values)


def synth_scatter(m, n, page_degree_law="uniform", seed=0, exponent=2.0, n_sites=None) -> BipartiteGraph:
    """Random scatter network with ``m`` pages and ``n`` facts.

    Page degrees are drawn from ``uniform`` (1..n) or ``heavytail`` (P(k) ~
    k^-exponent on 1..n). Each page then picks its facts one at a time with
    probability proportional to the fact's current degree + 1. If ``n_sites``
    is given, pages are assigned uniformly at random to that many sites.
    """
    m = check_positive_int(m, "m")
    n = check_positive_int(n, "n")
    seed = check_seed(seed)
    rng = np.random.default_rng(seed)
    ks = np.arange(1, n + 1)
    if page_degree_law == "uniform":
        probs = np.full(n, 1.0 / n)
    elif page_degree_law == "heavytail":
        if not exponent > 0:
            raise BadParameters(f"exponent must be > 0, got {exponent!r}")
        w = ks.astype(float) ** -float(exponent)
        probs = w / w.sum()
    else:
        raise BadParameters(f"unknown page degree law {page_degree_law!r}")
    if n_sites is not None:
        n_sites = check_positive_int(n_sites, "n_sites")

    pw, fw = len(str(m)), len(str(n))
    pages = [f"P{i:0{pw}d}" for i in range(1, m + 1)]
    facts = [f"F{j:0{fw}d}" for j in range(1, n + 1)]
    fact_degree = np.zeros(n)
    edges = []
    degrees = rng.choice(ks, size=m, p=probs)
    sites = rng.integers(0, n_sites, size=m) if n_sites else None
    for page, k in zip(pages, degrees.tolist()):
        available = np.ones(n, dtype=bool)
        for _ in range(k):
            w = (fact_degree + 1.0) * available
            j = int(rng.choice(n, p=w / w.sum()))
            available[j] = False
            fact_degree[j] += 1
            edges.append((page, facts[j]))

    sw = len(str(n_sites)) if n_sites else 0
    nodes = [(p, NodeKind.PAGE, NodeMeta(site=f"site{sites[i]:0{sw}d}" if n_sites else None))
             for i, p in enumerate(pages)]
    nodes += [(f, NodeKind.FACT, None) for f in facts]
    return build_graph(nodes, edges)


class DegreePreservingRandomizer(TransformerMixin, BaseEstimator):
    """Transformer returning a degree-preserving rewiring of a scatter graph.

    Parameters
    ----------
    swap_factor : float, default=10.0
        Swap proposals per containment edge.
    random_state : int, default=0
    """

    def __init__(self, swap_factor=DEFAULT_SWAP_FACTOR, random_state=0):
        self.swap_factor = swap_factor
        self.random_state = random_state

    def fit(self, g, y=None):
        g = check_graph(g, min_edges=2)
        self.n_edges_ = g.n_edges
        self.n_swap_attempts_ = swap_attempts(g.n_edges, self.swap_factor)
        return self

    def transform(self, g):
        check_is_fitted(self)
        g = check_graph(g, min_edges=2)
        rng = np.random.default_rng(check_seed(self.random_state))
        out, self.n_swaps_accepted_ = _double_edge_swaps(g, rng, self.swap_factor)
        return out


class NullModelTest(BaseEstimator):
    """Significance of a scalar metric against degree-preserving rewirings.

    After ``fit(g)``, ``summary_`` holds the :class:`NullSummary` and
    ``z_``/``p_`` mirror its test statistics.
    """

    def __init__(self, metric="c4", n_samples=DEFAULT_SAMPLES, swap_factor=DEFAULT_SWAP_FACTOR,
                 random_state=0):
        self.metric = metric
        self.n_samples = n_samples
        self.swap_factor = swap_factor
        self.random_state = random_state

    def fit(self, g, y=None):
        self.summary_ = null_distribution(g, self.metric, self.n_samples, self.random_state,
                                          self.swap_factor)
        self.z_ = self.summary_.z
        self.p_ = self.summary_.p
        return self
