"""Input checks shared by the functional API and the estimators."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import BadFractionGrid, BadParameters, TooFewEdges, UnknownNode
from .graph import BipartiteGraph


def check_graph(g, min_edges=0) -> BipartiteGraph:
    if not isinstance(g, BipartiteGraph):
        raise TypeError(f"expected a BipartiteGraph, got {type(g).__name__}")
    if g.n_edges < min_edges:
        raise TooFewEdges(f"need at least {min_edges} edges, graph has {g.n_edges}")
    return g


def check_nodes(g: BipartiteGraph, nodes, kind=None):
    nodes = list(nodes)
    for v in nodes:
        if v not in g:
            raise UnknownNode(f"unknown node {v!r}")
        if kind is not None and g.kind(v) is not kind:
            raise BadParameters(f"node {v!r} is not a {kind.value}")
    return nodes


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral) or seed < 0:
        raise BadParameters(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def check_positive_int(value, name, minimum=1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise BadParameters(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_positive_float(value, name) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not value > 0:
        raise BadParameters(f"{name} must be > 0, got {value!r}")
    return float(value)


def child_rngs(seed, n):
    """``n`` independent generators; generator ``i`` depends only on (seed, i)."""
    return [np.random.default_rng(ss) for ss in np.random.SeedSequence(check_seed(seed)).spawn(n)]


def check_fractions(fractions) -> list[float]:
    try:
        fr = [float(f) for f in fractions]
    except (TypeError, ValueError):
        raise BadFractionGrid(f"fractions must be numbers, got {fractions!r}") from None
    if not fr:
        raise BadFractionGrid("fraction grid is empty")
    if any(not 0.0 <= f <= 1.0 for f in fr):
        raise BadFractionGrid("fractions must lie in [0, 1]")
    if any(b < a for a, b in zip(fr, fr[1:])):
        raise BadFractionGrid("fractions must be sorted ascending")
    return fr
