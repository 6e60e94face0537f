"""Cycle-free effective conductance (CFEC) between nodes and node sets."""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import EmptySet, SameNode, UnknownNode
from .graph import BipartiteGraph

DEFAULT_MAX_LEN = 8


@dataclass(frozen=True)
class ProximityResult:
    value: float
    paths_found: int
    truncated: bool

    def to_dict(self):
        return {"value": self.value, "paths_found": self.paths_found, "truncated": self.truncated}


def cfec(g: BipartiteGraph, s, t, max_len=DEFAULT_MAX_LEN) -> ProximityResult:
    """CFEC from ``s`` to ``t``: ``degree(s)`` times the probability that a
    uniform random walk from ``s`` hits ``t`` before revisiting any node.

    Computed exactly by depth-first enumeration of simple ``s``-``t`` paths
    with at most ``max_len`` edges (None for no cap). Each path contributes
    the product of ``1/degree`` over every vertex it leaves. ``truncated``
    is set if the cap cut off any branch.
    """
    for v in (s, t):
        if v not in g:
            raise UnknownNode(f"unknown node {v!r}")
    if s == t:
        raise SameNode(f"source and target are both {s!r}")
    cap = float("inf") if max_len is None else int(max_len)
    adj = {v: g.neighbors(v) for v in g.nodes}
    inv = {v: 1.0 / len(ns) for v, ns in adj.items() if ns}

    total = 0.0
    paths = 0
    truncated = False
    on_path = {s}
    # iterative DFS: (node, weight of path so far incl. leaving node, depth, neighbour iterator)
    stack = [(s, inv.get(s, 0.0), 0, iter(adj[s]))]
    while stack:
        v, weight, depth, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            on_path.discard(v)
            continue
        if w in on_path:
            continue
        if depth + 1 > cap:
            truncated = True
            continue
        if w == t:
            total += weight
            paths += 1
            continue
        on_path.add(w)
        stack.append((w, weight * inv[w], depth + 1, iter(adj[w])))
    return ProximityResult(len(adj[s]) * total, paths, truncated)


def set_proximity(g: BipartiteGraph, set_a, set_b, max_len=DEFAULT_MAX_LEN) -> float:
    """Mean CFEC over ordered pairs ``(a, b)`` with ``a`` in A, ``b`` in B, ``a != b``."""
    set_a, set_b = sorted(set(set_a)), sorted(set(set_b))
    if not set_a or not set_b:
        raise EmptySet("both node sets must be non-empty")
    values = [cfec(g, a, b, max_len).value for a in set_a for b in set_b if a != b]
    if not values:
        raise EmptySet("no pairs of distinct nodes between the two sets")
    return sum(values) / len(values)


def nodes_with_topic(g: BipartiteGraph, topic, kind=None):
    nodes = g.nodes if kind is None else g.of_kind(kind)
    return [v for v in nodes if g.meta(v).topic == topic]
