"""Bipartite fact/page graph, degree queries, components and one-mode projection."""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .exceptions import BadParameters, DuplicateNode, SameKindEdge, UnknownNode

_WS = re.compile(r"\s")


class NodeKind(str, enum.Enum):
    PAGE = "page"
    FACT = "fact"

    @classmethod
    def parse(cls, value) -> "NodeKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise BadParameters(f"unknown node kind {value!r}") from None


@dataclass(frozen=True)
class NodeMeta:
    label: str = ""
    topic: str | None = None
    site: str | None = None


def check_node_id(node_id) -> str:
    if not isinstance(node_id, str) or not node_id or _WS.search(node_id):
        raise BadParameters(f"invalid node id {node_id!r}: must be a non-empty string without whitespace")
    return node_id


class BipartiteGraph:
    """Immutable scatter network: pages and facts joined by containment edges.

    Nodes, edges and adjacency lists are kept in lexicographic order so every
    traversal built on top of them is reproducible. Use :func:`build_graph`
    rather than calling the constructor with unchecked data.
    """

    __slots__ = ("_kind", "_meta", "_adj", "pages", "facts", "nodes", "edges")

    def __init__(self, kinds: Mapping[str, NodeKind], meta: Mapping[str, NodeMeta],
                 edges: Iterable[tuple[str, str]]):
        self._kind = dict(sorted(kinds.items()))
        self._meta = {v: meta.get(v, NodeMeta()) for v in self._kind}
        adj: dict[str, set[str]] = {v: set() for v in self._kind}
        for p, f in edges:
            adj[p].add(f)
            adj[f].add(p)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self.nodes = tuple(self._kind)
        self.pages = tuple(v for v in self.nodes if self._kind[v] is NodeKind.PAGE)
        self.facts = tuple(v for v in self.nodes if self._kind[v] is NodeKind.FACT)
        self.edges = tuple((p, f) for p in self.pages for f in self._adj[p])

    # -- queries -----------------------------------------------------------
    def __contains__(self, v) -> bool:
        return v in self._kind

    def __len__(self) -> int:
        return len(self.nodes)

    def _check(self, v):
        if v not in self._kind:
            raise UnknownNode(f"unknown node {v!r}")

    def kind(self, v) -> NodeKind:
        self._check(v)
        return self._kind[v]

    def meta(self, v) -> NodeMeta:
        self._check(v)
        return self._meta[v]

    def neighbors(self, v) -> tuple[str, ...]:
        self._check(v)
        return self._adj[v]

    def degree(self, v) -> int:
        self._check(v)
        return len(self._adj[v])

    @property
    def n_pages(self) -> int:
        return len(self.pages)

    @property
    def n_facts(self) -> int:
        return len(self.facts)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def of_kind(self, kind) -> tuple[str, ...]:
        return self.pages if NodeKind.parse(kind) is NodeKind.PAGE else self.facts

    def declarations(self) -> list[tuple[str, NodeKind, NodeMeta]]:
        return [(v, self._kind[v], self._meta[v]) for v in self.nodes]

    # -- derived graphs ----------------------------------------------------
    def with_edges(self, edges) -> "BipartiteGraph":
        """Same nodes and metadata, different containment edges (unchecked)."""
        return BipartiteGraph(self._kind, self._meta, edges)

    def without_pages(self, pages) -> "BipartiteGraph":
        drop = set(pages)
        kinds = {v: k for v, k in self._kind.items() if v not in drop}
        return BipartiteGraph(kinds, self._meta, [(p, f) for p, f in self.edges if p not in drop])

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self._kind == other._kind and self._meta == other._meta
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"BipartiteGraph(pages={self.n_pages}, facts={self.n_facts}, edges={self.n_edges})"


def build_graph(nodes, edges) -> BipartiteGraph:
    """Build a graph from ``(id, kind, meta)`` declarations and ``(u, v)`` edges.

    Edges may list the page or the fact first; duplicates are collapsed.
    ``meta`` may be a :class:`NodeMeta`, a mapping of its fields, or None.
    """
    kinds: dict[str, NodeKind] = {}
    meta: dict[str, NodeMeta] = {}
    for decl in nodes:
        node_id, kind = decl[0], NodeKind.parse(decl[1])
        m = decl[2] if len(decl) > 2 else None
        check_node_id(node_id)
        if node_id in kinds:
            raise DuplicateNode(f"node {node_id!r} declared twice")
        if m is None:
            m = NodeMeta()
        elif not isinstance(m, NodeMeta):
            m = NodeMeta(**m)
        if kind is NodeKind.FACT and m.site:
            raise BadParameters(f"fact {node_id!r} cannot carry a site")
        kinds[node_id] = kind
        meta[node_id] = m

    pairs = set()
    for u, v in edges:
        for x in (u, v):
            if x not in kinds:
                raise UnknownNode(f"edge ({u}, {v}) references undeclared node {x!r}")
        if kinds[u] is kinds[v]:
            raise SameKindEdge(f"edge ({u}, {v}) joins two {kinds[u].value} nodes")
        pairs.add((u, v) if kinds[u] is NodeKind.PAGE else (v, u))
    return BipartiteGraph(kinds, meta, pairs)


def degree(g: BipartiteGraph, v) -> int:
    return g.degree(v)


@dataclass(frozen=True)
class WeightedProjection:
    side: NodeKind
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]  # (u, v, weight) with u < v

    def weight(self, u, v) -> int:
        a, b = sorted((u, v))
        for x, y, w in self.edges:
            if x == a and y == b:
                return w
        return 0

    def adjacency(self) -> dict[str, list[str]]:
        adj = {v: [] for v in self.nodes}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def one_mode_projection(g: BipartiteGraph, side) -> WeightedProjection:
    """Co-occurrence graph over one node class, weighted by shared neighbours."""
    side = NodeKind.parse(side)
    other = g.facts if side is NodeKind.PAGE else g.pages
    weights: dict[tuple[str, str], int] = {}
    for w in other:
        for u, v in combinations(g.neighbors(w), 2):
            weights[(u, v)] = weights.get((u, v), 0) + 1
    edges = tuple((u, v, c) for (u, v), c in sorted(weights.items()))
    return WeightedProjection(side, g.of_kind(side), edges)


@dataclass(frozen=True)
class ComponentAssignment:
    """Component id per node. Ids are numbered in order of each component's
    smallest member, so the tie rule for ``giant`` is simply the lowest id."""

    labels: dict
    sizes: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.sizes)

    @property
    def giant(self) -> int | None:
        if not self.sizes:
            return None
        return max(range(len(self.sizes)), key=lambda i: (self.sizes[i], -i))

    def members(self, cid) -> list[str]:
        return sorted(v for v, c in self.labels.items() if c == cid)


def _components(nodes, adjacency) -> ComponentAssignment:
    labels: dict[str, int] = {}
    sizes = []
    for start in nodes:
        if start in labels:
            continue
        cid = len(sizes)
        labels[start] = cid
        queue = deque([start])
        size = 0
        while queue:
            v = queue.popleft()
            size += 1
            for w in adjacency(v):
                if w not in labels:
                    labels[w] = cid
                    queue.append(w)
        sizes.append(size)
    return ComponentAssignment(labels, tuple(sizes))


def connected_components(g: BipartiteGraph) -> ComponentAssignment:
    return _components(g.nodes, g.neighbors)


def projection_components(proj: WeightedProjection) -> ComponentAssignment:
    adj = proj.adjacency()
    return _components(proj.nodes, adj.__getitem__)


def fact_connectivity(g: BipartiteGraph) -> list[tuple[str, ...]]:
    """Groups of facts mutually reachable through shared documents.

    Groups are sorted internally and ordered by their smallest member.
    """
    comps = connected_components(g)
    groups: dict[int, list[str]] = {}
    for f in g.facts:
        groups.setdefault(comps.labels[f], []).append(f)
    return sorted(tuple(sorted(fs)) for fs in groups.values())
