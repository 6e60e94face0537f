"""TSV readers/writers, GraphML and DOT export, and JSON/CSV reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .exceptions import (BadKind, DuplicateId, MalformedRow, ParseError, SameKindEdge, ScatterError,
                         SelfLink, UnknownNode)
from .graph import BipartiteGraph, NodeKind, NodeMeta, build_graph

NODES_HEADER = ("id", "kind", "label", "topic", "site")
SCATTER_HEADER = ("page_id", "fact_id")
HYPERLINKS_HEADER = ("src_page_id", "dst_page_id")


def _rows(text):
    """Yield (line_number, fields) for every non-blank line."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        yield lineno, line.split("\t")


def _check_id(value, lineno, column):
    if not value or any(c.isspace() for c in value):
        raise MalformedRow(f"{column} {value!r} is empty or contains whitespace", lineno)
    return value


def parse_nodes(text):
    """Parse a nodes file into ``(id, NodeKind, NodeMeta)`` declarations."""
    rows = _rows(text)
    first = next(rows, None)
    if first is None:
        raise MalformedRow("missing header row", 1)
    lineno, header = first
    if tuple(h.strip() for h in header) != NODES_HEADER:
        raise MalformedRow("expected header id, kind, label, topic, site", lineno)
    seen = set()
    decls = []
    for lineno, fields in rows:
        if len(fields) != len(NODES_HEADER):
            raise MalformedRow(f"expected {len(NODES_HEADER)} fields, got {len(fields)}", lineno)
        node_id, kind, label, topic, site = fields
        _check_id(node_id, lineno, "id")
        try:
            kind = NodeKind(kind)
        except ValueError:
            raise BadKind(f"kind must be 'page' or 'fact', got {kind!r}", lineno) from None
        if node_id in seen:
            raise DuplicateId(f"duplicate id {node_id!r}", lineno)
        if kind is NodeKind.FACT and site:
            raise MalformedRow(f"fact {node_id!r} has a site", lineno)
        seen.add(node_id)
        decls.append((node_id, kind, NodeMeta(label, topic or None, site or None)))
    return decls


def _parse_pairs(text, header):
    pairs = []
    for i, (lineno, fields) in enumerate(_rows(text)):
        if i == 0 and tuple(fields) == header:
            continue
        if len(fields) != 2:
            raise MalformedRow(f"expected 2 fields, got {len(fields)}", lineno)
        a = _check_id(fields[0], lineno, header[0])
        b = _check_id(fields[1], lineno, header[1])
        pairs.append((lineno, a, b))
    return pairs


def parse_scatter_edges(text):
    """Parse page/fact containment rows; file order is kept, duplicates too."""
    return [(a, b) for _, a, b in _parse_pairs(text, SCATTER_HEADER)]


def parse_hyperlinks(text):
    """Parse directed page links. Duplicates collapse onto the first occurrence."""
    seen = set()
    out = []
    for lineno, a, b in _parse_pairs(text, HYPERLINKS_HEADER):
        if a == b:
            raise SelfLink(f"page {a!r} links to itself", lineno)
        if (a, b) not in seen:
            seen.add((a, b))
            out.append((a, b))
    return out


class UnknownNodeRow(ParseError, UnknownNode):
    pass


class SameKindRow(ParseError, SameKindEdge):
    pass


def graph_from_text(nodes_text, scatter_text) -> BipartiteGraph:
    """Build a graph from nodes/scatter file contents; edge errors carry line numbers."""
    decls = parse_nodes(nodes_text)
    kinds = {d[0]: d[1] for d in decls}
    for lineno, a, b in _parse_pairs(scatter_text, SCATTER_HEADER):
        for x in (a, b):
            if x not in kinds:
                raise UnknownNodeRow(f"scatter edge references undeclared node {x!r}", lineno)
        if kinds[a] is kinds[b]:
            raise SameKindRow(f"scatter edge joins two {kinds[a].value} nodes", lineno)
    return build_graph(decls, parse_scatter_edges(scatter_text))


def read_graph(nodes_path, scatter_path) -> BipartiteGraph:
    return graph_from_text(Path(nodes_path).read_text(encoding="utf-8"),
                           Path(scatter_path).read_text(encoding="utf-8"))


# -- serialization ---------------------------------------------------------

def _field(value):
    value = "" if value is None else str(value)
    if "\t" in value or "\n" in value or "\r" in value:
        raise ScatterError(f"field {value!r} contains a tab or newline")
    return value


def serialize_nodes(g: BipartiteGraph) -> str:
    lines = ["\t".join(NODES_HEADER)]
    for v, kind, m in g.declarations():
        lines.append("\t".join(map(_field, (v, kind.value, m.label, m.topic, m.site))))
    return "\n".join(lines) + "\n"


def serialize_scatter_edges(g: BipartiteGraph) -> str:
    return "".join(f"{p}\t{f}\n" for p, f in [SCATTER_HEADER, *g.edges])


def serialize_hyperlinks(links) -> str:
    return "".join(f"{a}\t{b}\n" for a, b in [HYPERLINKS_HEADER, *links])


def write_graph(g: BipartiteGraph, nodes_path, scatter_path):
    Path(nodes_path).write_text(serialize_nodes(g), encoding="utf-8")
    Path(scatter_path).write_text(serialize_scatter_edges(g), encoding="utf-8")


# -- exports ---------------------------------------------------------------

def _links(overlay):
    if overlay is None:
        return ()
    return tuple(getattr(overlay, "edges", overlay))


def _node_attrs(g, v, extra):
    m = g.meta(v)
    attrs = {"kind": g.kind(v).value, "label": m.label, "topic": m.topic or "", "site": m.site or ""}
    for name, values in (extra or {}).items():
        if v in values:
            attrs[name] = str(values[v])
    return attrs


def export_graphml(g: BipartiteGraph, overlay=None, node_attributes=None) -> str:
    """GraphML 1.0 document. Containment edges are undirected; hyperlinks are
    directed edges carrying ``edge_type=hyperlink``.

    ``node_attributes`` maps an extra attribute name to ``{node_id: value}``
    (e.g. community ids).
    """
    extra = dict(sorted((node_attributes or {}).items()))
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">']
    keys = ["kind", "label", "topic", "site", *extra]
    for name in keys:
        out.append(f'  <key id={quoteattr(name)} for="node" attr.name={quoteattr(name)} attr.type="string"/>')
    out.append('  <key id="edge_type" for="edge" attr.name="edge_type" attr.type="string"/>')
    out.append('  <graph id="scatter" edgedefault="undirected">')
    for v in g.nodes:
        out.append(f"    <node id={quoteattr(v)}>")
        for name, value in _node_attrs(g, v, extra).items():
            out.append(f"      <data key={quoteattr(name)}>{escape(value)}</data>")
        out.append("    </node>")
    for i, (p, f) in enumerate(g.edges):
        out.append(f'    <edge id="c{i}" source={quoteattr(p)} target={quoteattr(f)} directed="false">'
                   '<data key="edge_type">containment</data></edge>')
    for i, (a, b) in enumerate(_links(overlay)):
        out.append(f'    <edge id="h{i}" source={quoteattr(a)} target={quoteattr(b)} directed="true">'
                   '<data key="edge_type">hyperlink</data></edge>')
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def _dot_str(value):
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: BipartiteGraph, overlay=None, node_attributes=None) -> str:
    """DOT text. Without hyperlinks this is an undirected ``graph``; with them a
    ``digraph`` whose containment edges carry ``dir=none``."""
    links = _links(overlay)
    directed = bool(links)
    op = "->" if directed else "--"
    extra = dict(sorted((node_attributes or {}).items()))
    out = [("digraph" if directed else "graph") + " scatter {"]
    for v in g.nodes:
        attrs = _node_attrs(g, v, extra)
        attrs["shape"] = "box" if attrs["kind"] == "page" else "ellipse"
        body = ", ".join(f"{k}={_dot_str(val)}" for k, val in attrs.items())
        out.append(f"  {_dot_str(v)} [{body}];")
    edge_attr = '[edge_type="containment", dir=none]' if directed else '[edge_type="containment"]'
    for p, f in g.edges:
        out.append(f"  {_dot_str(p)} {op} {_dot_str(f)} {edge_attr};")
    for a, b in links:
        out.append(f'  {_dot_str(a)} -> {_dot_str(b)} [edge_type="hyperlink"];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- reports ---------------------------------------------------------------

def file_digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return None
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, NodeKind):
        return value.value
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    return value


class ReportDocument:
    """Key/value tree with provenance, rendered as canonical JSON or CSV.

    ``table`` names the list-of-rows entry of ``data`` that CSV output
    flattens; without one, CSV falls back to ``key,value`` rows.
    """

    def __init__(self, command, data, *, version, inputs=None, seed=None, params=None, table=None):
        self.command = command
        self.data = data
        self.table = table
        self.provenance = {
            "toolkit_version": version,
            "inputs": dict(sorted((inputs or {}).items())),
            "seed": seed,
            "params": params or {},
        }

    def to_dict(self):
        return {"command": self.command, "provenance": self.provenance, "result": self.data}

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True, indent=2, ensure_ascii=False,
                          allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.table is not None:
            rows = _jsonable(self.data)[self.table]
            columns = list(rows[0]) if rows else []
            writer.writerow(columns)
            for row in rows:
                writer.writerow(["" if row.get(c) is None else _csv_cell(row.get(c)) for c in columns])
        else:
            writer.writerow(["key", "value"])
            for key, value in flatten(_jsonable(self.to_dict())):
                writer.writerow([key, "" if value is None else _csv_cell(value)])
        return buf.getvalue()


def _csv_cell(value):
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def flatten(tree, prefix=""):
    """Depth-first ``(dotted.key, leaf)`` pairs in sorted key order."""
    if isinstance(tree, dict):
        for k in sorted(tree):
            yield from flatten(tree[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(tree, list) and tree and all(isinstance(x, dict) for x in tree):
        for i, item in enumerate(tree):
            yield from flatten(item, f"{prefix}[{i}]")
    else:
        yield prefix, tree
