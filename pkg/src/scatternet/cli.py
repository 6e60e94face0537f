"""Command line: load TSV graph files, run one analysis, emit a report.

Exit status is 0 on success, 2 on usage errors (argparse) and 1 on data errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .community import greedy_modularity
from .exceptions import ScatterError, ZeroVariance
from .graph import NodeKind, connected_components, fact_connectivity, one_mode_projection
from .io import (ReportDocument, export_dot, export_graphml, file_digest, parse_hyperlinks,
                 read_graph, serialize_hyperlinks, serialize_nodes, serialize_scatter_edges)
from .metrics import (betweenness, bipartite_assortativity, clustering_c4,
                      degree_betweenness_correlation, degree_distribution)
from .null_model import DEFAULT_SWAP_FACTOR, null_distribution, randomize_degree_preserving, synth_scatter
from .proximity import DEFAULT_MAX_LEN, cfec, nodes_with_topic, set_proximity
from .robustness import (DEFAULT_FRACTIONS, DEFAULT_TRIALS, RemovalStrategy, remove_and_measure,
                         site_removal_report)
from .surfer import HyperlinkOverlay, random_walker, smart_surfer, synth_site


def _fractions(text):
    try:
        if ":" in text:
            start, step, stop = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ValueError
            n = int(round((stop - start) / step))
            return [round(start + i * step, 10) for i in range(n + 1)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad fraction grid {text!r}") from None


def _max_len(text):
    if text.lower() == "none":
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("max path length must be >= 1 or 'none'")
    return value


def _id_list(text):
    return [x for x in text.split(",") if x]


def build_parser():
    parser = argparse.ArgumentParser(prog="scatternet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"scatternet {__version__}")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--nodes", required=True, type=Path, help="nodes TSV")
    graph_in.add_argument("--scatter", required=True, type=Path, help="page/fact containment TSV")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--format", choices=("json", "csv"), default="json")
    out.add_argument("--out", type=Path, help="write the report here instead of stdout")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=0)

    null = argparse.ArgumentParser(add_help=False)
    null.add_argument("--null-samples", type=int, default=0,
                      help="degree-preserving randomizations to compare against (0 = skip)")
    null.add_argument("--swap-factor", type=float, default=DEFAULT_SWAP_FACTOR)

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = [graph_in, out]

    sub.add_parser("stats", parents=common, help="headline counts")
    p = sub.add_parser("degrees", parents=common, help="degree distribution tables")
    p.add_argument("--kind", choices=("page", "fact", "both"), default="both")
    sub.add_parser("assort", parents=common + [seeded, null], help="bipartite assortativity")
    sub.add_parser("cluster", parents=common + [seeded, null], help="C4 clustering coefficient")
    p = sub.add_parser("between", parents=common, help="betweenness centrality")
    p.add_argument("--endpoints", choices=("all", "facts"), default="all")
    sub.add_parser("components", parents=common, help="connected components and fact groups")

    p = sub.add_parser("proximity", parents=common, help="CFEC proximity")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--set-a", type=_id_list)
    p.add_argument("--set-b", type=_id_list)
    p.add_argument("--topic-a")
    p.add_argument("--topic-b")
    p.add_argument("--max-path-len", type=_max_len, default=DEFAULT_MAX_LEN)

    sub.add_parser("communities", parents=common, help="greedy modularity communities")
    p = sub.add_parser("project", parents=common, help="weighted one-mode projection")
    p.add_argument("--side", choices=("page", "fact"), default="fact")
    p = sub.add_parser("randomize", parents=common + [seeded], help="degree-preserving rewiring")
    p.add_argument("--swap-factor", type=float, default=DEFAULT_SWAP_FACTOR)

    p = sub.add_parser("robustness", parents=common + [seeded], help="page removal simulation")
    p.add_argument("--strategy", choices=("random", "degree", "betweenness", "site"), default="random")
    p.add_argument("--fractions", type=_fractions, default=list(DEFAULT_FRACTIONS),
                   help="comma list or start:step:stop")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--recompute", action="store_true", help="re-rank betweenness after each removal")
    p.add_argument("--endpoints", choices=("all", "facts"), default="all")
    p.add_argument("--site", help="site to take down (omit for a per-site report)")

    p = sub.add_parser("surf", parents=common + [seeded], help="random walker / smart surfer")
    p.add_argument("--hyperlinks", required=True, type=Path)
    p.add_argument("--policy", choices=("random", "smart"), default="smart")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--matching", default="all",
                   help="'all', 'all-with-facts', or a file with one page id per line")
    p.add_argument("--start", help="pin the random walker's landing page")
    p.add_argument("--choice", choices=("uniform", "greedy"), default="uniform",
                   help="smart surfer link choice")

    p = sub.add_parser("export", parents=[graph_in], help="GraphML or DOT for external drawing")
    p.add_argument("--to", choices=("graphml", "dot"), default="graphml")
    p.add_argument("--hyperlinks", type=Path)
    p.add_argument("--communities", action="store_true", help="annotate nodes with community ids")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("synth", parents=[seeded], help="write a synthetic scatter network")
    p.add_argument("--model", choices=("scatter", "site"), default="scatter")
    p.add_argument("--pages", type=int, default=300)
    p.add_argument("--facts", type=int, default=50)
    p.add_argument("--law", choices=("uniform", "heavytail"), default="heavytail")
    p.add_argument("--exponent", type=float, default=2.0)
    p.add_argument("--sites", type=int)
    p.add_argument("--fact-pages", type=int, default=14, help="site model: pages holding facts")
    p.add_argument("--links-per-page", type=int, default=3)
    p.add_argument("--out-dir", type=Path, required=True)
    return parser


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.inputs = {}

    def graph(self):
        a = self.args
        self.inputs["nodes"] = file_digest(a.nodes)
        self.inputs["scatter"] = file_digest(a.scatter)
        return read_graph(a.nodes, a.scatter)

    def overlay(self, g, path):
        self.inputs["hyperlinks"] = file_digest(path)
        return HyperlinkOverlay(g, parse_hyperlinks(Path(path).read_text(encoding="utf-8")))

    def report(self, data, seed=None, params=None, table=None):
        return ReportDocument(self.args.command, data, version=__version__, inputs=self.inputs,
                              seed=seed, params=params, table=table)


def _with_null(ctx, g, metric, result):
    a = ctx.args
    if a.null_samples:
        result.null = null_distribution(g, metric, a.null_samples, a.seed, a.swap_factor)
        return ctx.report(result, seed=a.seed,
                          params={"null_samples": a.null_samples, "swap_factor": a.swap_factor})
    return ctx.report(result)


def cmd_stats(ctx):
    g = ctx.graph()
    groups = fact_connectivity(g)
    return ctx.report({
        "pages": g.n_pages, "facts": g.n_facts, "edges": g.n_edges,
        "components": connected_components(g).n_components,
        "isolated_facts": sum(len(gr) == 1 for gr in groups),
        "zero_degree_facts": sum(g.degree(f) == 0 for f in g.facts),
        "fact_groups": len(groups),
    })


def cmd_degrees(ctx):
    g = ctx.graph()
    kinds = ("page", "fact") if ctx.args.kind == "both" else (ctx.args.kind,)
    rows = [{"kind": k, "k": r.k, "count": r.count, "ccdf": r.ccdf}
            for k in kinds for r in degree_distribution(g, k)]
    return ctx.report({"rows": rows}, table="rows")


def cmd_assort(ctx):
    g = ctx.graph()
    return _with_null(ctx, g, "assortativity", bipartite_assortativity(g))


def cmd_cluster(ctx):
    g = ctx.graph()
    return _with_null(ctx, g, "c4", clustering_c4(g))


def cmd_between(ctx):
    g = ctx.graph()
    scores = betweenness(g, ctx.args.endpoints)
    rows = [{"node": v, "kind": g.kind(v).value, "degree": g.degree(v), "betweenness": scores[v]}
            for v in g.nodes]
    try:
        r = degree_betweenness_correlation(g, scores)
    except ZeroVariance:
        r = None
    return ctx.report({"rows": rows, "degree_betweenness_r": r},
                      params={"endpoints": ctx.args.endpoints}, table="rows")


def cmd_components(ctx):
    g = ctx.graph()
    comps = connected_components(g)
    rows = [{"node": v, "component": comps.labels[v]} for v in g.nodes]
    return ctx.report({"rows": rows, "sizes": list(comps.sizes), "giant": comps.giant,
                       "fact_groups": [list(gr) for gr in fact_connectivity(g)]}, table="rows")


def cmd_proximity(ctx):
    a = ctx.args
    g = ctx.graph()
    params = {"max_path_len": a.max_path_len}
    if a.source or a.target:
        if not (a.source and a.target):
            raise ScatterError("--source and --target go together")
        return ctx.report(cfec(g, a.source, a.target, a.max_path_len), params=params)
    if a.set_a or a.set_b:
        set_a, set_b = a.set_a or [], a.set_b or []
    elif a.topic_a or a.topic_b:
        set_a = nodes_with_topic(g, a.topic_a, NodeKind.FACT)
        set_b = nodes_with_topic(g, a.topic_b or a.topic_a, NodeKind.FACT)
    else:
        raise ScatterError("give --source/--target, --set-a/--set-b or --topic-a/--topic-b")
    return ctx.report({"set_a": set_a, "set_b": set_b,
                       "mean_cfec": set_proximity(g, set_a, set_b, a.max_path_len)}, params=params)


def cmd_communities(ctx):
    g = ctx.graph()
    part = greedy_modularity(g)
    data = part.to_dict()
    data["rows"] = [{"node_id": v, "community_id": part.labels[v]} for v in g.nodes]
    return ctx.report(data, table="rows")


def cmd_project(ctx):
    g = ctx.graph()
    proj = one_mode_projection(g, ctx.args.side)
    rows = [{"u": u, "v": v, "weight": w} for u, v, w in proj.edges]
    return ctx.report({"side": proj.side.value, "nodes": list(proj.nodes), "rows": rows},
                      params={"side": ctx.args.side}, table="rows")


def cmd_randomize(ctx):
    a = ctx.args
    g = ctx.graph()
    r = randomize_degree_preserving(g, a.seed, a.swap_factor)
    rows = [{"page_id": p, "fact_id": f} for p, f in r.edges]
    return ctx.report({"rows": rows}, seed=a.seed, params={"swap_factor": a.swap_factor}, table="rows")


def cmd_robustness(ctx):
    a = ctx.args
    g = ctx.graph()
    if a.strategy == "site" and not a.site:
        return ctx.report({"rows": site_removal_report(g)}, table="rows")
    strategy = RemovalStrategy(a.strategy, a.trials, a.recompute, a.site, a.endpoints)
    curve = remove_and_measure(g, strategy, a.fractions, a.seed)
    params = {} if a.strategy == "site" else {"fractions": a.fractions}
    return ctx.report(curve, seed=curve.seed, params=params, table="rows")


def cmd_surf(ctx):
    a = ctx.args
    g = ctx.graph()
    overlay = ctx.overlay(g, a.hyperlinks)
    matching = a.matching
    if matching not in ("all", "all-with-facts"):
        ctx.inputs["matching"] = file_digest(matching)
        matching = [ln.strip() for ln in Path(matching).read_text(encoding="utf-8").splitlines()
                    if ln.strip()]
    if a.policy == "smart":
        trace = smart_surfer(g, overlay, matching, a.steps, a.trials, a.seed, a.choice)
    else:
        trace = random_walker(g, overlay, matching, a.steps, a.trials, a.seed, a.start)
    return ctx.report(trace, seed=a.seed, params={"steps": a.steps}, table="rows")


def cmd_export(ctx):
    a = ctx.args
    g = read_graph(a.nodes, a.scatter)
    overlay = None
    if a.hyperlinks:
        overlay = HyperlinkOverlay(g, parse_hyperlinks(a.hyperlinks.read_text(encoding="utf-8")))
    extra = None
    if a.communities:
        extra = {"community": greedy_modularity(g).labels}
    writer = export_graphml if a.to == "graphml" else export_dot
    return writer(g, overlay, extra)


def cmd_synth(ctx):
    a = ctx.args
    a.out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    if a.model == "site":
        g, overlay = synth_site(a.pages, a.facts, a.fact_pages, a.links_per_page, a.exponent, a.seed)
        (a.out_dir / "hyperlinks.tsv").write_text(serialize_hyperlinks(overlay.edges), encoding="utf-8")
        written["hyperlinks"] = "hyperlinks.tsv"
    else:
        g = synth_scatter(a.pages, a.facts, a.law, a.seed, a.exponent, a.sites)
    (a.out_dir / "nodes.tsv").write_text(serialize_nodes(g), encoding="utf-8")
    (a.out_dir / "scatter.tsv").write_text(serialize_scatter_edges(g), encoding="utf-8")
    written.update(nodes="nodes.tsv", scatter="scatter.tsv")
    a.format, a.out = "json", None
    return ctx.report({"written": written, "pages": g.n_pages, "facts": g.n_facts, "edges": g.n_edges},
                      seed=a.seed, params={"model": a.model, "law": a.law, "exponent": a.exponent})


COMMANDS = {name[4:]: fn for name, fn in globals().items() if name.startswith("cmd_")}


def main(argv=None):
    args = build_parser().parse_args(argv)
    ctx = _Ctx(args)
    try:
        result = COMMANDS[args.command](ctx)
    except (ScatterError, OSError) as exc:
        print(f"scatternet {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, ReportDocument):
        text = result.to_csv() if args.format == "csv" else result.to_json()
    else:
        text = result
    if getattr(args, "out", None):
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
