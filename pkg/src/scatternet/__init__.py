"""Structure, robustness and navigability of bipartite page/fact scatter networks."""

__version__ = "0.1.0"

from .community import GreedyModularity, Partition, greedy_modularity, modularity
from .exceptions import ParseError, ScatterError
from .graph import (BipartiteGraph, ComponentAssignment, NodeKind, NodeMeta, WeightedProjection,
                    build_graph, connected_components, degree, fact_connectivity, one_mode_projection,
                    projection_components)
from .io import (ReportDocument, export_dot, export_graphml, graph_from_text, parse_hyperlinks,
                 parse_nodes, parse_scatter_edges, read_graph, write_graph)
from .metrics import (AssortativityReport, ClusteringReport, betweenness, bipartite_assortativity,
                      c4_from_counts, clustering_c4, degree_betweenness_correlation,
                      degree_distribution)
from .null_model import (DegreePreservingRandomizer, NullModelTest, NullSummary, null_distribution,
                         randomize_degree_preserving, synth_scatter)
from .proximity import ProximityResult, cfec, set_proximity
from .robustness import (RemovalSimulation, RemovalStrategy, RobustnessCurve, remove_and_measure,
                         site_removal_report)
from .surfer import (HyperlinkOverlay, RandomWalker, SmartSurfer, SurferTrace, random_walker,
                     smart_surfer, synth_site)
