"""spa: structural parameters for clustering, conditioning, and hybrid
inference over circuit-derived graphs.

The pipeline: parse a netlist, build the causal DAG, moralize, pick an
elimination ordering, triangulate, build the clique-tree, then walk the
separator-bounded merge series to trade space against time. Each stage is
importable on its own; `spa.cli` wires them into a command line tool.
"""

from ._backend import active as backend, select as select_backend
from .netlist import (Circuit, Dag, Gate, NetlistError, ParseError,
                      SemanticError, StructureError, build_dag, parse_netlist)
from .graph import (GraphError, OrderedGraph, UGraph, cutset_exact,
                    cutset_heuristic, induced_width, is_chordal, is_forest,
                    moral_edge_count, moralize, treewidth_exact, triangulate,
                    width_of_ordering)
from .ordering import (HEURISTICS, TIE_BREAKS, Ordering, causal,
                       max_cardinality, min_degree, min_width)
from .jointree import (CliqueTree, JointreeError, build_primary_tree,
                       maximal_cliques, separator_width,
                       verify_running_intersection)
from .tradeoff import (DecompositionPoint, TradeoffSeries, cluster_cutsets,
                       complexity_bounds, merge_by_separator, series_from_csv,
                       series_from_json, series_to_csv, series_to_json,
                       tradeoff_series)
from .report import (HYBRID_SEPARATORS, Histogram, ReportRow, export_dot,
                     histogram, ordering_comparison, primary_tree,
                     quantile_range, structural_row, structural_table)

__version__ = "0.1.0"

__all__ = [
    "Circuit", "Dag", "Gate", "NetlistError", "ParseError", "SemanticError",
    "StructureError", "build_dag", "parse_netlist",
    "GraphError", "OrderedGraph", "UGraph", "cutset_exact",
    "cutset_heuristic", "induced_width", "is_chordal", "is_forest",
    "moral_edge_count", "moralize", "treewidth_exact", "triangulate",
    "width_of_ordering",
    "HEURISTICS", "TIE_BREAKS", "Ordering", "causal", "max_cardinality",
    "min_degree", "min_width",
    "CliqueTree", "JointreeError", "build_primary_tree", "maximal_cliques",
    "separator_width", "verify_running_intersection",
    "DecompositionPoint", "TradeoffSeries", "cluster_cutsets",
    "complexity_bounds", "merge_by_separator", "series_from_csv",
    "series_from_json", "series_to_csv", "series_to_json", "tradeoff_series",
    "HYBRID_SEPARATORS", "Histogram", "ReportRow", "export_dot", "histogram",
    "ordering_comparison", "primary_tree", "quantile_range", "structural_row",
    "structural_table",
    "backend", "select_backend", "__version__",
]
