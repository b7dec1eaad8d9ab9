"""h-index of ranked hierarchies, computed over antichains."""

from hhindex.core import (
    Antichain,
    Node,
    RankedHierarchy,
    aggregate_ranks,
    build_hierarchy,
    is_antichain,
    l_antichain,
    minimal_elements,
    subtree,
)
from hhindex.errors import *  # noqa: F401,F403
from hhindex.hindex import (
    AntichainReport,
    LevelTraceEntry,
    flat_h_index,
    h_of_antichain,
    level_trace,
    max_h_antichain,
)
from hhindex.ingest import (
    Uniform,
    Zipf,
    dump_nodes_table,
    dump_tree_document,
    generate_synthetic,
    parse_hierarchy,
    parse_nodes_table,
    parse_tree_document,
)
from hhindex.oracle import OracleResult, brute_force_max_h, enumerate_antichains, level_scan_max_h
from hhindex.report import input_digest, write_report
from hhindex.transforms import LiftedHierarchy, flatten, leaves_only, lift, truncate_at_depth, truncate_at_labels

__version__ = "0.1.0"
