"""cagekit: exhaustive and heuristic construction of small k-regular
graphs under a girth constraint, with certification tools."""

from .graph import Graph, GraphError, MAX_VERTICES
from .formats import (ParseError, parse_adjacency, parse_edge_list,
                      parse_graph, write_adjacency, write_edge_list)
from .seed import (AttachmentPlan, SeedTree, attachment_plan,
                   build_seed_tree, moore_bound)
from .canon import AutReport, automorphisms, canonical_form, certificate
from .search import (SearchConfig, SearchResult, merge_results, phase1,
                     phase2, search)
from .climb import ClimbConfig, ClimbResult, hill_climb
from .verify import VerifyReport, verify
from . import corpus

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "MAX_VERTICES",
    "ParseError", "parse_adjacency", "parse_edge_list", "parse_graph",
    "write_adjacency", "write_edge_list",
    "AttachmentPlan", "SeedTree", "attachment_plan", "build_seed_tree",
    "moore_bound",
    "AutReport", "automorphisms", "canonical_form", "certificate",
    "SearchConfig", "SearchResult", "merge_results", "phase1", "phase2",
    "search",
    "ClimbConfig", "ClimbResult", "hill_climb",
    "VerifyReport", "verify",
    "corpus",
    "__version__",
]
