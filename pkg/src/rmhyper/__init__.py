"""High-girth hypergraphs with unavoidable monochromatic or rainbow edges.

Constructions (amalgamation-based and probabilistic) together with exact
desk-scale verifiers: Berge girth with cycle witnesses, exhaustive short
cycle counting, and a canonical-partition coloring solver.
"""

__version__ = "0.1.0"

from .coloring import (
    Coloring,
    EdgeClass,
    Verdict,
    VerdictStatus,
    classify_edge,
    coloring_is_good,
    enumerate_partitions,
    find_good_coloring,
    find_part_rainbow_bad,
    verify_part_rainbow_forced,
    verify_rm_unavoidable,
)
from .core import (
    Hypergraph,
    HypergraphError,
    PartiteHypergraph,
    complete_hypergraph,
    disjoint_union,
)
from .construct import (
    BuildLimits,
    ConstructionParams,
    SizeEstimate,
    SizeLimitError,
    SupplierError,
    amalgamate,
    attach_edge_markers,
    build_part_rainbow_forced,
    build_rm_unavoidable,
    complete_partite_factor,
    estimate_h_size,
    estimate_pr_size,
    supply_min_degree_girth,
)
from .girth import (
    CycleWitness,
    EnumerationBudgetError,
    Girth,
    GirthResult,
    count_cycles,
    cycle_count_bound_check,
    girth,
)
from .randgen import (
    CarrierSample,
    ProbParams,
    SearchOutcome,
    SubedgeSequence,
    ThresholdResult,
    counting_inequality_holds,
    counting_threshold,
    random_high_girth,
    random_search_unavoidable,
    sample_subedges,
)

__all__ = [
    "__version__",
    "BuildLimits",
    "CarrierSample",
    "Coloring",
    "ConstructionParams",
    "CycleWitness",
    "EdgeClass",
    "EnumerationBudgetError",
    "Girth",
    "GirthResult",
    "Hypergraph",
    "HypergraphError",
    "PartiteHypergraph",
    "ProbParams",
    "SearchOutcome",
    "SizeEstimate",
    "SizeLimitError",
    "SubedgeSequence",
    "SupplierError",
    "ThresholdResult",
    "Verdict",
    "VerdictStatus",
    "amalgamate",
    "attach_edge_markers",
    "build_part_rainbow_forced",
    "build_rm_unavoidable",
    "classify_edge",
    "coloring_is_good",
    "complete_hypergraph",
    "complete_partite_factor",
    "count_cycles",
    "counting_inequality_holds",
    "counting_threshold",
    "cycle_count_bound_check",
    "disjoint_union",
    "enumerate_partitions",
    "estimate_h_size",
    "estimate_pr_size",
    "find_good_coloring",
    "find_part_rainbow_bad",
    "girth",
    "random_high_girth",
    "random_search_unavoidable",
    "sample_subedges",
    "supply_min_degree_girth",
    "verify_part_rainbow_forced",
    "verify_rm_unavoidable",
]
