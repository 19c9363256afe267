"""Exact scheduling and distributed admission control under 2-hop interference."""

from __future__ import annotations

__version__ = "0.1.0"

from .analysis import (
    RatioBounds,
    admission_threshold,
    duration_ratio,
    local_estimate,
    ratio_bounds,
    ratio_lower_bound,
    ratio_upper_bound,
    ring_ratio_exact,
    uncovered_cycle_order,
)
from .errors import BoundUnavailableError, GraphError, ResourceLimitError
from .graphs import (
    INFINITE,
    ConflictGraph,
    Link,
    NetworkGraph,
    build_graph,
    circulant_graph,
    clique_pendant_graph,
    complete_graph,
    conflict_components,
    conflict_graph,
    cycle_graph,
    generate,
    induced_conflict,
    link_distance,
    make_link,
    one_hop_subgraph,
    star_graph,
)
from .invariants import (
    InvariantReport,
    imperfection_lower_bound,
    imperfection_upper_bound,
    invariant_report,
    is_chordal,
    max_interfering_matching,
    max_local_interfering_matching,
    neighborhood_cover_number,
)
from .scheduling import (
    Schedule,
    fractional_chromatic,
    is_feasible,
    maximal_independent_sets,
    min_schedule,
    normalize_demands,
    weighted_clique_number,
)
from .simulate import NodeView, SimTrace, evaluate_policy, run_admission, sample_demands

__all__ = [
    "BoundUnavailableError",
    "ConflictGraph",
    "GraphError",
    "INFINITE",
    "InvariantReport",
    "Link",
    "NetworkGraph",
    "NodeView",
    "RatioBounds",
    "ResourceLimitError",
    "Schedule",
    "SimTrace",
    "__version__",
    "admission_threshold",
    "build_graph",
    "circulant_graph",
    "clique_pendant_graph",
    "complete_graph",
    "conflict_components",
    "conflict_graph",
    "cycle_graph",
    "duration_ratio",
    "evaluate_policy",
    "fractional_chromatic",
    "generate",
    "induced_conflict",
    "imperfection_lower_bound",
    "imperfection_upper_bound",
    "invariant_report",
    "is_chordal",
    "is_feasible",
    "link_distance",
    "local_estimate",
    "make_link",
    "max_interfering_matching",
    "max_local_interfering_matching",
    "maximal_independent_sets",
    "min_schedule",
    "neighborhood_cover_number",
    "normalize_demands",
    "one_hop_subgraph",
    "ratio_bounds",
    "ratio_lower_bound",
    "ratio_upper_bound",
    "ring_ratio_exact",
    "run_admission",
    "sample_demands",
    "star_graph",
    "uncovered_cycle_order",
    "weighted_clique_number",
]
