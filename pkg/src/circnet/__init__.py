"""circnet: exhaustive search and analysis of circulant interconnect topologies."""

from .combinatorics import (
    Combination,
    RankRangeError,
    binomial,
    colex_first,
    colex_next,
    rank,
    space_size,
    unrank,
)
from .metrics import (
    MetricsRecord,
    bfs_distances,
    bisection_exact,
    bisection_heuristic,
    circulant_distance_profile,
    compute_metrics,
    diameter_mpl,
)
from .report import ComparisonRow, TableEntry, average_ratios, build_table
from .routing import RoutingTable, circulant_routes, dimension_order_routes, path, route_table
from .search import (
    OptimalRecord,
    RankRange,
    SearchConfig,
    SearchResult,
    count_space,
    merge,
    partition_ranks,
    run_search,
    scan_range,
    search_optimal,
)
from .topology import (
    InfeasibleDegreeError,
    JumpSet,
    Topology,
    adam_canonical,
    adam_multiply,
    cartesian_product,
    circulant,
    complete,
    from_edges,
    hypercube,
    is_connected_circulant,
    jump_space,
    ring,
    torus,
)
from .traffic import (
    LoadReport,
    TrafficPattern,
    evaluate,
    pattern_all_to_all,
    pattern_random_pairs,
    pattern_ring_shift,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
