"""Counting, sampling and bounding equal-size connected partitions of the n x n grid."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundsReport,
    EpsilonSolution,
    UnsupportedResidue,
    binomial,
    bounds_report,
    compact_count_upper,
    epsilon_threshold,
    lower_bound_exact,
    trivial_upper_bound,
    upper_bound_exact,
)
from .budget import Budget, BudgetExceeded  # noqa: E402
from .enumeration import (  # noqa: E402
    CutHistogram,
    count_compact_plans,
    count_plans,
    cut_histogram,
    enumerate_plans,
)
from .grid import (  # noqa: E402
    GridGraph,
    MalformedPartition,
    Partition,
    ValidationReport,
    build_grid_graph,
    cut_score,
    parse_partition,
    serialize_partition,
    validate_partition,
)
from .perturb import (  # noqa: E402
    PerturbChoice,
    apply_perturbation,
    base_tiling,
    enumerate_family,
    list_border_segments,
    sample_family,
    width2_counterexample,
)
from .sampler import SampleStats, sample_batch, sample_uniform_exact, tree_cut_sample  # noqa: E402
from .trees import (  # noqa: E402
    GrowthConstants,
    SpanningTree,
    catalan_constant,
    growth_constants,
    random_spanning_tree,
    spanning_tree_count,
    tree_growth_ratio,
)
