"""Token Sliding on oriented graphs: exact and polynomial solvers, reductions, campaigns."""

from .errors import *  # noqa: F401,F403
from .exact import (
    SearchLimits,
    SearchStats,
    SolveResult,
    apply_and_validate,
    is_witness,
    reachable_configurations,
    solve_exact,
)
from .generators import GRAPH_CLASSES, GenSpec, generate_instance, generate_with_partition
from .graph import (
    ClassReport,
    CycleOrientation,
    OrientedGraph,
    build_graph,
    classify,
    co_components,
    connected_components,
    directed_distance,
    independent_sets,
    is_cograph,
    is_independent,
    max_independent_set,
    split_partition,
    underlying_neighbors,
)
from .harness import CampaignReport, CampaignSpec, recheck, run_campaign, run_equivalence_campaign, run_reduction_campaign
from .instance import (
    Instance,
    Move,
    ReconfSequence,
    format_witness,
    load_fixture,
    make_instance,
    parse_instance,
    parse_witness,
    serialize_instance,
)
from .poly import analyze_cycle, is_locked, solve_auto, solve_cograph, solve_cycle, solve_path_forest, solve_with
from .reductions import (
    ReductionArtifact,
    ReductionPolicy,
    lift_sequence,
    map_configuration,
    parse_artifact,
    project_sequence,
    reduce,
    reduce_bipartite,
    reduce_planar,
    reduce_split,
    serialize_artifact,
)

__version__ = "0.1.0"
