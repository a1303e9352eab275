"""Graph 3-coloring via bee-colony search over DSatur-decoded vertex weights."""

from .decoder import DecodeResult, decode, decode_fast
from .generator import (
    FAMILIES,
    InstanceSpec,
    cross_pair_count,
    flat_edge_target,
    generate,
    hidden_classes,
)
from .graph import Coloring, DimacsError, Graph, parse_dimacs, penalty, write_dimacs
from .harness import (
    AblationRow,
    AblationSummary,
    AblationTable,
    AggregateStats,
    ExperimentPlan,
    RunRecord,
    ablation_table,
    ablation_to_csv,
    aggregate,
    aggregates_to_csv,
    records_from_csv,
    records_to_csv,
    run_plan,
)
from .seeds import run_seed
from .solver import (
    RWDE_ATTEMPTS,
    SCOUT_POLICIES,
    SCOUT_RANDOM,
    SCOUT_RWDE,
    FoodSource,
    SearchState,
    SolveOutcome,
    SolverParams,
    blend_move,
    employed_phase,
    init_population,
    onlooker_phase,
    rwde_step,
    scout_phase,
    selection_probabilities,
    solve,
    unit_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AblationRow",
    "AblationSummary",
    "AblationTable",
    "AggregateStats",
    "Coloring",
    "DecodeResult",
    "DimacsError",
    "ExperimentPlan",
    "FAMILIES",
    "FoodSource",
    "Graph",
    "InstanceSpec",
    "RWDE_ATTEMPTS",
    "RunRecord",
    "SCOUT_POLICIES",
    "SCOUT_RANDOM",
    "SCOUT_RWDE",
    "SearchState",
    "SolveOutcome",
    "SolverParams",
    "ablation_table",
    "ablation_to_csv",
    "aggregate",
    "aggregates_to_csv",
    "blend_move",
    "cross_pair_count",
    "decode",
    "decode_fast",
    "employed_phase",
    "flat_edge_target",
    "generate",
    "hidden_classes",
    "init_population",
    "onlooker_phase",
    "parse_dimacs",
    "penalty",
    "records_from_csv",
    "records_to_csv",
    "run_plan",
    "run_seed",
    "rwde_step",
    "scout_phase",
    "selection_probabilities",
    "solve",
    "unit_vector",
    "write_dimacs",
]
