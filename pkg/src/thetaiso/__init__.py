"""Graph isomorphism testing through a lifted conic relaxation.

The pipeline: parse or construct a pair of graphs, compile them into a conic
program over an (n^2+1)-square matrix variable (``build_program``), solve the
doubly nonnegative relaxation with a projection-splitting method (``solve``),
and round the result into a verdict (``decide``) that is either an exactly
certified isomorphism, a soundly separated non-isomorphism, or an explicit
inconclusive.  Supporting algebra (permutation lifts, feasibility checking,
united-vector factorizations, Birkhoff decomposition) is exported alongside.
"""

from .graphs import (
    Graph,
    GraphParseError,
    VertexPairIndex,
    association_graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    load_graph,
    parse_dimacs,
    parse_graph,
    parse_graph_text,
    path_graph,
    petersen_graph,
    relabel,
    star_graph,
)
from .oracle import (
    brute_force_isomorphisms,
    enumerate_isomorphisms,
    is_isomorphism,
    is_permutation,
)
from .program import (
    Constraint,
    Program,
    build_program,
    objective_value,
    program_to_json_dict,
    zero_pattern,
)
from .lifts import (
    ConvexCombination,
    DecompositionResult,
    FeasibilityReport,
    FeasibilityViolation,
    PermutationLift,
    check_feasible,
    convex_decompose,
    cp_factor_united,
    is_united,
    lift,
)
from .eigensolver import symmetric_eigh
from .solver import (
    SolverConfig,
    SolverResult,
    SolverStatus,
    initial_point,
    project_affine,
    project_psd,
    solve,
)
from .extraction import (
    BirkhoffResult,
    DiagonalAssignment,
    Verdict,
    VerdictKind,
    birkhoff_decompose,
    consistent_set_search,
    decide,
    decision_threshold,
    diagonal_matrix,
)
from .data import corpus_path

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphParseError", "VertexPairIndex", "association_graph",
    "complement", "complete_graph", "cycle_graph", "disjoint_union",
    "empty_graph", "load_graph", "parse_dimacs", "parse_graph",
    "parse_graph_text", "path_graph", "petersen_graph", "relabel",
    "star_graph",
    "brute_force_isomorphisms", "enumerate_isomorphisms", "is_isomorphism",
    "is_permutation",
    "Constraint", "Program", "build_program", "objective_value",
    "program_to_json_dict", "zero_pattern",
    "ConvexCombination", "DecompositionResult", "FeasibilityReport",
    "FeasibilityViolation", "PermutationLift", "check_feasible",
    "convex_decompose", "cp_factor_united", "is_united", "lift",
    "symmetric_eigh",
    "SolverConfig", "SolverResult", "SolverStatus", "initial_point",
    "project_affine", "project_psd", "solve",
    "BirkhoffResult", "DiagonalAssignment", "Verdict", "VerdictKind",
    "birkhoff_decompose", "consistent_set_search", "decide",
    "decision_threshold", "diagonal_matrix",
    "corpus_path",
    "__version__",
]
