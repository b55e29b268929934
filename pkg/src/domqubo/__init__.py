"""Compile dominating-set problems and their variants into QUBO models."""

from .errors import DomQuboError, InfeasibleModelError, ParseError, SizeLimitError
from .formulations import (
    Kind,
    PenaltyWeights,
    QuboModel,
    VariableMap,
    Variant,
    build_model,
    feasible_energy_offset,
    variable_bound,
    variable_count,
)
from .graph import (
    Graph,
    closed_neighborhood,
    graph_power,
    open_neighborhood,
    parse_dimacs,
    parse_edge_list,
    read_graph,
)
from .oracle import VerificationReport, is_variant_set, oracle_gamma, verify_solution
from .penalties import (
    PenaltyTerm,
    SlackEncoding,
    bit_length,
    clique_penalty,
    coverage_penalty,
    independence_penalty,
    perfect_penalty,
    slack_encoding,
)
from .poly import QuboMatrix, QuboPoly, add_scaled, evaluate, square_affine, to_matrix
from .solvers import AnnealParams, SolveResult, solve_anneal, solve_exhaustive

__version__ = "0.1.0"
