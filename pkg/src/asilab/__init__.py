"""Witness-based local algorithms for coloring and matching on finite and lazy graphs."""
from .edge_coloring import (
    MultigraphEdgeColoring,
    color_edges,
    edge_peel_step,
    greedy_maximal_matching,
    val_hypotheses,
    weak_val_hypotheses,
)
from .exceptions import (
    AlgorithmFailure,
    AsiError,
    BudgetExceeded,
    FuelExhausted,
    HypothesisViolation,
    InvalidWitness,
    InvariantViolation,
    MalformedInput,
    ScaleTooSmall,
)
from .families import doubled_path, infinite_path, layered_tree, parse_family, regular_tree, spiral_grid
from .graph import (
    EdgeSlot,
    FuelMeter,
    LazyGraph,
    StructuredMultigraph,
    ball,
    distance,
    edge_subgraph,
    induced,
    power_components,
)
from .matching import AcyclicPerfectMatching, MatchingStream, local_matching_block, matching_stream
from .oracles import chromatic_index, chromatic_number, clique_number, is_perfect, max_degree, verify
from .perfect import PerfectGraphColoring, color_perfect, peel_step
from .runtime import canonicalize, get_algorithm, local_view, run_asi
from .search import choose_least
from .subordinate import is_subordinate, layers
from .vertex_coloring import BlockwiseColoring, OverlapColoring, color_blockwise, color_overlap
from .witness import (
    AsiWitness,
    ParityWitness,
    build_witness_parity,
    component_graph,
    pad_witness,
    validate_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicPerfectMatching",
    "AlgorithmFailure",
    "AsiError",
    "AsiWitness",
    "BlockwiseColoring",
    "BudgetExceeded",
    "EdgeSlot",
    "FuelExhausted",
    "FuelMeter",
    "HypothesisViolation",
    "InvalidWitness",
    "InvariantViolation",
    "LazyGraph",
    "MalformedInput",
    "MatchingStream",
    "MultigraphEdgeColoring",
    "OverlapColoring",
    "ParityWitness",
    "PerfectGraphColoring",
    "ScaleTooSmall",
    "StructuredMultigraph",
    "ball",
    "build_witness_parity",
    "canonicalize",
    "choose_least",
    "chromatic_index",
    "chromatic_number",
    "clique_number",
    "color_blockwise",
    "color_edges",
    "color_overlap",
    "color_perfect",
    "component_graph",
    "distance",
    "doubled_path",
    "edge_peel_step",
    "edge_subgraph",
    "get_algorithm",
    "greedy_maximal_matching",
    "induced",
    "infinite_path",
    "is_perfect",
    "is_subordinate",
    "layered_tree",
    "layers",
    "local_matching_block",
    "local_view",
    "matching_stream",
    "max_degree",
    "pad_witness",
    "parse_family",
    "peel_step",
    "power_components",
    "regular_tree",
    "run_asi",
    "spiral_grid",
    "val_hypotheses",
    "validate_witness",
    "verify",
    "weak_val_hypotheses",
]
