"""Integer flows on signed graphs: verification, conversions and brute-force oracles."""

from __future__ import annotations

from .circular import circular_pipeline, integer_circular_from_orientation, mixed_vertex_pairs
from .convert import double_flow_search, int2_from_mod2, int3_from_mod2, int3_from_mod3, int4_from_mod3
from .errors import GateExceeded, ParseError, PreconditionError, SgflowError, TheoremViolation
from .factor import FactorSubgraph, find_f_factor, p_mu_factor, petersen_2_factorization, tutte_condition
from .flow import (
    FlowAssignment,
    FlowSpec,
    boundary,
    circular_flow_to_orientation,
    orientation_to_circular_flow,
    support,
    verify,
)
from .sgraph import (
    RewriteTrace,
    SignedGraph,
    bridges_and_blocks,
    build,
    contract,
    negativeness,
    odd_edge_connectivity,
    split_off,
    suppress,
    switch,
)
from .split import PairSet, batch_split, fleischner_split, odd_preserving_split, sequentially_connected

__version__ = "0.1.0"

__all__ = [
    "FactorSubgraph",
    "FlowAssignment",
    "FlowSpec",
    "GateExceeded",
    "PairSet",
    "ParseError",
    "PreconditionError",
    "RewriteTrace",
    "SgflowError",
    "SignedGraph",
    "TheoremViolation",
    "batch_split",
    "boundary",
    "bridges_and_blocks",
    "build",
    "circular_flow_to_orientation",
    "circular_pipeline",
    "contract",
    "double_flow_search",
    "find_f_factor",
    "fleischner_split",
    "int2_from_mod2",
    "int3_from_mod2",
    "int3_from_mod3",
    "int4_from_mod3",
    "integer_circular_from_orientation",
    "mixed_vertex_pairs",
    "negativeness",
    "odd_edge_connectivity",
    "odd_preserving_split",
    "orientation_to_circular_flow",
    "p_mu_factor",
    "petersen_2_factorization",
    "sequentially_connected",
    "split_off",
    "support",
    "suppress",
    "switch",
    "tutte_condition",
    "verify",
]
