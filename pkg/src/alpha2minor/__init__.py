"""Constructive clique-join-independent minors in graphs with independence
number two, plus the exact invariants and exhaustive searches used to verify
the constructions at desk scale."""

from .construct import (
    Certificate,
    TraceStep,
    certificate_to_json,
    construct_chi_minor,
    construct_half_minor,
    select_edge_small_case,
)
from .errors import (
    Alpha2Error,
    Graph6Error,
    InvariantViolation,
    OracleCapExceeded,
    PreconditionError,
    SearchDeadlineExceeded,
)
from .generate import enumerate_alpha2, join, named, random_alpha2
from .graphs import (
    Graph,
    closed_neighborhood,
    complement,
    contract_set,
    emit_graph6,
    induced_subgraph,
    is_k_connected,
    parse_graph6,
    vertex_connectivity,
)
from .invariants import (
    AntiMatching,
    CapacityReport,
    alpha_at_most_two,
    capacity,
    chromatic_number_alpha2,
    clique_number,
    co_components,
    is_five_wheel,
    is_vertex_critical,
    max_anti_matching,
)
from .matching import matching_number, maximum_matching
from .minors import (
    CliqueJoinIndependent,
    CompleteGraph,
    MinorModel,
    MinorTarget,
    find_minor_bruteforce,
    model_from_json,
    model_through_contraction,
    model_to_json,
    validate_model,
)
from .packing import (
    P3Packing,
    PackingConditionReport,
    check_packing_conditions,
    exchange_improve,
    find_p3_packing,
    validate_packing,
    verify_packing_characterization,
)

__version__ = "0.1.0"
