"""Exact-arithmetic toolkit for oriented hypergraphs."""

from .balance import (
    Circle,
    ThetaCertificate,
    Walk,
    circle_sign,
    circle_sign_mod4,
    detect_theta,
    enumerate_circles,
    is_balanceable,
    is_balanced,
    negative_circle_from_theta,
    path_sign,
)
from .camion import (
    BalancingSetDifference,
    CamionResult,
    FrustrationResult,
    UnbalanceableError,
    balancing_set_difference,
    camion_reorient,
    frustration,
    is_balancing_set,
    is_minimal_balancing_set,
    signed_graph_balance,
)
from .errors import InputError, ResourceError
from .gamma import (
    SpanningForest,
    blocks,
    bridges,
    fundamental_cycle,
    internally_disjoint_paths,
    spanning_forest,
)
from .linalg import Domain
from .matroids import (
    CircuitReport,
    CrossThetaReport,
    LkMinimum,
    cross_theta_analysis,
    cross_theta_plus_pseudoflower,
    enumerate_circuits,
    fano_demo,
    is_circuit,
    lk_negative_circle_minimum,
    nullity,
    rank,
)
from .model import (
    Incidence,
    IncidenceMatrix,
    OrientedHypergraph,
    SwitchingFunction,
    bipartite_rep,
    contract_degree2_vertex,
    cyclomatic_number,
    dual,
    dump,
    edge_induced,
    incidence_matrix,
    load,
    make_Lk,
    make_complete_hypergraph,
    matrix_csv,
    parse,
    reverse_incidences,
    serialize,
    subdivide,
    switch,
    to_dot,
    weak_delete,
)
from .shunting import (
    ArterialConnection,
    DecompositionSearch,
    Hypercircle,
    ShuntPath,
    ShuntingDecomposition,
    ShuntingReport,
    artery_external_vertices,
    build_arterial_connection,
    classify_shunt_paths,
    find_shunting_decomposition,
    find_thorns,
    generate_optimal_shunting,
    is_F_maximal,
    is_S_minimal,
    is_artery,
    is_balanceable_shunting,
    is_flower,
    is_inseparable,
    is_optimal_shunting,
    is_pseudo_flower,
    part_thorns,
    to_hypercircle,
    upsilon_tree,
    validate_shunting,
)

__all__ = [name for name in dir() if not name.startswith("_")]
