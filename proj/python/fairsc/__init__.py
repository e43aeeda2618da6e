"""Fair spectral clustering: exact baselines and the ADMM-DC solver."""

from ._core import (
    AffinityModel,
    ContractError,
    DatasetBundle,
    FairnessConstraint,
    ParseError,
    affinity,
    average_balance,
    balance,
    build_constraint,
    clustering_cost,
    fairness_residual,
    gen_elliptical,
    gen_msbm,
    gen_randlaplace,
    graph_affinity,
    indicator_embedding,
    kmeans,
    load_edge_list,
    load_feature_csv,
    min_balance,
    msbm_default_edge_probability,
    nullspace_basis,
    orthogonality_residual,
    points_bundle,
    rbf_affinity,
    solve,
)

__all__ = [
    "AffinityModel",
    "ContractError",
    "DatasetBundle",
    "FairnessConstraint",
    "ParseError",
    "affinity",
    "average_balance",
    "balance",
    "build_constraint",
    "clustering_cost",
    "fairness_residual",
    "gen_elliptical",
    "gen_msbm",
    "gen_randlaplace",
    "graph_affinity",
    "indicator_embedding",
    "kmeans",
    "load_edge_list",
    "load_feature_csv",
    "min_balance",
    "msbm_default_edge_probability",
    "nullspace_basis",
    "orthogonality_residual",
    "points_bundle",
    "rbf_affinity",
    "solve",
]

__version__ = "0.1.0"
