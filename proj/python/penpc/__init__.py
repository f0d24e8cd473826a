"""Two-step penalized estimation of DAG skeletons.

Thin re-export of the compiled core. Graphs are (p, edge-list) pairs,
matrices are numpy arrays, separation sets are dicts keyed by (i, j).
"""

from penpc._core import (  # noqa: F401
    analytic_covariance,
    ci_test,
    coord_descent,
    d_separated,
    derive_seed,
    ebic,
    fisher_z,
    gen_ba_dag,
    gen_er_dag,
    grid_search_fit,
    is_acyclic,
    log_penalty,
    modified_pc_stable,
    neighborhood_select,
    normal_quantile,
    orient_cpdag,
    partial_correlation,
    pc_stable,
    sample_correlation,
    simulate_sem,
    skeleton_metrics,
    skeleton_of,
    standardize,
    true_ggm_of,
    InsufficientSample,
    IoError,
    NumericError,
)

__all__ = [
    "analytic_covariance",
    "ci_test",
    "coord_descent",
    "d_separated",
    "derive_seed",
    "ebic",
    "fisher_z",
    "gen_ba_dag",
    "gen_er_dag",
    "grid_search_fit",
    "is_acyclic",
    "log_penalty",
    "modified_pc_stable",
    "neighborhood_select",
    "normal_quantile",
    "orient_cpdag",
    "partial_correlation",
    "pc_stable",
    "sample_correlation",
    "simulate_sem",
    "skeleton_metrics",
    "skeleton_of",
    "standardize",
    "true_ggm_of",
    "InsufficientSample",
    "IoError",
    "NumericError",
]

__version__ = "0.1.0"
