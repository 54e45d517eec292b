"""Veto-core computations for ranked preference profiles.

Exact critical-epsilon analysis via max-flow over rationals, veto-based
voting rules, query-limited core search, and subsampling experiments.
"""

from ._vetocore import (
    Profile,
    VetocoreError,
    btl_distribution,
    classic_pvc,
    compute_tau,
    critical_epsilon,
    epsilon_pvc,
    evaluate_insertion,
    gamma_veto,
    impartial_culture,
    mallows,
    max_blocking_slack,
    middle_out_ranking,
    parse_profile,
    serialize_profile,
    simulate_run,
    subsample,
    two_bloc,
    two_bloc_center,
    uniform_distribution,
    veto_function,
    vote,
)

__all__ = [
    "Profile",
    "VetocoreError",
    "btl_distribution",
    "classic_pvc",
    "compute_tau",
    "critical_epsilon",
    "epsilon_pvc",
    "evaluate_insertion",
    "gamma_veto",
    "impartial_culture",
    "mallows",
    "max_blocking_slack",
    "middle_out_ranking",
    "parse_profile",
    "serialize_profile",
    "simulate_run",
    "subsample",
    "two_bloc",
    "two_bloc_center",
    "uniform_distribution",
    "veto_function",
    "vote",
]

__version__ = "0.1.0"
