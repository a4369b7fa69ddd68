"""Set-based reachability analysis of ARMAX input-output models."""

from ._core import (
    ArmaxModel,
    ContainmentReport,
    InputDecomposition,
    IntervalHull,
    LabelRegistry,
    ReachResult,
    SampleRun,
    SetChannel,
    StateSpaceModel,
    SymbolicZonotope,
    UncertaintySpec,
    Zonotope,
    cartesian_product,
    compact,
    containment_report,
    contains_point,
    deadbeat_gain,
    deadbeat_residual,
    estimate_initial_state_set,
    exact_add,
    interval_hull,
    linear_map,
    minkowski_sum,
    observability_index,
    project_polygon,
    reach_alg1,
    reach_alg2,
    reach_dependent,
    reach_dependent_dp,
    reach_oneshot,
    reach_ss,
    relabel_fresh,
    run_samples,
    simulate_armax,
    simulate_ss,
    ss_to_armax,
    to_symbolic,
    unstack,
)

__all__ = [
    "ArmaxModel",
    "ContainmentReport",
    "InputDecomposition",
    "IntervalHull",
    "LabelRegistry",
    "ReachResult",
    "SampleRun",
    "SetChannel",
    "StateSpaceModel",
    "SymbolicZonotope",
    "UncertaintySpec",
    "Zonotope",
    "cartesian_product",
    "compact",
    "containment_report",
    "contains_point",
    "deadbeat_gain",
    "deadbeat_residual",
    "estimate_initial_state_set",
    "exact_add",
    "interval_hull",
    "linear_map",
    "minkowski_sum",
    "observability_index",
    "project_polygon",
    "reach_alg1",
    "reach_alg2",
    "reach_dependent",
    "reach_dependent_dp",
    "reach_oneshot",
    "reach_ss",
    "relabel_fresh",
    "run_samples",
    "simulate_armax",
    "simulate_ss",
    "ss_to_armax",
    "to_symbolic",
    "unstack",
]
