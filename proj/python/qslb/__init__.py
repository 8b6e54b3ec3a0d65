"""Bound laws of unitary quantum evolution: states, observables, the
characteristic-time catalog, trajectory scoring, and saturation searches.

Everything is implemented in the C++ core; this package re-exports it.
"""

from ._core import (
    BoundPoint,
    BoundReport,
    CollectiveOptimum,
    DegenerateDenominator,
    EqualityBeta,
    Error,
    GaussianPacketParams,
    GaussianPacketReport,
    ModelInstance,
    Moments,
    NoCrossing,
    NotEigenstateStart,
    Observable,
    OutOfValidityWindow,
    Propagator,
    QuantumState,
    RateBoundCheck,
    RelaxedPair,
    Scenario,
    SearchConfig,
    SearchReport,
    TauCatalog,
    TrialOutcome,
    TwoLevelSplit,
    UnitsConfig,
    Violation,
    ZeroDeltaE,
    ZeroFirstMoment,
    beta_ceiling,
    collective_product_state,
    collective_spin_model,
    equality_beta,
    evaluate_trajectory,
    evolve,
    expectation,
    fidelity,
    fidelity_floor,
    first_crossing_time,
    format_double,
    gaussian_packet_observables,
    load_scenario,
    min_crossing_search,
    min_relaxed_search,
    observable_moments,
    optimal_collective_crossing,
    orthogonality_time_floor,
    parse_scenario_text,
    rate_bound_check,
    ratio_from_components,
    relaxed_crossing_time,
    relaxed_pair,
    sample_instance,
    sample_relaxed_instance,
    shift_observable,
    spin_half_model,
    tan_ratio_ceiling,
    tau_eigenstate_strict,
    tau_franson,
    tau_relaxed,
    tau_relaxed_limit,
    time_grid,
    two_level_decompose,
    uncertainty,
    write_scenario,
)

__all__ = [name for name in dir() if not name.startswith("_")]
