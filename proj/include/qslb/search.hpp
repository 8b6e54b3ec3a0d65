#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qslb/models.hpp"
#include "qslb/quantum.hpp"

namespace qslb {

struct SearchConfig {
    int dim = 2;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double window = 2.0;       // scan interval [0, window]
    int grid_points = 2048;    // at least 64, and at least 64 * window * dE
    double refine_tol = 1e-10; // bisection bracket width at acceptance
};

struct TrialOutcome {
    std::uint64_t trial_index;
    std::optional<double> crossing;
};

struct SearchReport {
    std::vector<TrialOutcome> trials;
    std::optional<double> min_crossing;
    std::optional<std::uint64_t> argmin_trial;
    std::optional<ModelInstance> argmin_instance;
    double bound_compared = 0.0;
    bool violation = false;
};

/// First t > 0 in [0, window] where |delta<Q>|(t) catches up with dQ(t),
/// for a start that is a Q-eigenstate: grid scan of dQ - |delta<Q>| for its
/// first sign change, then bisection down to refine_tol. Empty when the gap
/// never closes inside the window.
std::optional<double> first_crossing_time(const ModelInstance& instance, double window,
                                          int grid_points, double refine_tol);

/// Relaxed variant, no eigenstate start required: first t > 0 where
/// |delta<Q>|(t) reaches the running maximum of dQ over [0, t]. Interior
/// maxima of dQ are sharpened by golden-section refinement before the
/// bisection so the answer tracks the continuous running max, not the grid's.
std::optional<double> relaxed_crossing_time(const ModelInstance& instance, double window,
                                            int grid_points, double refine_tol);

/// Deterministic random instance: Gaussian Hermitian H and Q, the start a
/// uniformly chosen eigenvector of Q, H shifted and scaled so dE = 1.
ModelInstance sample_instance(int dim, std::uint64_t seed, std::uint64_t trial_index);

/// As sample_instance but with a uniformly random (generically
/// non-eigenstate) start, for the relaxed problem.
ModelInstance sample_relaxed_instance(int dim, std::uint64_t seed, std::uint64_t trial_index);

/// Randomized minimization of the eigenstate crossing time over trials, then
/// derivative-free coordinate descent around the 5 best draws. Violation
/// verdict iff anything lands below pi/4 - 1e-6.
SearchReport min_crossing_search(const SearchConfig& config, int threads = 1);

/// Same machinery against the relaxed crossing time and the bound 1/2.
SearchReport min_relaxed_search(const SearchConfig& config, int threads = 1);

/// Best tilt of the symmetric product start for n collective spins: the tilt
/// whose relaxed crossing time is smallest, found by scan + golden section.
struct CollectiveOptimum {
    double tilt;
    double crossing_time;
};
CollectiveOptimum optimal_collective_crossing(std::int64_t n, double delta_e_total = 1.0);

}  // namespace qslb
