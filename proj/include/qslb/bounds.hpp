#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qslb/quantum.hpp"

namespace qslb {

// Characteristic times, natural units (hbar = 1): a time is 1/energy.

/// hbar / (sqrt(2) dE) — the original approximate window.
double tau_franson(double delta_e);

/// pi hbar / (4 dE) — the strict window for eigenstate starts; half the
/// orthogonalization time.
double tau_eigenstate_strict(double delta_e);

/// sqrt(n) asin(1/(2 sqrt(n))) hbar / dE — the relaxed-problem bound for n
/// collectively precessing spins; n = 1 gives pi hbar / (6 dE).
double tau_relaxed(double delta_e, std::int64_t n);

/// hbar / (2 dE) — the n -> infinity limit of tau_relaxed.
double tau_relaxed_limit(double delta_e);

/// h / (4 dE) = pi hbar / (2 dE) — minimal time to reach an orthogonal state.
double orthogonality_time_floor(double delta_e);

/// All of the above for one dE, as one record.
struct TauCatalog {
    double delta_e;
    double tau1;    // franson
    double tau2;    // eigenstate strict
    double tau3;    // relaxed, two levels
    double tau5;    // relaxed, collective limit
    double t_orth;  // orthogonality floor

    double tau4(std::int64_t n) const { return tau_relaxed(delta_e, n); }
    static TauCatalog for_delta_e(double delta_e);
};

/// cos(dE t), valid on t in [0, pi/(2 dE)].
double fidelity_floor(double delta_e, double t);

/// sin(dE t), same validity window.
double beta_ceiling(double delta_e, double t);

/// tan(dE t) on (0, pi/(2 dE)); +infinity at the window edge (the pole).
double tan_ratio_ceiling(double delta_e, double t);

/// The beta that makes |delta<Q>| = DeltaQ for a given orthogonal component:
/// beta^2 = <1|Q'^2|1> / (2 <1|Q'|1>^2).  reachable says whether beta^2 <= 1.
struct EqualityBeta {
    double beta;
    double beta_sq;
    bool reachable;
};
EqualityBeta equality_beta(const Observable& q_shifted, const QuantumState& orth_state);

/// |delta<Q>| / DeltaQ from the two-level components alone:
/// 1 / sqrt(<1|Q'^2|1> / (beta^2 <1|Q'|1>^2) - 1).
double ratio_from_components(double beta, const Observable& q_shifted,
                             const QuantumState& orth_state);

/// dE dQ >= |<[H,Q]>| / 2, with the commutator expectation cross-checked
/// against a centered finite difference of <Q>(t) (step 1e-6).
struct RateBoundCheck {
    double lhs;             // dE * dQ
    double rhs;             // |<[H,Q]>| / 2
    bool ok;                // lhs >= rhs - 1e-9
    double commutator_abs;  // |<[H,Q]>|
    double derivative_fd;   // |d<Q>/dt| from the finite difference
    bool fd_consistent;     // the two agree to 1e-6 relative
};
RateBoundCheck rate_bound_check(const Observable& hamiltonian, const Observable& obs,
                                const QuantumState& psi);

struct BoundPoint {
    double t;
    double q_mean;
    double delta_q;  // q_mean(t) - q_mean(0); exactly 0 at the first point
    double dq;
    double fid;
    double beta;           // sqrt(1 - fid^2)
    double ratio;          // |delta_q| / dq; NaN when undefined
    bool ratio_defined;    // false iff dq <= 1e-10 (except the t = 0 limit)
    double fid_floor;      // NaN outside the validity window
    double beta_ceiling;   // NaN outside the validity window
    double tan_ceiling;    // NaN outside the window, +inf at the pole
    bool in_window;        // t <= pi hbar / (2 dE)
    bool franson_ok;
    bool fidelity_ok;
    bool beta_ok;
    bool tan_ok;
};

struct BoundReport {
    std::vector<BoundPoint> points;
    double delta_e = 0.0;
    double window_end = 0.0;   // pi hbar / (2 dE)
    double franson_end = 0.0;  // tau2
    bool eigenstate_start = false;
    bool window_respected = false;  // whole grid inside the validity window

    /// Name and time of the first false flag, empty when everything holds.
    struct Violation {
        std::string inequality;
        double t;
    };
    std::vector<Violation> violations() const;
    bool all_ok() const { return violations().empty(); }
};

/// Walks a trajectory and scores every inequality per grid point. The grid
/// must start at 0 and ascend strictly. Throws ZeroDeltaE for stationary
/// initial states (uncertainty of H <= 1e-12).
BoundReport evaluate_trajectory(const Observable& hamiltonian, const QuantumState& psi0,
                                const Observable& obs, std::span<const double> grid,
                                UnitsConfig units = {});

}  // namespace qslb
