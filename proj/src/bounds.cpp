#include "qslb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qslb/errors.hpp"

namespace qslb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFlagSlack = 1e-9;
constexpr double kWindowSlack = 1e-12;

void require_positive_delta_e(double delta_e) {
    if (!(delta_e > 0.0)) throw NonpositiveDeltaE("delta_e must be positive");
}

// Angle dE t, after rejecting times outside [0, pi/2] (up to round-off).
double window_angle(double delta_e, double t) {
    require_positive_delta_e(delta_e);
    const double theta = delta_e * t;
    if (theta < -kWindowSlack || theta > kPi / 2 + kWindowSlack)
        throw OutOfValidityWindow("time outside [0, pi/(2 delta_e)]");
    return theta;
}

}  // namespace

double tau_franson(double delta_e) {
    require_positive_delta_e(delta_e);
    return 1.0 / (std::numbers::sqrt2 * delta_e);
}

double tau_eigenstate_strict(double delta_e) {
    require_positive_delta_e(delta_e);
    return kPi / (4.0 * delta_e);
}

double tau_relaxed(double delta_e, std::int64_t n) {
    require_positive_delta_e(delta_e);
    if (n < 1) throw BadN("spin count must be at least 1");
    const double root_n = std::sqrt(static_cast<double>(n));
    return root_n * std::asin(1.0 / (2.0 * root_n)) / delta_e;
}

double tau_relaxed_limit(double delta_e) {
    require_positive_delta_e(delta_e);
    return 0.5 / delta_e;
}

double orthogonality_time_floor(double delta_e) {
    require_positive_delta_e(delta_e);
    return kPi / (2.0 * delta_e);
}

TauCatalog TauCatalog::for_delta_e(double delta_e) {
    return TauCatalog{delta_e,
                      tau_franson(delta_e),
                      tau_eigenstate_strict(delta_e),
                      tau_relaxed(delta_e, 1),
                      tau_relaxed_limit(delta_e),
                      orthogonality_time_floor(delta_e)};
}

double fidelity_floor(double delta_e, double t) { return std::cos(window_angle(delta_e, t)); }

double beta_ceiling(double delta_e, double t) { return std::sin(window_angle(delta_e, t)); }

double tan_ratio_ceiling(double delta_e, double t) {
    const double theta = window_angle(delta_e, t);
    if (!(theta > 0.0)) throw OutOfValidityWindow("tangent ceiling is defined for t > 0 only");
    if (theta >= kPi / 2 - 1e-12) return std::numeric_limits<double>::infinity();
    return std::tan(theta);
}

namespace {

// First and second moments of q in the given state.
std::pair<double, double> component_moments(const Observable& q, const QuantumState& state) {
    const Moments m = observable_moments(state, q);
    return {m.mean, m.sd * m.sd + m.mean * m.mean};
}

}  // namespace

EqualityBeta equality_beta(const Observable& q_shifted, const QuantumState& orth_state) {
    const auto [m1, m2] = component_moments(q_shifted, orth_state);
    if (std::abs(m1) <= 1e-10)
        throw ZeroFirstMoment("orthogonal component has no first moment; no equality point");
    const double beta_sq = m2 / (2.0 * m1 * m1);
    return EqualityBeta{std::sqrt(beta_sq), beta_sq, beta_sq <= 1.0};
}

double ratio_from_components(double beta, const Observable& q_shifted,
                             const QuantumState& orth_state) {
    if (!(beta > 0.0) || beta > 1.0) throw Error("beta must lie in (0, 1]");
    const auto [m1, m2] = component_moments(q_shifted, orth_state);
    if (std::abs(m1) <= 1e-10)
        throw ZeroFirstMoment("orthogonal component has no first moment; ratio formula degenerate");
    const double arg = m2 / (beta * beta * m1 * m1) - 1.0;
    if (!(arg > 0.0))
        throw DegenerateDenominator("uncertainty vanishes at this beta; ratio undefined");
    return 1.0 / std::sqrt(arg);
}

RateBoundCheck rate_bound_check(const Observable& hamiltonian, const Observable& obs,
                                const QuantumState& psi) {
    if (hamiltonian.dim() != psi.dim() || obs.dim() != psi.dim())
        throw DimensionMismatch("operator and state dimensions disagree");

    const double de = uncertainty(psi, hamiltonian);
    const double dq = uncertainty(psi, obs);

    // <HQ> = (H psi)^dag (Q psi); <QH> is its conjugate, so the commutator
    // expectation is 2i Im<HQ>.
    const Vector h_psi = hamiltonian.entries() * psi.amplitudes();
    const Vector q_psi = obs.entries() * psi.amplitudes();
    const Complex hq = h_psi.dot(q_psi);
    const double commutator_abs = std::abs(hq - std::conj(hq));

    RateBoundCheck out;
    out.lhs = de * dq;
    out.rhs = 0.5 * commutator_abs;
    out.ok = out.lhs >= out.rhs - kFlagSlack;
    out.commutator_abs = commutator_abs;

    constexpr double step = 1e-6;
    const SpectralDecomposition spec = spectral_decompose(hamiltonian);
    const double forward = observable_moments(evolve(spec, psi, step), obs).mean;
    const double backward = observable_moments(evolve(spec, psi, -step), obs).mean;
    out.derivative_fd = std::abs((forward - backward) / (2.0 * step));

    // |d<Q>/dt| = |<[H,Q]>| at hbar = 1. Central differencing amplifies the
    // mean's round-off by 1/step, so the agreement floor scales with the
    // observable and the dimension; genuine disagreements are of order the
    // rate itself and still stand out.
    const double q_scale = std::max(obs.entries().cwiseAbs().maxCoeff(), 1.0);
    const double fd_noise = 8.0 * static_cast<double>(psi.dim()) *
                            std::numeric_limits<double>::epsilon() * q_scale / step;
    out.fd_consistent = std::abs(out.derivative_fd - commutator_abs) <=
                        1e-6 * std::max(out.derivative_fd, commutator_abs) + fd_noise;
    return out;
}

std::vector<BoundReport::Violation> BoundReport::violations() const {
    std::vector<Violation> out;
    for (const BoundPoint& p : points) {
        if (!p.franson_ok) out.push_back({"franson", p.t});
        if (!p.fidelity_ok) out.push_back({"fidelity_floor", p.t});
        if (!p.beta_ok) out.push_back({"beta_ceiling", p.t});
        if (!p.tan_ok) out.push_back({"tan_ratio_ceiling", p.t});
    }
    return out;
}

BoundReport evaluate_trajectory(const Observable& hamiltonian, const QuantumState& psi0,
                                const Observable& obs, std::span<const double> grid,
                                UnitsConfig units) {
    if (grid.empty()) throw GridNotAscending("time grid is empty");
    if (grid.front() != 0.0) throw GridNotAscending("time grid must start at t = 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw GridNotAscending("time grid must ascend strictly");

    const double delta_e = uncertainty(psi0, hamiltonian);
    if (delta_e <= 1e-12) throw ZeroDeltaE("initial state is stationary; every bound is vacuous");

    const Propagator prop(hamiltonian, psi0, units);

    BoundReport report;
    report.delta_e = delta_e;
    report.window_end = kPi * units.hbar / (2.0 * delta_e);
    report.franson_end = kPi * units.hbar / (4.0 * delta_e);
    report.eigenstate_start = uncertainty(psi0, obs) <= 1e-10;
    report.window_respected = grid.back() <= report.window_end + kWindowSlack;
    report.points.reserve(grid.size());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double q0 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const QuantumState psit = prop.at(t);
        const Moments m = observable_moments(psit, obs);
        if (i == 0) q0 = m.mean;

        BoundPoint p;
        p.t = t;
        p.q_mean = m.mean;
        p.delta_q = i == 0 ? 0.0 : m.mean - q0;
        p.dq = m.sd;
        const TwoLevelSplit split = two_level_decompose(psi0, psit);
        p.fid = std::abs(split.alpha);
        p.beta = split.beta;

        if (i == 0) {
            p.ratio = 0.0;  // delta_q is identically 0 here, whatever dq is
            p.ratio_defined = true;
        } else if (m.sd > 1e-10) {
            p.ratio = std::abs(p.delta_q) / m.sd;
            p.ratio_defined = true;
        } else {
            p.ratio = nan;
            p.ratio_defined = false;
        }

        const double theta = delta_e * t / units.hbar;
        p.in_window = theta <= kPi / 2 + kWindowSlack;
        if (p.in_window) {
            const double scaled_t = t / units.hbar;
            p.fid_floor = fidelity_floor(delta_e, scaled_t);
            p.beta_ceiling = qslb::beta_ceiling(delta_e, scaled_t);
            // t = 0 sits outside the tangent law's open interval; both sides
            // of the inequality vanish there, so the limit value stands in.
            p.tan_ceiling = i == 0 ? 0.0 : tan_ratio_ceiling(delta_e, scaled_t);
        } else {
            p.fid_floor = nan;
            p.beta_ceiling = nan;
            p.tan_ceiling = nan;
        }

        // The mean-vs-uncertainty laws take an eigenstate start; the fidelity
        // and beta laws hold for any start inside the window.
        p.franson_ok =
            !report.eigenstate_start || std::abs(p.delta_q) <= p.dq + kFlagSlack;
        p.fidelity_ok = !p.in_window || p.fid >= p.fid_floor - kFlagSlack;
        p.beta_ok = !p.in_window || p.beta <= p.beta_ceiling + kFlagSlack;
        p.tan_ok = !report.eigenstate_start || !p.in_window || !p.ratio_defined ||
                   std::isinf(p.tan_ceiling) || p.ratio <= p.tan_ceiling + kFlagSlack;

        report.points.push_back(p);
    }
    return report;
}

}  // namespace qslb
