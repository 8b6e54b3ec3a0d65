#include "qslb/models.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qslb/errors.hpp"

namespace qslb {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

QuantumState tilted_qubit(double phi) {
    Vector v(2);
    v << std::cos(phi), std::sin(phi);
    return QuantumState::normalized(v);
}

}  // namespace

ModelInstance ModelInstance::build(Observable hamiltonian, Observable observable_q,
                                   QuantumState initial_state, std::string label) {
    if (hamiltonian.dim() != initial_state.dim() || observable_q.dim() != initial_state.dim())
        throw DimensionMismatch("model pieces have mismatched dimensions");
    const double delta_e = uncertainty(initial_state, hamiltonian);
    return ModelInstance{std::move(hamiltonian), std::move(observable_q),
                         std::move(initial_state), delta_e, std::move(label)};
}

ModelInstance spin_half_model(double delta_e) {
    if (!(delta_e > 0.0)) throw NonpositiveDeltaE("delta_e must be positive");
    return ModelInstance::build(Observable(delta_e * sigma_y()), Observable(sigma_z()),
                                tilted_qubit(0.0), "spin-half");
}

RelaxedPair relaxed_pair(double delta_e) {
    if (!(delta_e > 0.0)) throw NonpositiveDeltaE("delta_e must be positive");
    return RelaxedPair{tilted_qubit(kPi / 6), tilted_qubit(kPi / 3), kPi / (6.0 * delta_e)};
}

ModelInstance collective_spin_model(std::int64_t n, double delta_e_total) {
    if (n < 1) throw BadN("spin count must be at least 1");
    if (!(delta_e_total > 0.0)) throw NonpositiveDeltaE("delta_e must be positive");

    const auto dim = static_cast<int>(n + 1);
    const double j = 0.5 * static_cast<double>(n);

    // Ladder basis ordered by descending Jz eigenvalue: index i holds m = j - i.
    Matrix jz = Matrix::Zero(dim, dim);
    Matrix jplus = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double m = j - i;
        jz(i, i) = m;
        if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const Matrix jy = (jplus - jplus.adjoint()) / Complex(0, 2);

    const double b = delta_e_total / std::sqrt(static_cast<double>(n));
    Vector all_up = Vector::Zero(dim);
    all_up(0) = 1.0;
    return ModelInstance::build(Observable(2.0 * b * jy), Observable(2.0 * jz),
                                QuantumState(all_up), "nspin-" + std::to_string(n));
}

QuantumState collective_product_state(std::int64_t n, double phi) {
    if (n < 1) throw BadN("spin count must be at least 1");
    const auto dim = static_cast<int>(n + 1);
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    // k down-spins out of n carry amplitude sqrt(C(n,k)) c^(n-k) s^k; the
    // binomial theorem makes the vector unit-norm up to round-off.
    Vector v(dim);
    double binom = 1.0;
    for (int k = 0; k < dim; ++k) {
        v(k) = std::sqrt(binom) * std::pow(c, static_cast<double>(n - k)) *
               std::pow(s, static_cast<double>(k));
        binom *= static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return QuantumState::normalized(v);
}

GaussianPacketReport gaussian_packet_observables(const GaussianPacketParams& params, double t) {
    if (!(params.mass > 0.0)) throw Error("packet mass must be positive");
    if (!(params.dp > 0.0)) throw Error("packet momentum spread must be positive");
    if (!(params.units.hbar > 0.0)) throw Error("hbar must be positive");

    const double hbar = params.units.hbar;
    const double dx0 = hbar / (2.0 * params.dp);
    const double drift = params.p0 / params.mass;
    const auto width = [&](double s) { return std::hypot(dx0, params.dp * s / params.mass); };

    GaussianPacketReport out;
    out.x_mean = params.x0 + drift * t;
    out.dx = width(t);
    out.de_exact =
        (params.dp / params.mass) * std::sqrt(params.p0 * params.p0 + 0.5 * params.dp * params.dp);
    out.de_approx = params.p0 * params.dp / params.mass;
    out.crossing_time_bound = hbar / (2.0 * out.de_exact);

    // First s > 0 where the drift distance equals the width. The width grows
    // asymptotically like (dp/m)*s, so a crossing exists exactly when the
    // drift speed beats that slope; probing gap signs along a doubling
    // bracket would misfire once hypot rounds width(s) down to (dp/m)*s.
    if (!(drift > params.dp / params.mass)) {
        throw NoCrossing("drift never overtakes packet spreading");
    }
    const auto gap = [&](double s) { return drift * s - width(s); };
    double lo = 0.0;
    double hi = dx0 * params.mass / params.dp;
    while (gap(hi) < 0.0) hi *= 2.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    out.crossing_time_exact = 0.5 * (lo + hi);
    return out;
}

}  // namespace qslb
