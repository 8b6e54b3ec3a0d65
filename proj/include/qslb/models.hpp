#pragma once

#include <cstdint>
#include <string>

#include "qslb/quantum.hpp"

namespace qslb {

/// A closed (H, Q, psi0) triple ready for trajectory evaluation.
struct ModelInstance {
    Observable hamiltonian;
    Observable observable_q;
    QuantumState initial_state;
    double delta_e;  // uncertainty of H in the initial state, cached
    std::string label;

    static ModelInstance build(Observable hamiltonian, Observable observable_q,
                               QuantumState initial_state, std::string label);
};

/// Two-level precession: H = delta_e * sigma_y, Q = sigma_z, starting spin-up,
/// so the state sweeps (cos(delta_e t), sin(delta_e t)).
ModelInstance spin_half_model(double delta_e);

/// Extremal two-level pair for the relaxed problem: evolving psi_in under the
/// spin-half Hamiltonian for transit_time lands exactly on psi_f.
struct RelaxedPair {
    QuantumState psi_in;
    QuantumState psi_f;
    double transit_time;
};
RelaxedPair relaxed_pair(double delta_e);

/// n identically precessing spins, kept in the symmetric spin-J sector
/// (J = n/2, dimension n + 1): Q = 2 Jz, H = 2 b Jy with b = delta_e_total /
/// sqrt(n) so the all-up start has energy spread delta_e_total.
ModelInstance collective_spin_model(std::int64_t n, double delta_e_total);

/// Symmetric product state with every spin tilted by phi from the pole:
/// per-spin amplitudes (cos phi, sin phi), expanded in the Jz ladder basis.
QuantumState collective_product_state(std::int64_t n, double phi);

struct GaussianPacketParams {
    double mass;
    double p0;  // mean momentum
    double dp;  // momentum spread
    double x0;  // initial position mean
    UnitsConfig units{};
};

struct GaussianPacketReport {
    double x_mean;
    double dx;
    double de_exact;
    double de_approx;  // p0 dp / m, the large-velocity shortcut
    double crossing_time_exact;
    double crossing_time_bound;  // hbar / (2 de_exact)
};

/// Closed-form observables of a free minimal-uncertainty packet at time t,
/// plus the first time the drift of <x> overtakes the spreading width
/// (bisection after a doubling bracket; NoCrossing if drift never wins).
GaussianPacketReport gaussian_packet_observables(const GaussianPacketParams& params, double t);

}  // namespace qslb
