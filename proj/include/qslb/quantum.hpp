#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "qslb/errors.hpp"

namespace qslb {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Constants entering the dynamics. Everything internal works in natural
/// units (hbar = 1); a different hbar rescales the e^{-iHt/hbar} phases and
/// the time windows derived from them, nothing else.
struct UnitsConfig {
    UnitsConfig() = default;
    explicit UnitsConfig(double hbar_value) : hbar(hbar_value) {
        if (!(hbar > 0.0)) throw Error("UnitsConfig: hbar must be positive");
    }
    double hbar = 1.0;
};

/// A normalized pure state: |psi| = 1 within 1e-12, dimension >= 2.
class QuantumState {
public:
    explicit QuantumState(Vector amplitudes);

    /// Rescales an arbitrary nonzero vector onto the unit sphere first.
    static QuantumState normalized(Vector amplitudes);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }

private:
    Vector amplitudes_;
};

/// A Hermitian operator. Doubles as a Hamiltonian by role; the constructor
/// is the validation gate (max-entry |A - A^dagger| <= 1e-12 * scale).
class Observable {
public:
    explicit Observable(Matrix entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }

private:
    Matrix entries_;
};

/// Eigenvalues (ascending) and orthonormal eigenvectors of an Observable,
/// good enough to reconstruct it to 1e-10 relative. Enables exact evolution.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;  // orthonormal columns

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// psi_t = alpha * psi_0 + beta * |orth>, with beta real and nonnegative.
/// orth_state is absent when psi_t is parallel to psi_0 (beta <= 1e-8).
struct TwoLevelSplit {
    Complex alpha;
    double beta = 0.0;
    std::optional<QuantumState> orth_state;
};

Observable validate_hermitian(const Matrix& entries);

double expectation(const QuantumState& state, const Observable& obs);
double uncertainty(const QuantumState& state, const Observable& obs);

/// One-pass <Q> and DeltaQ; the variance is formed from |Q psi|^2 so it
/// cannot go more negative than round-off.
struct Moments {
    double mean;
    double sd;
};
Moments observable_moments(const QuantumState& state, const Observable& obs);

SpectralDecomposition spectral_decompose(const Observable& obs);

QuantumState evolve(const SpectralDecomposition& hamiltonian, const QuantumState& state,
                    double t, UnitsConfig units = {});

double fidelity(const QuantumState& a, const QuantumState& b);

/// Q' = Q - <state|Q|state> I, so the reference state sits at eigenvalue 0.
Observable shift_observable(const Observable& obs, const QuantumState& state);

TwoLevelSplit two_level_decompose(const QuantumState& psi0, const QuantumState& psit);

/// Caches the eigenbasis coordinates of one initial state so a trajectory
/// can be sampled at many times cheaply.
class Propagator {
public:
    Propagator(const Observable& hamiltonian, QuantumState initial, UnitsConfig units = {});

    QuantumState at(double t) const;
    const QuantumState& initial() const { return initial_; }

private:
    SpectralDecomposition spec_;
    Vector coeffs_;  // V^dagger psi0
    QuantumState initial_;
    double hbar_;
};

}  // namespace qslb
