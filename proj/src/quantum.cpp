#include "qslb/quantum.hpp"

#include <cmath>

namespace qslb {

namespace {

void require_same_dim(int a, int b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

}  // namespace

QuantumState::QuantumState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw BadDimension("QuantumState: dimension must be at least 2");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw NotNormalized("QuantumState: |psi|^2 = " + std::to_string(norm2));
    }
}

QuantumState QuantumState::normalized(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw NotNormalized("QuantumState: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return QuantumState(std::move(amplitudes));
}

Observable::Observable(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw BadDimension("Observable: matrix must be square");
    }
    if (entries_.rows() < 2) {
        throw BadDimension("Observable: dimension must be at least 2");
    }
    const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1.0);
    const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-12 * scale) {
        throw NotHermitian("Observable: |A - A^dagger| = " + std::to_string(defect));
    }
}

Observable validate_hermitian(const Matrix& entries) {
    return Observable(entries);
}

Moments observable_moments(const QuantumState& state, const Observable& obs) {
    require_same_dim(state.dim(), obs.dim());
    const Vector applied = obs.entries() * state.amplitudes();
    const double mean = state.amplitudes().dot(applied).real();
    // two-pass form: <Q^2> - <Q>^2 cancels catastrophically near an
    // eigenvector, reporting sd ~ 1e-8 where the true spread is zero
    const double variance = (applied - mean * state.amplitudes()).squaredNorm();
    return Moments{mean, std::sqrt(variance)};
}

double expectation(const QuantumState& state, const Observable& obs) {
    require_same_dim(state.dim(), obs.dim());
    const Complex value = state.amplitudes().dot(obs.entries() * state.amplitudes());
    if (std::abs(value.imag()) > 1e-10) {
        throw NonrealExpectation("expectation: imaginary residue " +
                                 std::to_string(value.imag()));
    }
    return value.real();
}

double uncertainty(const QuantumState& state, const Observable& obs) {
    return observable_moments(state, obs).sd;
}

SpectralDecomposition spectral_decompose(const Observable& obs) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(obs.entries());
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("spectral_decompose: eigensolver did not converge");
    }
    SpectralDecomposition spec{solver.eigenvalues(), solver.eigenvectors()};

    const double scale = std::max(spec.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
    const Matrix rebuilt =
        spec.eigenvectors * spec.eigenvalues.asDiagonal() * spec.eigenvectors.adjoint();
    if ((rebuilt - obs.entries()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw EigensolverFailure("spectral_decompose: reconstruction check failed");
    }
    const Matrix gram = spec.eigenvectors.adjoint() * spec.eigenvectors;
    if ((gram - Matrix::Identity(spec.dim(), spec.dim())).cwiseAbs().maxCoeff() > 1e-10) {
        throw EigensolverFailure("spectral_decompose: eigenvectors not orthonormal");
    }
    return spec;
}

QuantumState evolve(const SpectralDecomposition& hamiltonian, const QuantumState& state,
                    double t, UnitsConfig units) {
    require_same_dim(hamiltonian.dim(), state.dim());
    if (!(units.hbar > 0.0)) throw Error("evolve: hbar must be positive");
    const Vector coeffs = hamiltonian.eigenvectors.adjoint() * state.amplitudes();
    Vector rotated(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const double phase = -hamiltonian.eigenvalues[k] * t / units.hbar;
        rotated[k] = coeffs[k] * Complex(std::cos(phase), std::sin(phase));
    }
    return QuantumState(hamiltonian.eigenvectors * rotated);
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    require_same_dim(a.dim(), b.dim());
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

Observable shift_observable(const Observable& obs, const QuantumState& state) {
    const double mean = expectation(state, obs);
    Matrix shifted = obs.entries();
    shifted.diagonal().array() -= mean;
    return Observable(std::move(shifted));
}

TwoLevelSplit two_level_decompose(const QuantumState& psi0, const QuantumState& psit) {
    require_same_dim(psi0.dim(), psit.dim());
    const Complex alpha = psi0.amplitudes().dot(psit.amplitudes());
    // beta as the residual norm rather than sqrt(1 - |alpha|^2): the latter
    // loses half the significand near parallel states and would report
    // beta ~ 1e-8 where the residual is pure round-off
    Vector residual = psit.amplitudes() - alpha * psi0.amplitudes();
    const double beta = residual.norm();

    TwoLevelSplit split{alpha, beta, std::nullopt};
    if (beta > 1e-8) {
        // second projection pass keeps orthogonality at round-off even for
        // beta barely above the cutoff
        residual -= psi0.amplitudes().dot(residual) * psi0.amplitudes();
        split.orth_state = QuantumState::normalized(std::move(residual));
    }
    return split;
}

Propagator::Propagator(const Observable& hamiltonian, QuantumState initial, UnitsConfig units)
    : spec_(spectral_decompose(hamiltonian)), initial_(std::move(initial)), hbar_(units.hbar) {
    require_same_dim(spec_.dim(), initial_.dim());
    if (!(hbar_ > 0.0)) throw Error("Propagator: hbar must be positive");
    coeffs_ = spec_.eigenvectors.adjoint() * initial_.amplitudes();
}

QuantumState Propagator::at(double t) const {
    Vector rotated(coeffs_.size());
    for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
        const double phase = -spec_.eigenvalues[k] * t / hbar_;
        rotated[k] = coeffs_[k] * Complex(std::cos(phase), std::sin(phase));
    }
    return QuantumState(spec_.eigenvectors * rotated);
}

}  // namespace qslb
