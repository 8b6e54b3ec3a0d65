#pragma once

// Shared oracles for the test suites: a series-based matrix exponential, a
// tensor product, and random instances drawn independently of the library's
// own sampler, so agreement between the two is evidence rather than tautology.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qslb/quantum.hpp"

namespace oracle {

using qslb::Complex;
using qslb::Matrix;
using qslb::Vector;

/// exp(A) by scaling-and-squaring with a 40-term Taylor tail. Accurate to
/// round-off for the small, well-conditioned matrices used in tests.
inline Matrix expm(const Matrix& a) {
    int squarings = 0;
    double scale = 1.0;
    const double norm = a.cwiseAbs().maxCoeff() * static_cast<double>(a.rows());
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Matrix b = a * scale;
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    Matrix sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

/// psi(t) = exp(-i H t / hbar) psi(0), the brute-force evolution.
inline Vector evolve_brute(const Matrix& h, const Vector& psi, double t, double hbar = 1.0) {
    const Complex minus_i(0.0, -1.0);
    return expm(minus_i * h * (t / hbar)) * psi;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

/// Operator acting as `op` on spin `site` of `n` spins, identity elsewhere.
inline Matrix embed_site(const Matrix& op, int site, int n) {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) out = kron(out, i == site ? op : Matrix::Identity(2, 2));
    return out;
}

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    return Matrix(0.5 * (a + a.adjoint()));
}

inline Vector random_state_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

}  // namespace oracle
