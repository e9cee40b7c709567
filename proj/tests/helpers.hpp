// helpers.hpp: shared test utilities. The matrix-exponential oracle here is
// a plain scaled-and-squared Taylor series so it exercises a different route
// than the eigendecomposition used by the library.

#pragma once

#include <cstdint>
#include <random>

#include "cycle.hpp"
#include "linops.hpp"

namespace testutil {

using qotto::Complex;
using qotto::Matrix;

inline Matrix random_hermitian(int dim, std::uint64_t seed, double max_norm = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = Complex(u(rng), u(rng));
        }
    }
    m = 0.5 * (m + Matrix(m.adjoint()));
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm > 0.0) m *= max_norm / norm;
    return m;
}

// Entries from {0, +-0.5, +-1, +-2}: products of three such numbers are
// exact in double precision, so Kronecker associativity holds bitwise.
inline Matrix random_dyadic(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 6);
    static const double values[] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(values[pick(rng)], values[pick(rng)]);
        }
    }
    return m;
}

// 20-term Taylor series without scaling; adequate for |a| <~ 1.
inline Matrix taylor_expm_plain(const Matrix& a, int terms = 20) {
    Matrix sum = Matrix::Identity(a.rows(), a.cols());
    Matrix term = sum;
    for (int k = 1; k <= terms; ++k) {
        term = (term * a) / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

inline Matrix taylor_expm_scaled(const Matrix& a, int terms = 24) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Matrix sum = taylor_expm_plain(Matrix(a * scale), terms);
    for (int s = 0; s < squarings; ++s) {
        sum = Matrix(sum * sum);
    }
    return sum;
}

// Parameters of the reference engine configuration used across the tests:
// delta_h = delta_c = 1, beta_h = 1, beta_c = 2.5, omega_c = 2 (energies in
// units of the cold bias).
inline qotto::cycle::CycleConfig reference_config(double epsilon_h, double alpha,
                                                  int n = 30) {
    qotto::cycle::CycleConfig cfg;
    cfg.tls_hot = {epsilon_h, 1.0};
    cfg.tls_cold = {1.0, 1.0};
    cfg.hot = {1.0, alpha, 2.0};
    cfg.cold = {2.5, alpha, 2.0};
    cfg.n = n;
    return cfg;
}

// Signed sum of the eight consecutive point-to-point differences around the
// closed loop; must telescope to zero for every computed cycle.
inline double ledger_closure(const qotto::cycle::CyclePointEnergies& p) {
    return (p.a_prime - p.a) + (p.b - p.a_prime) + (p.b_prime - p.b) +
           (p.c - p.b_prime) + (p.c_prime - p.c) + (p.d - p.c_prime) +
           (p.d_prime - p.d) + (p.a - p.d_prime);
}

} // namespace testutil
