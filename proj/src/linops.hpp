// linops.hpp: dense complex-Hermitian operator algebra on truncated
// tensor-product Hilbert spaces. Construction, eigendecomposition, matrix
// functions, traces, and partial traces. All functions are pure; values are
// safe to share across threads.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>

namespace qotto {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace linops {

// Tolerances used throughout; sized for double precision at dim <= ~128.
inline constexpr double kHermitianTol = 1e-12;      // relative to max |H|
inline constexpr double kReconstructionTol = 1e-10; // relative to max(1, |H|)
inline constexpr double kImagTraceTol = 1e-10;      // absolute

// --------------------------- Product space ----------------------------------

// Two-level system tensored with an n-level truncated bosonic mode, TLS factor
// first: flat index = s * dim_rc + k for TLS index s and mode index k.
struct ProductSpace {
    int dim_rc{1};

    static constexpr int dim_tls() { return 2; }
    int total_dim() const { return dim_tls() * dim_rc; }
    int flat_index(int s, int k) const { return s * dim_rc + k; }
};

// --------------------------- Elementary operators ---------------------------

Matrix identity(int dim);
Matrix sigma_x();
Matrix sigma_z();

// Truncated bosonic annihilation operator: [k-1][k] = sqrt(k), k = 1..n-1.
Matrix annihilation(int n);

// Number operator a†a on the truncated space, diag(0, 1, ..., n-1).
Matrix number_operator(int n);

// Kronecker product under the ProductSpace ordering (left factor major).
Matrix kron(const Matrix& a, const Matrix& b);

// --------------------------- Hermitian checks -------------------------------

// max |H[i][j] - conj(H[j][i])| <= kHermitianTol * max |H|
bool is_hermitian(const Matrix& h, double tol = kHermitianTol);

// Force exact Hermitian symmetry, (H + H†)/2.
Matrix hermitize(const Matrix& h);

// --------------------------- Eigendecomposition -----------------------------

// Eigenvalues ascending; eigenvectors unitary, column j paired with
// eigenvalue j, each column's largest-magnitude component made real-positive
// so results are reproducible run to run.
struct EigenSystem {
    RealVector eigenvalues;
    Matrix eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Dense Hermitian eigensolver. Rejects non-Hermitian input; verifies the
// reconstruction and unitarity residuals and reports them on failure.
EigenSystem hermitian_eig(const Matrix& h);

// --------------------------- Matrix functions -------------------------------

// f applied to the spectrum: V diag(f(lambda_i)) V†. Rejects f values that
// are not finite on any eigenvalue (e.g. log of a non-positive spectrum).
Matrix matrix_function(const Matrix& h, const std::function<double(double)>& f);

// --------------------------- Traces -----------------------------------------

// Re tr(obs * rho). The imaginary part of the trace must be negligible
// (|Im| <= kImagTraceTol); a violation signals a non-Hermitian pipeline bug.
double expectation(const Matrix& obs, const Matrix& rho);

// Trace out the bosonic mode: rho_S[s][s'] = sum_k rho[(s,k)][(s',k)].
Matrix partial_trace_rc(const Matrix& rho, const ProductSpace& space);

// Trace out the TLS: rho_RC[k][k'] = sum_s rho[(s,k)][(s,k')].
Matrix partial_trace_tls(const Matrix& rho, const ProductSpace& space);

} // namespace linops
} // namespace qotto
