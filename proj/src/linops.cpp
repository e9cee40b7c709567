#include "linops.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace qotto::linops {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << who << ": operator must be square and non-empty, got "
           << m.rows() << "x" << m.cols();
        throw NumericError(os.str());
    }
}

void require_hermitian(const Matrix& h, const char* who) {
    if (!is_hermitian(h)) {
        std::ostringstream os;
        os << who << ": operator is not Hermitian within tolerance "
           << kHermitianTol;
        throw NumericError(os.str());
    }
}

} // namespace

Matrix identity(int dim) {
    if (dim < 1) throw NumericError("identity: dim must be >= 1");
    return Matrix::Identity(dim, dim);
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Matrix annihilation(int n) {
    if (n < 1) throw NumericError("annihilation: truncation n must be >= 1");
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

Matrix number_operator(int n) {
    if (n < 1) throw NumericError("number_operator: truncation n must be >= 1");
    Matrix num = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        num(k, k) = static_cast<double>(k);
    }
    return num;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_hermitian(const Matrix& h, double tol) {
    if (h.rows() != h.cols() || h.rows() == 0) return false;
    const double scale = h.cwiseAbs().maxCoeff();
    const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    return dev <= tol * scale;
}

Matrix hermitize(const Matrix& h) {
    return 0.5 * (h + h.adjoint());
}

EigenSystem hermitian_eig(const Matrix& h) {
    require_square(h, "hermitian_eig");
    require_hermitian(h, "hermitian_eig");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eig: eigensolver failed to converge");
    }

    EigenSystem sys;
    sys.eigenvalues = solver.eigenvalues();
    sys.eigenvectors = solver.eigenvectors();

    // Fix each eigenvector's phase: largest-magnitude component real-positive.
    for (Eigen::Index j = 0; j < sys.eigenvectors.cols(); ++j) {
        Eigen::Index imax = 0;
        double amax = 0.0;
        for (Eigen::Index i = 0; i < sys.eigenvectors.rows(); ++i) {
            const double a = std::abs(sys.eigenvectors(i, j));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (amax > 0.0) {
            const Complex z = sys.eigenvectors(imax, j);
            sys.eigenvectors.col(j) *= std::conj(z) / std::abs(z);
        }
    }

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const Matrix recon = sys.eigenvectors *
                         sys.eigenvalues.cast<Complex>().asDiagonal() *
                         sys.eigenvectors.adjoint();
    const double resid = (recon - h).cwiseAbs().maxCoeff();
    if (resid > kReconstructionTol * scale) {
        std::ostringstream os;
        os << "hermitian_eig: reconstruction residual " << resid
           << " exceeds tolerance " << kReconstructionTol * scale;
        throw NumericError(os.str());
    }
    const double unit = (sys.eigenvectors.adjoint() * sys.eigenvectors -
                         Matrix::Identity(h.rows(), h.cols()))
                            .cwiseAbs()
                            .maxCoeff();
    if (unit > kReconstructionTol) {
        std::ostringstream os;
        os << "hermitian_eig: unitarity residual " << unit
           << " exceeds tolerance " << kReconstructionTol;
        throw NumericError(os.str());
    }
    return sys;
}

Matrix matrix_function(const Matrix& h, const std::function<double(double)>& f) {
    const EigenSystem sys = hermitian_eig(h);
    RealVector mapped(sys.eigenvalues.size());
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        const double v = f(sys.eigenvalues(i));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "matrix_function: f(" << sys.eigenvalues(i)
               << ") is not finite";
            throw NumericError(os.str());
        }
        mapped(i) = v;
    }
    Matrix out = sys.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                 sys.eigenvectors.adjoint();
    return hermitize(out);
}

double expectation(const Matrix& obs, const Matrix& rho) {
    if (obs.rows() != rho.rows() || obs.cols() != rho.cols()) {
        throw NumericError("expectation: dimension mismatch");
    }
    // tr(A B) = sum_ij A_ij B_ji without forming the product.
    const Complex t = obs.cwiseProduct(rho.transpose()).sum();
    if (std::abs(t.imag()) > kImagTraceTol) {
        std::ostringstream os;
        os << "expectation: trace has non-negligible imaginary part "
           << t.imag();
        throw NumericError(os.str());
    }
    return t.real();
}

Matrix partial_trace_rc(const Matrix& rho, const ProductSpace& space) {
    const int n = space.dim_rc;
    if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
        throw NumericError("partial_trace_rc: dimension mismatch");
    }
    Matrix out(2, 2);
    for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
            out(s, sp) = rho.block(s * n, sp * n, n, n).trace();
        }
    }
    return out;
}

Matrix partial_trace_tls(const Matrix& rho, const ProductSpace& space) {
    const int n = space.dim_rc;
    if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
        throw NumericError("partial_trace_tls: dimension mismatch");
    }
    Matrix out = Matrix::Zero(n, n);
    for (int s = 0; s < 2; ++s) {
        out += rho.block(s * n, s * n, n, n);
    }
    return out;
}

} // namespace qotto::linops
