#include "thermo.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "errors.hpp"

namespace qotto::thermo {

using linops::hermitian_eig;
using linops::EigenSystem;

namespace {

constexpr double kPsdTol = -1e-12;

void require_positive_beta(double beta, const char* who) {
    if (!(beta > 0.0)) {
        std::ostringstream os;
        os << who << ": beta must be > 0, got " << beta;
        throw NumericError(os.str());
    }
}

} // namespace

std::uint64_t operator_hash(const Matrix& h) {
    std::uint64_t hash = 1469598103934665603ull; // FNV offset basis
    auto mix = [&hash](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            hash ^= (bits >> (8 * b)) & 0xffull;
            hash *= 1099511628211ull; // FNV prime
        }
    };
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
        for (Eigen::Index i = 0; i < h.rows(); ++i) {
            mix(h(i, j).real());
            mix(h(i, j).imag());
        }
    }
    return hash;
}

ThermalState gibbs_state(const Matrix& h, double beta) {
    require_positive_beta(beta, "gibbs_state");
    const EigenSystem sys = hermitian_eig(h);

    const double e_min = sys.eigenvalues.minCoeff();
    RealVector weights(sys.eigenvalues.size());
    double z_shifted = 0.0;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        weights(i) = std::exp(-beta * (sys.eigenvalues(i) - e_min));
        z_shifted += weights(i);
    }

    ThermalState state;
    state.beta = beta;
    state.ln_z = std::log(z_shifted) - beta * e_min;
    state.source_hash = operator_hash(h);
    weights /= z_shifted;
    state.rho = linops::hermitize(sys.eigenvectors *
                                  weights.cast<Complex>().asDiagonal() *
                                  sys.eigenvectors.adjoint());
    return state;
}

double ln_partition(const Matrix& h, double beta) {
    require_positive_beta(beta, "ln_partition");
    const EigenSystem sys = hermitian_eig(h);
    const double e_min = sys.eigenvalues.minCoeff();
    double z_shifted = 0.0;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        z_shifted += std::exp(-beta * (sys.eigenvalues(i) - e_min));
    }
    return std::log(z_shifted) - beta * e_min;
}

double von_neumann_entropy(const Matrix& rho) {
    const EigenSystem sys = hermitian_eig(rho);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        double p = sys.eigenvalues(i);
        if (p < kPsdTol) {
            std::ostringstream os;
            os << "von_neumann_entropy: eigenvalue " << p
               << " below PSD tolerance";
            throw NumericError(os.str());
        }
        if (p <= 0.0) continue; // clip solver noise; 0 ln 0 := 0
        entropy -= p * std::log(p);
    }
    return std::max(entropy, 0.0);
}

double free_energy(const ThermalState& state, const Matrix& h) {
    if (h.rows() != state.rho.rows() || h.cols() != state.rho.cols()) {
        throw NumericError("free_energy: dimension mismatch");
    }
    if (operator_hash(h) != state.source_hash) {
        throw NumericError(
            "free_energy: state was not generated by this Hamiltonian");
    }
    const double energy = linops::expectation(h, state.rho);
    const double entropy = von_neumann_entropy(state.rho);
    return energy - entropy / state.beta;
}

Matrix reduced_tls_state(const ThermalState& state, const linops::ProductSpace& space) {
    return linops::partial_trace_rc(state.rho, space);
}

double rc_occupation(const ThermalState& state, const linops::ProductSpace& space) {
    const int n = space.dim_rc;
    if (state.rho.rows() != space.total_dim()) {
        throw NumericError("rc_occupation: dimension mismatch");
    }
    double occupation = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (int k = 0; k < n; ++k) {
            occupation += k * state.rho(space.flat_index(s, k), space.flat_index(s, k)).real();
        }
    }
    return occupation;
}

double truncated_bose_occupation(double omega, double beta, int n) {
    require_positive_beta(beta, "truncated_bose_occupation");
    if (omega <= 0.0 || n < 1) {
        throw NumericError("truncated_bose_occupation: need omega > 0, n >= 1");
    }
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = std::exp(-beta * omega * k);
        num += k * w;
        den += w;
    }
    return num / den;
}

double ln_partition_truncated_rc(double omega, double beta, int n) {
    require_positive_beta(beta, "ln_partition_truncated_rc");
    if (omega <= 0.0 || n < 1) {
        throw NumericError("ln_partition_truncated_rc: need omega > 0, n >= 1");
    }
    double z = 0.0;
    for (int k = 0; k < n; ++k) {
        z += std::exp(-beta * omega * k);
    }
    return std::log(z);
}

} // namespace qotto::thermo
