#include "model.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace qotto::model {

using linops::annihilation;
using linops::identity;
using linops::kron;
using linops::number_operator;
using linops::sigma_x;
using linops::sigma_z;

double splitting(const TlsParams& p) {
    return std::hypot(p.epsilon, p.delta);
}

Matrix tls_hamiltonian(const TlsParams& p) {
    const double mu = splitting(p);
    return 0.5 * (mu * identity(2) + p.epsilon * sigma_z() + p.delta * sigma_x());
}

double spectral_density(const ReservoirSpec& spec, double omega) {
    if (omega < 0.0) {
        throw NumericError("spectral_density: omega must be >= 0");
    }
    return spec.alpha * omega * spec.omega_c /
           (omega * omega + spec.omega_c * spec.omega_c);
}

RcMapping rc_mapping(const ReservoirSpec& spec, const TlsParams& p, int n) {
    if (n < 1) throw NumericError("rc_mapping: truncation n must be >= 1");
    const double mu = splitting(p);
    if (mu <= 0.0) {
        throw NumericError(
            "rc_mapping: degenerate TLS (mu = 0), mode frequency would vanish");
    }
    RcMapping m;
    m.gamma = mu / (2.0 * std::numbers::pi * spec.omega_c);
    // 2*pi*gamma*omega_c algebraically; assigned directly so the mode
    // frequency matches the splitting bitwise and reference energies cancel
    m.omega_rc = mu;
    m.lambda = std::sqrt(std::numbers::pi * spec.alpha * m.omega_rc / 2.0);
    m.n = n;
    return m;
}

Matrix mapped_hamiltonian(const TlsParams& p, const RcMapping& m) {
    const Matrix a = annihilation(m.n);
    const Matrix x = a + a.adjoint();
    Matrix h = kron(tls_hamiltonian(p), identity(m.n));
    h -= m.lambda * kron(sigma_z(), x);
    h += m.omega_rc * kron(identity(2), number_operator(m.n));
    return linops::hermitize(h);
}

} // namespace qotto::model
