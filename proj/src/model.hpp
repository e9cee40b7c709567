// model.hpp: physical model definitions. Two-level system Hamiltonian,
// Ohmic-with-Lorentzian-cutoff spectral density, the reaction-coordinate
// mapping of a reservoir onto a single bosonic mode, and the enlarged-system
// Hamiltonian on the TLS x mode product space.
//
// Units: k_B = hbar = 1; all energies in units of the cold-point bias.

#pragma once

#include "linops.hpp"

namespace qotto::model {

// Two-level system at one cycle point. The Hamiltonian carries a +mu/2
// identity shift so the eigenvalues are exactly {0, mu}: the ground state
// sits at zero at every cycle point.
struct TlsParams {
    double epsilon{0.0}; // bias
    double delta{0.0};   // tunneling matrix element
};

// One reservoir: inverse temperature plus spectral-density parameters.
struct ReservoirSpec {
    double beta{1.0};    // inverse temperature, > 0
    double alpha{0.0};   // dimensionless coupling strength, >= 0
    double omega_c{1.0}; // cutoff frequency, > 0
};

// Derived enlarged-system parameters for one reservoir.
// omega_rc = 2*pi*gamma*omega_c and lambda = sqrt(pi*alpha*omega_rc/2) hold
// exactly; with gamma = mu/(2*pi*omega_c) the mode frequency equals the TLS
// splitting of the isochore that defined it.
struct RcMapping {
    double gamma{0.0};
    double omega_rc{0.0};
    double lambda{0.0};
    int n{1}; // Fock truncation
};

// sqrt(epsilon^2 + delta^2)
double splitting(const TlsParams& p);

// (mu/2) I + (epsilon/2) sigma_z + (delta/2) sigma_x, eigenvalues {0, mu}.
Matrix tls_hamiltonian(const TlsParams& p);

// J(omega) = alpha * omega * omega_c / (omega^2 + omega_c^2), omega >= 0.
double spectral_density(const ReservoirSpec& spec, double omega);

// Mapping parameters for the reservoir as seen from the isochore whose TLS
// parameters are p. Rejects degenerate mu = 0 (the mode frequency would
// vanish).
RcMapping rc_mapping(const ReservoirSpec& spec, const TlsParams& p, int n);

// H = H_TLS x I - lambda sigma_z x (a† + a) + omega_rc I x a†a, Hermitian by
// construction on the 2n-dimensional product space.
Matrix mapped_hamiltonian(const TlsParams& p, const RcMapping& m);

} // namespace qotto::model
