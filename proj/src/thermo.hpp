// thermo.hpp: equilibrium statistical mechanics on finite operators. Gibbs
// states, log-partition functions, von Neumann entropy, free energy, reduced
// states, and the truncated harmonic references used by the cycle ledger.
//
// All partition functions go through eigendecomposition with the spectrum
// shifted by its minimum before exponentiation: beta * |H| can exceed 50 in
// sweeps and a naive exp would overflow or lose the low-lying states.

#pragma once

#include <cstdint>

#include "linops.hpp"

namespace qotto::thermo {

// Gibbs state exp(-beta H)/Z together with its log-partition value and a
// hash of the generating Hamiltonian (so consumers can verify they pair the
// state with the operator that produced it).
struct ThermalState {
    Matrix rho;
    double beta{0.0};
    double ln_z{0.0};
    std::uint64_t source_hash{0};
};

// FNV-1a over the raw matrix bytes; identifies a generating Hamiltonian.
std::uint64_t operator_hash(const Matrix& h);

// exp(-beta h)/tr[exp(-beta h)] via eigendecomposition, overflow-safe.
// The result has unit trace and non-negative spectrum up to solver noise.
ThermalState gibbs_state(const Matrix& h, double beta);

// ln tr[exp(-beta h)] by log-sum-exp over the spectrum.
double ln_partition(const Matrix& h, double beta);

// -sum p_i ln p_i over the spectrum of rho, with 0 ln 0 := 0. Eigenvalues in
// [-1e-12, 0) are clipped to zero; anything more negative is rejected.
double von_neumann_entropy(const Matrix& rho);

// F = <h> - S/beta. For a Gibbs state of h this equals -ln_z/beta; the pair
// is checked via the stored source hash.
double free_energy(const ThermalState& state, const Matrix& h);

// Reduced 2x2 TLS state of an enlarged-space thermal state.
Matrix reduced_tls_state(const ThermalState& state, const linops::ProductSpace& space);

// <a†a> in an enlarged-space thermal state.
double rc_occupation(const ThermalState& state, const linops::ProductSpace& space);

// Truncated-harmonic references. The cycle ledger subtracts reservoir
// self-energies computed in the enlarged Gibbs state from these; both sides
// must carry identical truncation error, so the references are the finite
// sums over n levels, never the analytic infinite-series forms.
double truncated_bose_occupation(double omega, double beta, int n);
double ln_partition_truncated_rc(double omega, double beta, int n);

} // namespace qotto::thermo
