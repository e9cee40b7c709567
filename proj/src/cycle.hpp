// cycle.hpp: generalized quantum Otto cycle for a two-level system coupled to
// hot and cold bosonic reservoirs, evaluated either in the standard
// weak-coupling treatment (factorized thermal states, reservoirs always in
// equilibrium) or at arbitrary coupling through the reaction-coordinate
// mapping (enlarged-system Gibbs states on the TLS x mode product space).
//
// Cycle points, following the labels around the loop:
//
//   A  -> A'  couple to hot reservoir          (free: reservoir is thermal)
//   A' -> B   hot isochore, relax to equilibrium
//   B  -> B'  decouple from hot reservoir      (work cost at finite coupling)
//   B' -> C   isentrope, TLS splitting mu_h -> mu_c
//   C  -> C'  couple to cold reservoir         (free)
//   C' -> D   cold isochore
//   D  -> D'  decouple from cold reservoir
//   D' -> A   isentrope, mu_c -> mu_h
//
// Every point energy is referenced against the residual environment left
// over after the reaction-coordinate extraction: its thermal energy appears
// identically at all eight points and is dropped symmetrically. Reservoir
// self-energies that do NOT cancel are carried as mode occupations,
//   tr[H_R rho] - tr[H_R rho_thermal]  ->  Omega (<a†a>_rho - <a†a>_thermal),
// with both occupations evaluated at the same Fock truncation n so the
// truncation error cancels instead of polluting the ledger.
//
// Sign conventions: w_net_on is the work done ON the composite summed over
// the work strokes (decoupling steps and isentropes); w_out = -w_net_on is
// positive when the cycle outputs work. q_hot and q_cold are the energies
// absorbed from the hot and cold reservoirs (the energy change along each
// isochore, plus the decoupling heat when decoupling is adiabatic).

#pragma once

#include <optional>
#include <utility>

#include "model.hpp"

namespace qotto::cycle {

enum class CouplingModel { Weak, RcStrong };
enum class StrokeMode { Adiabatic, Sudden };
enum class DecouplingMode { Instantaneous, AdiabaticDecoupling };
enum class OperatingMode { Engine, Refrigerator, Neither };
enum class Reservoir { Hot, Cold };

// Classification tolerance on the working energy scale; ties resolve to
// Neither. Also used as the q_hot > 0 gate for efficiency.
inline constexpr double kModeTol = 1e-12;

// Truncation check: flows at n and n-5 must agree to this relative level.
inline constexpr double kConvergenceRelTol = 1e-6;

struct CycleConfig {
    model::ReservoirSpec hot;       // beta_h, alpha, omega_c
    model::ReservoirSpec cold;      // beta_c > beta_h
    model::TlsParams tls_hot;       // TLS parameters held fixed on the hot isochore
    model::TlsParams tls_cold;
    int n{30};                      // Fock truncation for the mapped mode
    CouplingModel coupling_model{CouplingModel::RcStrong};
    StrokeMode stroke_mode{StrokeMode::Adiabatic};
    DecouplingMode decoupling_mode{DecouplingMode::Instantaneous};

    // Throws ConfigError on violated invariants (beta_c <= beta_h, mu = 0,
    // negative alpha, ...).
    void validate() const;

    // Validated copy with decoupling forced to Instantaneous under weak
    // coupling, where both decoupling costs vanish identically.
    CycleConfig normalized() const;
};

struct CyclePointEnergies {
    double a{}, a_prime{};
    double b{}, b_prime{};
    double c{}, c_prime{};
    double d{}, d_prime{};
};

struct CycleResult {
    CyclePointEnergies points;
    double w_net_on{};        // net work done on the composite per cycle
    double w_out{};           // = -w_net_on
    double q_hot{};           // energy absorbed from the hot reservoir
    double q_cold{};          // energy absorbed from the cold reservoir
    double w_decouple_hot{};  // work cost of switching off the hot coupling
    double w_decouple_cold{};
    double q_decouple_hot{};  // decoupling heat; nonzero only for adiabatic decoupling
    double q_decouple_cold{};
    std::optional<double> eta; // defined only when q_hot > kModeTol
    OperatingMode mode{OperatingMode::Neither};
    int n{0};
    bool converged{true};
};

// Engine iff w_out > tol and q_hot > tol; refrigerator iff w_out < -tol and
// q_cold > tol; Neither otherwise.
OperatingMode classify(const CycleResult& result);

// w_out / q_hot when q_hot > tol, otherwise undefined.
std::optional<double> efficiency(const CycleResult& result);

// Weak-coupling cycles with bare 2x2 Gibbs states. Adiabatic strokes scale
// the TLS energy by the splitting ratio; sudden strokes cross-evaluate the
// unchanged state under the new Hamiltonian.
CycleResult weak_cycle_adiabatic(const CycleConfig& cfg);
CycleResult weak_cycle_sudden(const CycleConfig& cfg);

// Strong-coupling cycle via the reaction-coordinate mapping. Evaluates at
// cfg.n and again at n-5 and flags (never silently accepts) a truncation
// drift beyond kConvergenceRelTol.
CycleResult strong_cycle(const CycleConfig& cfg);

// Strong-coupling evaluation at a fixed truncation, no convergence check.
CycleResult strong_cycle_at(const CycleConfig& cfg, int n);

// The eight labeled point energies of the strong-coupling cycle at cfg.n.
CyclePointEnergies strong_point_energies(const CycleConfig& cfg);

// Free-energy work cost and dissipated heat of adiabatically switching off
// one reservoir coupling: work = (1/beta)[ln Z_mapped - ln Z_rc - ln Z_tls],
// heat = (internal-energy change across the decoupling step) - work.
struct DecouplingTerms {
    double work{};
    double heat{};
};
DecouplingTerms adiabatic_decoupling_terms(const CycleConfig& cfg, Reservoir which);

// Dispatch on coupling model and stroke mode after normalization.
CycleResult run_cycle(const CycleConfig& cfg);

// Relative difference with an absolute escape: differences below 1e-12 on
// the working energy scale count as converged regardless of magnitude.
double convergence_rel_delta(double a, double b);

// Signed sum of the eight consecutive point-to-point differences around the
// closed loop. Telescopes to zero (within rounding) for any consistent
// ledger; every cycle evaluation verifies this before returning.
double ledger_closure(const CyclePointEnergies& points);

} // namespace qotto::cycle
