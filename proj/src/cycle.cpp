#include "cycle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "thermo.hpp"

namespace qotto::cycle {

using linops::expectation;
using linops::kron;
using linops::ProductSpace;
using model::splitting;
using model::tls_hamiltonian;

namespace {

// Equilibrium data for one isochore: the enlarged-system Gibbs state, its
// energy split into TLS / interaction / mode pieces, the reduced TLS state,
// and the references of the same reservoir when uncoupled and thermal.
struct IsochoreEquilibrium {
    model::RcMapping mapping;
    ProductSpace space;
    double beta{};
    double mu{};
    Matrix h_tls;              // bare 2x2 Hamiltonian of this isochore
    double e_tls{};            // tr[(H_TLS x I) rho]
    double e_interaction{};    // tr[-lambda sigma_z x (a†+a) rho]
    double e_rc{};             // Omega <a†a>_rho
    Matrix reduced_tls;        // 2x2 partial trace of the enlarged state
    Matrix bare_gibbs;         // 2x2 Gibbs state of h_tls alone
    double e_tls_bare{};       // tr[H_TLS bare_gibbs]
    double thermal_rc_energy{}; // Omega x truncated Bose occupation
    double ln_z_mapped{};      // ln Z of the enlarged Hamiltonian
    double ln_z_rc{};          // ln Z of the truncated bare mode
    double ln_z_bare{};        // ln Z of the bare TLS
};

IsochoreEquilibrium equilibrate(const model::TlsParams& p,
                                const model::ReservoirSpec& r, int n) {
    IsochoreEquilibrium eq;
    eq.mapping = model::rc_mapping(r, p, n);
    eq.space = ProductSpace{n};
    eq.beta = r.beta;
    eq.mu = splitting(p);
    eq.h_tls = tls_hamiltonian(p);

    const Matrix h_mapped = model::mapped_hamiltonian(p, eq.mapping);
    const thermo::ThermalState state = thermo::gibbs_state(h_mapped, r.beta);
    eq.ln_z_mapped = state.ln_z;

    const Matrix a = linops::annihilation(n);
    const Matrix coupling_op = kron(linops::sigma_z(), a + a.adjoint());
    eq.e_interaction = -eq.mapping.lambda * expectation(coupling_op, state.rho);
    eq.e_rc = eq.mapping.omega_rc * thermo::rc_occupation(state, eq.space);
    eq.reduced_tls = thermo::reduced_tls_state(state, eq.space);
    eq.e_tls = expectation(eq.h_tls, eq.reduced_tls);

    const thermo::ThermalState bare = thermo::gibbs_state(eq.h_tls, r.beta);
    eq.bare_gibbs = bare.rho;
    eq.ln_z_bare = bare.ln_z;
    eq.e_tls_bare = expectation(eq.h_tls, eq.bare_gibbs);

    eq.thermal_rc_energy =
        eq.mapping.omega_rc *
        thermo::truncated_bose_occupation(eq.mapping.omega_rc, r.beta, n);
    eq.ln_z_rc = thermo::ln_partition_truncated_rc(eq.mapping.omega_rc, r.beta, n);
    return eq;
}

void finalize(CycleResult& result) {
    result.w_out = -result.w_net_on;
    result.eta = efficiency(result);
    result.mode = classify(result);
    const double closure = ledger_closure(result.points);
    if (std::abs(closure) > 1e-10) {
        std::ostringstream os;
        os << "cycle ledger failed to close: telescoping sum " << closure;
        throw NumericError(os.str());
    }
}

CycleResult assemble_strong(const CycleConfig& cfg, int n) {
    const IsochoreEquilibrium hot = equilibrate(cfg.tls_hot, cfg.hot, n);
    const IsochoreEquilibrium cold = equilibrate(cfg.tls_cold, cfg.cold, n);
    const bool sudden = cfg.stroke_mode == StrokeMode::Sudden;
    const bool adiabatic_dec =
        cfg.decoupling_mode == DecouplingMode::AdiabaticDecoupling;

    CycleResult result;
    result.n = n;
    CyclePointEnergies& pt = result.points;

    // Isochore endpoints: system correlated with the active reservoir, the
    // other reservoir thermal (it rethermalized along this stroke).
    pt.b = hot.e_tls + hot.e_interaction + hot.e_rc + cold.thermal_rc_energy;
    pt.d = cold.e_tls + cold.e_interaction + cold.e_rc + hot.thermal_rc_energy;

    if (!adiabatic_dec) {
        // Instantaneous switch-off: the state has no time to change, so the
        // whole interaction expectation is paid as work.
        pt.b_prime = pt.b - hot.e_interaction;
        pt.d_prime = pt.d - cold.e_interaction;
        result.w_decouple_hot = -hot.e_interaction;
        result.w_decouple_cold = -cold.e_interaction;
        result.q_decouple_hot = 0.0;
        result.q_decouple_cold = 0.0;

        // Isentropes start from the (non-canonical) reduced post-isochore
        // state, with the idle reservoir's mode energy riding along.
        if (sudden) {
            pt.c = expectation(cold.h_tls, hot.reduced_tls) + hot.e_rc +
                   cold.thermal_rc_energy;
            pt.a = expectation(hot.h_tls, cold.reduced_tls) + cold.e_rc +
                   hot.thermal_rc_energy;
        } else {
            pt.c = (cold.mu / hot.mu) * hot.e_tls + hot.e_rc +
                   cold.thermal_rc_energy;
            pt.a = (hot.mu / cold.mu) * cold.e_tls + cold.e_rc +
                   hot.thermal_rc_energy;
        }
        result.w_net_on = (pt.b_prime - pt.b) + (pt.c - pt.b_prime) +
                          (pt.d_prime - pt.d) + (pt.a - pt.d_prime);
    } else {
        // Quasi-static switch-off: system and reservoir end in their bare
        // thermal states; only the free-energy change is work, the remainder
        // is heat exchanged with the reservoir being detached.
        pt.b_prime =
            hot.e_tls_bare + hot.thermal_rc_energy + cold.thermal_rc_energy;
        pt.d_prime =
            cold.e_tls_bare + hot.thermal_rc_energy + cold.thermal_rc_energy;
        result.w_decouple_hot =
            (hot.ln_z_mapped - hot.ln_z_rc - hot.ln_z_bare) / cfg.hot.beta;
        result.w_decouple_cold =
            (cold.ln_z_mapped - cold.ln_z_rc - cold.ln_z_bare) / cfg.cold.beta;
        result.q_decouple_hot = (pt.b_prime - pt.b) - result.w_decouple_hot;
        result.q_decouple_cold = (pt.d_prime - pt.d) - result.w_decouple_cold;

        if (sudden) {
            pt.c = expectation(cold.h_tls, hot.bare_gibbs) +
                   hot.thermal_rc_energy + cold.thermal_rc_energy;
            pt.a = expectation(hot.h_tls, cold.bare_gibbs) +
                   hot.thermal_rc_energy + cold.thermal_rc_energy;
        } else {
            pt.c = (cold.mu / hot.mu) * hot.e_tls_bare +
                   hot.thermal_rc_energy + cold.thermal_rc_energy;
            pt.a = (hot.mu / cold.mu) * cold.e_tls_bare +
                   hot.thermal_rc_energy + cold.thermal_rc_energy;
        }
        result.w_net_on = result.w_decouple_hot + (pt.c - pt.b_prime) +
                          result.w_decouple_cold + (pt.a - pt.d_prime);
    }

    // Coupling to a thermal reservoir is free in both treatments.
    pt.a_prime = pt.a;
    pt.c_prime = pt.c;

    result.q_hot = (pt.b - pt.a_prime) + result.q_decouple_hot;
    result.q_cold = (pt.d - pt.c_prime) + result.q_decouple_cold;
    finalize(result);
    return result;
}

CycleResult assemble_weak(const CycleConfig& cfg) {
    // Bare 2x2 Gibbs states; reservoirs stay thermal throughout, so their
    // reference energies appear at every point and drop out of all flows.
    const thermo::ThermalState hot_state =
        thermo::gibbs_state(tls_hamiltonian(cfg.tls_hot), cfg.hot.beta);
    const thermo::ThermalState cold_state =
        thermo::gibbs_state(tls_hamiltonian(cfg.tls_cold), cfg.cold.beta);
    const Matrix h_hot = tls_hamiltonian(cfg.tls_hot);
    const Matrix h_cold = tls_hamiltonian(cfg.tls_cold);
    const double mu_h = splitting(cfg.tls_hot);
    const double mu_c = splitting(cfg.tls_cold);
    const double e_hot = expectation(h_hot, hot_state.rho);
    const double e_cold = expectation(h_cold, cold_state.rho);

    // Same truncated references as the strong treatment, so the two ledgers
    // agree point by point in the alpha -> 0 limit.
    const double th_h =
        mu_h * thermo::truncated_bose_occupation(mu_h, cfg.hot.beta, cfg.n);
    const double th_c =
        mu_c * thermo::truncated_bose_occupation(mu_c, cfg.cold.beta, cfg.n);
    const double reservoirs = th_h + th_c;

    CycleResult result;
    result.n = cfg.n;
    CyclePointEnergies& pt = result.points;
    pt.b = e_hot + reservoirs;
    pt.d = e_cold + reservoirs;
    pt.b_prime = pt.b;
    pt.d_prime = pt.d;
    if (cfg.stroke_mode == StrokeMode::Sudden) {
        pt.c = expectation(h_cold, hot_state.rho) + reservoirs;
        pt.a = expectation(h_hot, cold_state.rho) + reservoirs;
    } else {
        pt.c = (mu_c / mu_h) * e_hot + reservoirs;
        pt.a = (mu_h / mu_c) * e_cold + reservoirs;
    }
    pt.a_prime = pt.a;
    pt.c_prime = pt.c;

    result.w_net_on = (pt.c - pt.b_prime) + (pt.a - pt.d_prime);
    result.q_hot = pt.b - pt.a_prime;
    result.q_cold = pt.d - pt.c_prime;
    finalize(result);
    return result;
}

} // namespace

void CycleConfig::validate() const {
    std::ostringstream os;
    if (!(hot.beta > 0.0) || !(cold.beta > 0.0)) {
        throw ConfigError("inverse temperatures must be positive");
    }
    if (!(cold.beta > hot.beta)) {
        os << "cold reservoir must be colder: beta_c = " << cold.beta
           << " <= beta_h = " << hot.beta;
        throw ConfigError(os.str());
    }
    if (hot.alpha < 0.0 || cold.alpha < 0.0) {
        throw ConfigError("coupling strength alpha must be >= 0");
    }
    if (!(hot.omega_c > 0.0) || !(cold.omega_c > 0.0)) {
        throw ConfigError("cutoff frequency omega_c must be > 0");
    }
    if (n < 1) {
        throw ConfigError("Fock truncation n must be >= 1");
    }
    if (!(splitting(tls_hot) > 0.0) || !(splitting(tls_cold) > 0.0)) {
        throw ConfigError("degenerate TLS splitting (mu = 0) is not allowed");
    }
}

CycleConfig CycleConfig::normalized() const {
    validate();
    CycleConfig out = *this;
    if (out.coupling_model == CouplingModel::Weak) {
        out.decoupling_mode = DecouplingMode::Instantaneous;
    }
    return out;
}

OperatingMode classify(const CycleResult& result) {
    if (result.w_out > kModeTol && result.q_hot > kModeTol) {
        return OperatingMode::Engine;
    }
    if (result.w_out < -kModeTol && result.q_cold > kModeTol) {
        return OperatingMode::Refrigerator;
    }
    return OperatingMode::Neither;
}

std::optional<double> efficiency(const CycleResult& result) {
    if (result.q_hot > kModeTol) {
        return result.w_out / result.q_hot;
    }
    return std::nullopt;
}

CycleResult weak_cycle_adiabatic(const CycleConfig& cfg) {
    const CycleConfig c = cfg.normalized();
    if (c.coupling_model != CouplingModel::Weak ||
        c.stroke_mode != StrokeMode::Adiabatic) {
        throw std::invalid_argument(
            "weak_cycle_adiabatic: config selects a different treatment");
    }
    return assemble_weak(c);
}

CycleResult weak_cycle_sudden(const CycleConfig& cfg) {
    const CycleConfig c = cfg.normalized();
    if (c.coupling_model != CouplingModel::Weak ||
        c.stroke_mode != StrokeMode::Sudden) {
        throw std::invalid_argument(
            "weak_cycle_sudden: config selects a different treatment");
    }
    return assemble_weak(c);
}

double convergence_rel_delta(double a, double b) {
    const double diff = std::abs(a - b);
    if (diff <= 1e-12) return 0.0;
    return diff / std::max(std::abs(a), std::abs(b));
}

double ledger_closure(const CyclePointEnergies& p) {
    return (p.a_prime - p.a) + (p.b - p.a_prime) + (p.b_prime - p.b) +
           (p.c - p.b_prime) + (p.c_prime - p.c) + (p.d - p.c_prime) +
           (p.d_prime - p.d) + (p.a - p.d_prime);
}

CycleResult strong_cycle_at(const CycleConfig& cfg, int n) {
    const CycleConfig c = cfg.normalized();
    if (c.coupling_model != CouplingModel::RcStrong) {
        throw std::invalid_argument("strong_cycle_at: config selects weak coupling");
    }
    if (n < 1) throw std::invalid_argument("strong_cycle_at: n must be >= 1");
    return assemble_strong(c, n);
}

CycleResult strong_cycle(const CycleConfig& cfg) {
    CycleResult result = strong_cycle_at(cfg, cfg.n);
    const int n_check = std::max(1, cfg.n - 5);
    if (n_check < cfg.n) {
        const CycleResult check = strong_cycle_at(cfg, n_check);
        const double rel =
            std::max(convergence_rel_delta(result.w_out, check.w_out),
                     convergence_rel_delta(result.q_hot, check.q_hot));
        result.converged = rel <= kConvergenceRelTol;
    }
    return result;
}

CyclePointEnergies strong_point_energies(const CycleConfig& cfg) {
    return strong_cycle_at(cfg, cfg.n).points;
}

DecouplingTerms adiabatic_decoupling_terms(const CycleConfig& cfg, Reservoir which) {
    const CycleConfig c = cfg.normalized();
    if (c.coupling_model != CouplingModel::RcStrong ||
        c.decoupling_mode != DecouplingMode::AdiabaticDecoupling) {
        throw std::invalid_argument(
            "adiabatic_decoupling_terms: config does not select adiabatic "
            "decoupling at strong coupling");
    }
    const CycleResult result = assemble_strong(c, c.n);
    if (which == Reservoir::Hot) {
        return {result.w_decouple_hot, result.q_decouple_hot};
    }
    return {result.w_decouple_cold, result.q_decouple_cold};
}

CycleResult run_cycle(const CycleConfig& cfg) {
    const CycleConfig c = cfg.normalized();
    if (c.coupling_model == CouplingModel::Weak) {
        return assemble_weak(c);
    }
    return strong_cycle(c);
}

} // namespace qotto::cycle
