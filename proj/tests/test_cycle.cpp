#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cycle.hpp"
#include "errors.hpp"
#include "helpers.hpp"

using namespace qotto;
using namespace qotto::cycle;

using testutil::reference_config;

namespace {

// closed-form oracle for the weak adiabatic cycle
struct WeakOracle {
    double w_out;
    double q_hot;
    double eta;
};

WeakOracle weak_closed_form(const CycleConfig& cfg) {
    const double mu_h = model::splitting(cfg.tls_hot);
    const double mu_c = model::splitting(cfg.tls_cold);
    const double th = std::tanh(cfg.hot.beta * mu_h / 2.0);
    const double tc = std::tanh(cfg.cold.beta * mu_c / 2.0);
    return {0.5 * (mu_h - mu_c) * (tc - th), 0.5 * mu_h * (tc - th),
            1.0 - mu_c / mu_h};
}

CycleConfig weak(CycleConfig cfg, StrokeMode stroke = StrokeMode::Adiabatic) {
    cfg.coupling_model = CouplingModel::Weak;
    cfg.stroke_mode = stroke;
    return cfg;
}

CycleConfig strong(CycleConfig cfg, DecouplingMode dec = DecouplingMode::Instantaneous,
                   StrokeMode stroke = StrokeMode::Adiabatic) {
    cfg.coupling_model = CouplingModel::RcStrong;
    cfg.stroke_mode = stroke;
    cfg.decoupling_mode = dec;
    return cfg;
}

} // namespace

TEST_CASE("config invariants") {
    CycleConfig cfg = reference_config(2.0, 0.005);
    CHECK_NOTHROW(cfg.validate());

    CycleConfig hot_not_hotter = cfg;
    hot_not_hotter.cold.beta = 0.5;
    CHECK_THROWS_AS(hot_not_hotter.validate(), ConfigError);

    CycleConfig negative_alpha = cfg;
    negative_alpha.hot.alpha = -0.1;
    CHECK_THROWS_AS(negative_alpha.validate(), ConfigError);

    CycleConfig degenerate = cfg;
    degenerate.tls_hot = {0.0, 0.0};
    CHECK_THROWS_AS(degenerate.validate(), ConfigError);

    CycleConfig weak_cfg = weak(cfg);
    weak_cfg.decoupling_mode = DecouplingMode::AdiabaticDecoupling;
    CHECK(weak_cfg.normalized().decoupling_mode == DecouplingMode::Instantaneous);
}

TEST_CASE("weak adiabatic cycle reproduces the tanh closed forms") {
    const CycleConfig cfg = weak(reference_config(2.0, 0.005));
    const CycleResult r = weak_cycle_adiabatic(cfg);
    const WeakOracle oracle = weak_closed_form(cfg);

    CHECK(r.w_out == doctest::Approx(oracle.w_out).epsilon(1e-12));
    CHECK(r.q_hot == doctest::Approx(oracle.q_hot).epsilon(1e-12));
    CHECK(r.w_out == doctest::Approx(0.056083417368310795).epsilon(1e-9));
    CHECK(r.q_hot == doctest::Approx(0.1525894748970874).epsilon(1e-9));
    REQUIRE(r.eta.has_value());
    CHECK(*r.eta == doctest::Approx(1.0 - std::sqrt(2.0 / 5.0)).epsilon(1e-9));
    CHECK(*r.eta == doctest::Approx(oracle.eta).epsilon(1e-9));
    CHECK(r.mode == OperatingMode::Engine);
    CHECK(r.w_decouple_hot == 0.0);
    CHECK(r.w_decouple_cold == 0.0);
    CHECK(r.q_decouple_hot == 0.0);
    CHECK(r.q_decouple_cold == 0.0);
    CHECK(r.converged);
    CHECK(std::abs(testutil::ledger_closure(r.points)) <= 1e-10);
    // global first law: w_out = q_hot + q_cold
    CHECK(r.w_out - (r.q_hot + r.q_cold) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("weak work and heat vanish together where mu_h beta_h = mu_c beta_c") {
    // mu_c beta_c = 2.5 sqrt(2), so epsilon_h = sqrt(12.5 - 1)
    const CycleConfig cfg = weak(reference_config(std::sqrt(11.5), 0.0));
    const CycleResult r = weak_cycle_adiabatic(cfg);
    CHECK(std::abs(r.w_out) < 1e-10);
    CHECK(std::abs(r.q_hot) < 1e-10);
    CHECK_FALSE(r.eta.has_value());
    CHECK(r.mode == OperatingMode::Neither);
}

TEST_CASE("weak efficiency saturates at the Carnot limit at the crossing") {
    const CycleConfig cfg = weak(reference_config(std::sqrt(11.5) - 1e-6, 0.0));
    const CycleResult r = weak_cycle_adiabatic(cfg);
    REQUIRE(r.eta.has_value());
    CHECK(*r.eta == doctest::Approx(0.6).epsilon(1e-5));
    CHECK(*r.eta < 1.0 - cfg.hot.beta / cfg.cold.beta + 1e-9);
}

TEST_CASE("weak refrigerator region past the crossing") {
    const CycleConfig cfg = weak(reference_config(3.6, 0.0));
    const CycleResult r = weak_cycle_adiabatic(cfg);
    CHECK(r.w_out < 0.0);
    CHECK(r.q_cold > 0.0);
    CHECK(r.mode == OperatingMode::Refrigerator);
}

TEST_CASE("weak sudden cycle") {
    SUBCASE("degenerate stroke, same Hamiltonian at both ends") {
        CycleConfig cfg = weak(reference_config(1.0, 0.0), StrokeMode::Sudden);
        const CycleResult r = weak_cycle_sudden(cfg);
        CHECK(std::abs(r.w_net_on) <= 1e-14);
    }
    SUBCASE("equilibrium limit: equal TLS and nearly equal temperatures") {
        CycleConfig cfg = weak(reference_config(1.0, 0.0), StrokeMode::Sudden);
        cfg.cold.beta = cfg.hot.beta + 1e-13;
        const CycleResult r = weak_cycle_sudden(cfg);
        CHECK(std::abs(r.w_out) <= 1e-12);
        CHECK(std::abs(r.q_hot) <= 1e-12);
        CHECK(std::abs(r.q_cold) <= 1e-12);
        CHECK(r.mode == OperatingMode::Neither);
    }
    SUBCASE("quantum friction reduces the work output") {
        for (double eps_h : {1.5, 2.0, 3.0}) {
            const CycleResult sudden =
                weak_cycle_sudden(weak(reference_config(eps_h, 0.1), StrokeMode::Sudden));
            const CycleResult adiabatic =
                weak_cycle_adiabatic(weak(reference_config(eps_h, 0.1)));
            CHECK(sudden.w_out < adiabatic.w_out);
        }
    }
    SUBCASE("frozen value at the reference point") {
        const CycleResult r =
            weak_cycle_sudden(weak(reference_config(2.0, 0.1), StrokeMode::Sudden));
        CHECK(r.w_out == doctest::Approx(-0.027319890841379202).epsilon(1e-9));
        CHECK(r.q_hot == doctest::Approx(0.09846507207789224).epsilon(1e-9));
    }
}

TEST_CASE("strong point energies match the weak ledger in the decoupled limit") {
    const CyclePointEnergies sp = strong_point_energies(strong(reference_config(2.0, 0.0)));
    const CycleResult w = weak_cycle_adiabatic(weak(reference_config(2.0, 0.0)));
    const CyclePointEnergies& wp = w.points;
    CHECK(std::abs(sp.a - wp.a) <= 1e-8);
    CHECK(std::abs(sp.a_prime - wp.a_prime) <= 1e-8);
    CHECK(std::abs(sp.b - wp.b) <= 1e-8);
    CHECK(std::abs(sp.b_prime - wp.b_prime) <= 1e-8);
    CHECK(std::abs(sp.c - wp.c) <= 1e-8);
    CHECK(std::abs(sp.c_prime - wp.c_prime) <= 1e-8);
    CHECK(std::abs(sp.d - wp.d) <= 1e-8);
    CHECK(std::abs(sp.d_prime - wp.d_prime) <= 1e-8);
}

TEST_CASE("coupling steps are free in both treatments") {
    for (auto dec : {DecouplingMode::Instantaneous, DecouplingMode::AdiabaticDecoupling}) {
        const CyclePointEnergies p =
            strong_point_energies(strong(reference_config(2.0, 0.005), dec));
        CHECK(p.a_prime == p.a); // bitwise
        CHECK(p.c_prime == p.c);
    }
    const CycleResult w = weak_cycle_adiabatic(weak(reference_config(2.0, 0.0)));
    CHECK(w.points.a_prime == w.points.a);
    CHECK(w.points.c_prime == w.points.c);
}

TEST_CASE("decoupling the hot reservoir costs energy at the reference point") {
    const CyclePointEnergies p =
        strong_point_energies(strong(reference_config(2.0, 0.005)));
    CHECK(p.b_prime - p.b > 0.0);
    CHECK(p.d_prime - p.d > 0.0);
}

TEST_CASE("strong cycle, instantaneous decoupling, frozen reference values") {
    const CycleResult r = strong_cycle(strong(reference_config(2.0, 0.005)));
    CHECK(r.w_out == doctest::Approx(0.027921027708098303).epsilon(1e-9));
    CHECK(r.q_hot == doctest::Approx(0.13744452295681792).epsilon(1e-9));
    CHECK(r.q_cold == doctest::Approx(-0.10952349524871963).epsilon(1e-9));
    CHECK(r.w_decouple_hot == doctest::Approx(0.014900853317277722).epsilon(1e-9));
    CHECK(r.w_decouple_cold == doctest::Approx(0.012618095220432349).epsilon(1e-9));
    CHECK(r.q_decouple_hot == 0.0);
    CHECK(r.q_decouple_cold == 0.0);
    REQUIRE(r.eta.has_value());
    CHECK(*r.eta == doctest::Approx(0.20314398207683027).epsilon(1e-9));
    CHECK(r.mode == OperatingMode::Engine);
    CHECK(r.converged);
    CHECK(std::abs(testutil::ledger_closure(r.points)) <= 1e-10);
    CHECK(r.w_out - (r.q_hot + r.q_cold) == doctest::Approx(0.0).epsilon(1e-12));

    // lower work output than the weak treatment at the same parameters
    const CycleResult w = weak_cycle_adiabatic(weak(reference_config(2.0, 0.005)));
    CHECK(r.w_out < w.w_out);
    CHECK(*r.eta < *w.eta);
}

TEST_CASE("strong cycle, adiabatic decoupling, frozen reference values") {
    const CycleResult r = strong_cycle(
        strong(reference_config(2.0, 0.005), DecouplingMode::AdiabaticDecoupling));
    CHECK(r.w_out == doctest::Approx(0.042331784932118116).epsilon(1e-9));
    CHECK(r.q_hot == doctest::Approx(0.1451401006543425).epsilon(1e-9));
    CHECK(r.w_decouple_hot == doctest::Approx(0.007449374242744916).epsilon(1e-9));
    CHECK(r.w_decouple_cold == doctest::Approx(0.006302258193447765).epsilon(1e-9));
    CHECK(r.q_decouple_hot == doctest::Approx(-0.0004870151287862112).epsilon(1e-9));
    CHECK(r.q_decouple_cold == doctest::Approx(-0.001023316896136441).epsilon(1e-9));
    REQUIRE(r.eta.has_value());
    CHECK(*r.eta == doctest::Approx(0.291661537654112).epsilon(1e-9));
    CHECK(std::abs(testutil::ledger_closure(r.points)) <= 1e-10);
    CHECK(r.w_out - (r.q_hot + r.q_cold) == doctest::Approx(0.0).epsilon(1e-12));

    // mitigation: cheaper decoupling and more work than the instantaneous cycle
    const CycleResult inst = strong_cycle(strong(reference_config(2.0, 0.005)));
    CHECK(r.w_decouple_hot < inst.w_decouple_hot);
    CHECK(r.w_decouple_cold < inst.w_decouple_cold);
    CHECK(r.w_out > inst.w_out);
}

TEST_CASE("strong flows approach the weak treatment as alpha vanishes") {
    const CycleResult weak_r = weak_cycle_adiabatic(weak(reference_config(2.0, 0.0)));
    const CycleResult tiny = strong_cycle(strong(reference_config(2.0, 1e-6)));
    CHECK(std::abs(tiny.w_out - weak_r.w_out) <= 1e-4);
    CHECK(std::abs(tiny.q_hot - weak_r.q_hot) <= 1e-4);
    CHECK(std::abs(tiny.q_cold - weak_r.q_cold) <= 1e-4);
    CHECK(std::abs(tiny.w_decouple_hot) <= 1e-4);
    CHECK(std::abs(tiny.points.a - weak_r.points.a) <= 1e-4);
    CHECK(std::abs(tiny.points.b - weak_r.points.b) <= 1e-4);
    CHECK(std::abs(tiny.points.b_prime - weak_r.points.b_prime) <= 1e-4);
    CHECK(std::abs(tiny.points.c - weak_r.points.c) <= 1e-4);
    CHECK(std::abs(tiny.points.d - weak_r.points.d) <= 1e-4);
    CHECK(std::abs(tiny.points.d_prime - weak_r.points.d_prime) <= 1e-4);

    // efficiency recovery within 1% at alpha = 1e-5
    const CycleResult small = strong_cycle(strong(reference_config(2.0, 1e-5)));
    REQUIRE(small.eta.has_value());
    CHECK(std::abs(*small.eta - *weak_r.eta) / *weak_r.eta < 0.01);
}

TEST_CASE("adiabatic decoupling terms") {
    const CycleConfig cfg =
        strong(reference_config(2.0, 0.005), DecouplingMode::AdiabaticDecoupling);

    SUBCASE("decoupled limit costs nothing") {
        const CycleConfig free_cfg =
            strong(reference_config(2.0, 0.0), DecouplingMode::AdiabaticDecoupling);
        for (auto which : {Reservoir::Hot, Reservoir::Cold}) {
            const DecouplingTerms t = adiabatic_decoupling_terms(free_cfg, which);
            CHECK(std::abs(t.work) <= 1e-12);
            CHECK(std::abs(t.heat) <= 1e-12);
        }
    }
    SUBCASE("cheaper than instantaneous decoupling at the reference point") {
        const CycleResult inst = strong_cycle(strong(reference_config(2.0, 0.005)));
        CHECK(adiabatic_decoupling_terms(cfg, Reservoir::Hot).work <
              inst.w_decouple_hot);
        CHECK(adiabatic_decoupling_terms(cfg, Reservoir::Cold).work <
              inst.w_decouple_cold);
    }
    SUBCASE("work plus heat equals the decoupling energy change") {
        const CyclePointEnergies p = strong_point_energies(cfg);
        const DecouplingTerms hot = adiabatic_decoupling_terms(cfg, Reservoir::Hot);
        const DecouplingTerms cold = adiabatic_decoupling_terms(cfg, Reservoir::Cold);
        CHECK(hot.work + hot.heat ==
              doctest::Approx(p.b_prime - p.b).epsilon(1e-10));
        CHECK(cold.work + cold.heat ==
              doctest::Approx(p.d_prime - p.d).epsilon(1e-10));
    }
    SUBCASE("requires the adiabatic-decoupling strong configuration") {
        CHECK_THROWS_AS(
            adiabatic_decoupling_terms(strong(reference_config(2.0, 0.005)),
                                       Reservoir::Hot),
            std::invalid_argument);
    }
}

TEST_CASE("classification") {
    // weak coupling: engine iff mu_h/mu_c < T_h/T_c (= 2.5 here)
    CHECK(weak_cycle_adiabatic(weak(reference_config(2.0, 0.0))).mode ==
          OperatingMode::Engine);
    CHECK(weak_cycle_adiabatic(weak(reference_config(3.6, 0.0))).mode ==
          OperatingMode::Refrigerator);

    CycleResult zero;
    zero.w_out = 0.0;
    zero.q_hot = 0.0;
    zero.q_cold = 0.0;
    CHECK(classify(zero) == OperatingMode::Neither);
    CHECK_FALSE(efficiency(zero).has_value());
}

TEST_CASE("sudden strong cycle frozen values") {
    const CycleResult r = strong_cycle(strong(reference_config(2.0, 0.001),
                                              DecouplingMode::Instantaneous,
                                              StrokeMode::Sudden));
    CHECK(r.w_out == doctest::Approx(-0.03267378737073164).epsilon(1e-8));
    CHECK(r.q_hot == doctest::Approx(0.09577370141404523).epsilon(1e-8));
    CHECK(std::abs(testutil::ledger_closure(r.points)) <= 1e-10);
}

TEST_CASE("ledger closes for every mode combination") {
    for (auto coupling : {CouplingModel::Weak, CouplingModel::RcStrong}) {
        for (auto stroke : {StrokeMode::Adiabatic, StrokeMode::Sudden}) {
            for (auto dec : {DecouplingMode::Instantaneous,
                             DecouplingMode::AdiabaticDecoupling}) {
                for (double eps_h : {0.8, 2.0, 3.7}) {
                    CycleConfig cfg = reference_config(eps_h, 0.05, 25);
                    cfg.coupling_model = coupling;
                    cfg.stroke_mode = stroke;
                    cfg.decoupling_mode = dec;
                    const CycleResult r = run_cycle(cfg);
                    CHECK(std::abs(testutil::ledger_closure(r.points)) <= 1e-10);
                    CHECK(r.w_out - (r.q_hot + r.q_cold) ==
                          doctest::Approx(0.0).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("truncation convergence flag") {
    CHECK(strong_cycle(strong(reference_config(2.0, 0.005, 30))).converged);
    // n = 10 against n = 5 drifts well beyond 1e-6 at alpha = 0.1
    CHECK_FALSE(strong_cycle(strong(reference_config(2.0, 0.1, 10))).converged);
}

TEST_CASE("run_cycle dispatch matches the specific entry points") {
    const CycleConfig wcfg = weak(reference_config(2.0, 0.0));
    CHECK(run_cycle(wcfg).w_out == weak_cycle_adiabatic(wcfg).w_out);
    const CycleConfig scfg = strong(reference_config(2.0, 0.005));
    CHECK(run_cycle(scfg).w_out == strong_cycle(scfg).w_out);
    CHECK_THROWS_AS(strong_cycle(wcfg), std::invalid_argument);
    CHECK_THROWS_AS(weak_cycle_adiabatic(scfg), std::invalid_argument);
}
