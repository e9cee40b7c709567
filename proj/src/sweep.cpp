#include "sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "config.hpp"
#include "errors.hpp"

namespace qotto::sweep {

using cycle::CycleConfig;
using cycle::CycleResult;

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string mode_token(cycle::OperatingMode m) {
    switch (m) {
        case cycle::OperatingMode::Engine: return "engine";
        case cycle::OperatingMode::Refrigerator: return "refrigerator";
        default: return "neither";
    }
}

} // namespace

const char* const kCsvHeader =
    "sweep_param,value,coupling_model,stroke_mode,decoupling_mode,"
    "W_out,Q_hot,Q_cold,W_dec_h,W_dec_c,Q_dec_h,Q_dec_c,eta,mode,n,converged";

std::string sweep_param_token(SweepParam p) {
    switch (p) {
        case SweepParam::EpsilonH: return "epsilon_h";
        case SweepParam::DeltaH: return "delta_h";
        case SweepParam::Alpha: return "alpha";
        default: return "beta_c";
    }
}

SweepParam parse_sweep_param(const std::string& token) {
    if (token == "epsilon_h") return SweepParam::EpsilonH;
    if (token == "delta_h") return SweepParam::DeltaH;
    if (token == "alpha") return SweepParam::Alpha;
    if (token == "beta_c") return SweepParam::BetaC;
    throw ConfigError("unknown sweep parameter '" + token +
                      "' (expected epsilon_h, delta_h, alpha, or beta_c)");
}

std::vector<Variant> parse_variants(const std::string& list) {
    std::vector<Variant> variants;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto first = item.find(':');
        const auto second = item.find(':', first + 1);
        if (first == std::string::npos || second == std::string::npos ||
            item.find(':', second + 1) != std::string::npos) {
            throw ConfigError("variant '" + item +
                              "' must be coupling:stroke:decoupling");
        }
        Variant v;
        v.coupling = config::parse_coupling_model(item.substr(0, first));
        v.stroke = config::parse_stroke_mode(item.substr(first + 1, second - first - 1));
        v.decoupling = config::parse_decoupling_mode(item.substr(second + 1));
        variants.push_back(v);
    }
    if (variants.empty()) {
        throw ConfigError("variant list is empty");
    }
    return variants;
}

void SweepSpec::validate() const {
    if (!(from < to)) {
        throw ConfigError("sweep range requires from < to");
    }
    if (steps < 2) {
        throw ConfigError("sweep requires at least 2 steps");
    }
    if (variants.empty()) {
        throw ConfigError("sweep requires at least one variant");
    }
    base.validate();
    // every grid point must itself be a valid configuration
    for (int s = 0; s < steps; ++s) {
        apply_sweep_value(base, param, grid_value(*this, s)).validate();
    }
}

double grid_value(const SweepSpec& spec, int step) {
    return spec.from +
           static_cast<double>(step) * (spec.to - spec.from) /
               static_cast<double>(spec.steps - 1);
}

CycleConfig apply_sweep_value(const CycleConfig& base, SweepParam param,
                              double value) {
    CycleConfig cfg = base;
    switch (param) {
        case SweepParam::EpsilonH:
            cfg.tls_hot.epsilon = value;
            break;
        case SweepParam::DeltaH:
            cfg.tls_hot.delta = value;
            break;
        case SweepParam::Alpha:
            cfg.hot.alpha = value;
            cfg.cold.alpha = value;
            break;
        case SweepParam::BetaC:
            cfg.cold.beta = value;
            break;
    }
    return cfg;
}

std::string format_csv_row(const std::string& sweep_param, double value,
                           const Variant& variant, const CycleResult& result) {
    std::ostringstream os;
    os << sweep_param << ',' << fmt12(value) << ','
       << config::coupling_model_token(variant.coupling) << ','
       << config::stroke_mode_token(variant.stroke) << ','
       << config::decoupling_mode_token(variant.decoupling) << ','
       << fmt12(result.w_out) << ',' << fmt12(result.q_hot) << ','
       << fmt12(result.q_cold) << ',' << fmt12(result.w_decouple_hot) << ','
       << fmt12(result.w_decouple_cold) << ',' << fmt12(result.q_decouple_hot)
       << ',' << fmt12(result.q_decouple_cold) << ','
       << (result.eta ? fmt12(*result.eta) : std::string{}) << ','
       << mode_token(result.mode) << ',' << result.n << ','
       << (result.converged ? "true" : "false");
    return os.str();
}

SweepOutcome run_sweep(const SweepSpec& spec, const std::string& out_path,
                       int threads) {
    spec.validate();
    const int steps = spec.steps;
    const int total = steps * static_cast<int>(spec.variants.size());
    std::vector<std::string> rows(total);
    // plain chars: vector<bool> packs bits and is not safe to write
    // concurrently at distinct indices
    std::vector<char> converged(total, 1);

    // Variants vary slowest so rows come out grouped by variant, then value.
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= total) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error) return;
            }
            try {
                const int v = idx / steps;
                const int s = idx % steps;
                const Variant& variant = spec.variants[v];
                const double value = grid_value(spec, s);
                CycleConfig cfg = apply_sweep_value(spec.base, spec.param, value);
                cfg.coupling_model = variant.coupling;
                cfg.stroke_mode = variant.stroke;
                cfg.decoupling_mode = variant.decoupling;
                cfg = cfg.normalized();
                const CycleResult result = cycle::run_cycle(cfg);
                // forced-instantaneous weak rows report what actually ran
                Variant reported = variant;
                reported.decoupling = cfg.decoupling_mode;
                rows[idx] = format_csv_row(sweep_param_token(spec.param), value,
                                           reported, result);
                converged[idx] = result.converged ? 1 : 0;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int worker_count = threads > 0
                           ? threads
                           : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    worker_count = std::min(worker_count, total);
    Eigen::initParallel();
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
        file.open(out_path);
        if (!file) {
            throw ConfigError("cannot open output file '" + out_path + "'");
        }
        out = &file;
    }
    *out << kCsvHeader << '\n';
    for (const std::string& row : rows) {
        *out << row << '\n';
    }
    out->flush();
    if (!*out) {
        throw ConfigError("failed writing output file '" + out_path + "'");
    }

    SweepOutcome outcome;
    for (const char c : converged) outcome.all_converged = outcome.all_converged && c != 0;
    return outcome;
}

ConvergeOutcome run_converge(const CycleConfig& cfg, int n_max) {
    const CycleConfig base = cfg.normalized();
    if (n_max < base.n) {
        throw ConfigError("converge requires n_max >= configured n");
    }
    std::vector<int> truncations;
    for (int n = 5; n <= n_max; n += 5) truncations.push_back(n);
    if (truncations.empty() || truncations.back() != n_max) {
        truncations.push_back(n_max);
    }

    ConvergeOutcome outcome;
    std::optional<std::pair<double, double>> prev;
    for (const int n : truncations) {
        CycleConfig point = base;
        point.n = n;
        const CycleResult result =
            base.coupling_model == cycle::CouplingModel::Weak
                ? cycle::run_cycle(point)
                : cycle::strong_cycle_at(point, n);
        ConvergeRow row;
        row.n = n;
        row.w_out = result.w_out;
        row.q_hot = result.q_hot;
        row.eta = result.eta;
        if (prev) {
            row.rel_delta =
                std::max(cycle::convergence_rel_delta(result.w_out, prev->first),
                         cycle::convergence_rel_delta(result.q_hot, prev->second));
        }
        prev = {result.w_out, result.q_hot};
        outcome.rows.push_back(row);
    }
    const auto& last = outcome.rows.back();
    outcome.converged =
        last.rel_delta.has_value() && *last.rel_delta <= cycle::kConvergenceRelTol;
    return outcome;
}

void write_converge_csv(const ConvergeOutcome& outcome, std::ostream& out) {
    out << "n,W_out,Q_hot,eta,rel_delta\n";
    for (const ConvergeRow& row : outcome.rows) {
        out << row.n << ',' << fmt12(row.w_out) << ',' << fmt12(row.q_hot) << ','
            << (row.eta ? fmt12(*row.eta) : std::string{}) << ','
            << (row.rel_delta ? fmt12(*row.rel_delta) : std::string{}) << '\n';
    }
}

std::string cycle_csv_row(const CycleConfig& cfg) {
    const CycleConfig normalized = cfg.normalized();
    const CycleResult result = cycle::run_cycle(normalized);
    Variant variant{normalized.coupling_model, normalized.stroke_mode,
                    normalized.decoupling_mode};
    return format_csv_row("none", 0.0, variant, result);
}

} // namespace qotto::sweep
