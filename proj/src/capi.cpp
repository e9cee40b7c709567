// capi.cpp: the extern "C" surface. Exceptions from the C++ core are caught
// here and mapped onto status codes; messages are kept per thread.

#include "qotto.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "sweep.hpp"

using qotto::ConfigError;
using qotto::NumericError;

struct qotto_config {
    // accumulated key = value text; parsed (and fully validated) on use so
    // file-born and set-built configs go through the identical code path
    std::string text;
    std::string origin{"<config>"};
};

namespace {

thread_local std::string g_last_error;

qotto_status set_error(qotto_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
qotto_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QOTTO_OK;
    } catch (const ConfigError& e) {
        return set_error(QOTTO_ERR_CONFIG, e.what());
    } catch (const NumericError& e) {
        return set_error(QOTTO_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(QOTTO_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return set_error(QOTTO_ERR_NUMERIC, e.what());
    }
}

qotto::cycle::CycleConfig materialize(const qotto_config* handle) {
    return qotto::config::parse_config_text(handle->text, handle->origin);
}

void fill_result(const qotto::cycle::CycleResult& r, qotto_cycle_result* out) {
    out->w_out = r.w_out;
    out->q_hot = r.q_hot;
    out->q_cold = r.q_cold;
    out->w_dec_h = r.w_decouple_hot;
    out->w_dec_c = r.w_decouple_cold;
    out->q_dec_h = r.q_decouple_hot;
    out->q_dec_c = r.q_decouple_cold;
    out->eta_defined = r.eta.has_value() ? 1 : 0;
    out->eta = r.eta.value_or(0.0);
    switch (r.mode) {
        case qotto::cycle::OperatingMode::Engine:
            out->mode = QOTTO_MODE_ENGINE;
            break;
        case qotto::cycle::OperatingMode::Refrigerator:
            out->mode = QOTTO_MODE_REFRIGERATOR;
            break;
        default:
            out->mode = QOTTO_MODE_NEITHER;
            break;
    }
    out->n = r.n;
    out->converged = r.converged ? 1 : 0;
    out->e_a = r.points.a;
    out->e_a_prime = r.points.a_prime;
    out->e_b = r.points.b;
    out->e_b_prime = r.points.b_prime;
    out->e_c = r.points.c;
    out->e_c_prime = r.points.c_prime;
    out->e_d = r.points.d;
    out->e_d_prime = r.points.d_prime;
}

} // namespace

extern "C" {

qotto_status qotto_config_load(const char* path, qotto_config** out) {
    if (!path || !out) return set_error(QOTTO_ERR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError(std::string("cannot open config file '") + path + "'");
        }
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        // validate eagerly so load reports problems at the call site
        qotto::config::parse_config_text(text, path);
        auto* handle = new qotto_config{};
        handle->text = std::move(text);
        handle->origin = path;
        *out = handle;
    });
}

qotto_status qotto_config_create(qotto_config** out) {
    if (!out) return set_error(QOTTO_ERR_CONFIG, "null argument");
    *out = new (std::nothrow) qotto_config{};
    if (!*out) return set_error(QOTTO_ERR_NUMERIC, "out of memory");
    g_last_error.clear();
    return QOTTO_OK;
}

qotto_status qotto_config_set(qotto_config* cfg, const char* key,
                              const char* value) {
    if (!cfg || !key || !value) {
        return set_error(QOTTO_ERR_CONFIG, "null argument");
    }
    return guarded([&] {
        const std::string k(key);
        const std::string v(value);
        if (!qotto::config::is_known_key(k)) {
            throw ConfigError("unknown key '" + k + "'");
        }
        if (v.empty() || v.find_first_of("=#\n") != std::string::npos ||
            k.find_first_of("=#\n") != std::string::npos) {
            throw ConfigError("malformed value for key '" + k + "'");
        }
        cfg->text += k + " = " + v + "\n";
    });
}

void qotto_config_free(qotto_config* cfg) {
    delete cfg;
}

qotto_status qotto_cycle_run(const qotto_config* cfg, qotto_cycle_result* out) {
    if (!cfg || !out) return set_error(QOTTO_ERR_CONFIG, "null argument");
    return guarded([&] {
        const auto result = qotto::cycle::run_cycle(materialize(cfg));
        fill_result(result, out);
    });
}

const char* qotto_csv_header(void) {
    return qotto::sweep::kCsvHeader;
}

qotto_status qotto_cycle_csv_row(const qotto_config* cfg, char** out) {
    if (!cfg || !out) return set_error(QOTTO_ERR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] {
        const std::string row = qotto::sweep::cycle_csv_row(materialize(cfg));
        char* buf = new char[row.size() + 1];
        std::memcpy(buf, row.c_str(), row.size() + 1);
        *out = buf;
    });
}

qotto_status qotto_sweep_run(const qotto_config* cfg, const char* param,
                             double from, double to, int steps,
                             const char* variants, const char* out_path,
                             int threads, int allow_unconverged) {
    if (!cfg || !param || !variants || !out_path) {
        return set_error(QOTTO_ERR_CONFIG, "null argument");
    }
    bool all_converged = true;
    const qotto_status status = guarded([&] {
        qotto::sweep::SweepSpec spec;
        spec.param = qotto::sweep::parse_sweep_param(param);
        spec.from = from;
        spec.to = to;
        spec.steps = steps;
        spec.base = materialize(cfg);
        spec.variants = qotto::sweep::parse_variants(variants);
        all_converged = qotto::sweep::run_sweep(spec, out_path, threads).all_converged;
    });
    if (status != QOTTO_OK) return status;
    if (!all_converged && !allow_unconverged) {
        return set_error(QOTTO_ERR_UNCONVERGED,
                         "one or more rows failed the truncation convergence check");
    }
    return QOTTO_OK;
}

qotto_status qotto_converge_run(const qotto_config* cfg, int n_max,
                                const char* out_path, int allow_unconverged) {
    if (!cfg || !out_path) return set_error(QOTTO_ERR_CONFIG, "null argument");
    bool converged = false;
    const qotto_status status = guarded([&] {
        const auto outcome =
            qotto::sweep::run_converge(materialize(cfg), n_max);
        converged = outcome.converged;
        if (std::string(out_path) == "-") {
            qotto::sweep::write_converge_csv(outcome, std::cout);
        } else {
            std::ofstream file(out_path);
            if (!file) {
                throw ConfigError(std::string("cannot open output file '") +
                                  out_path + "'");
            }
            qotto::sweep::write_converge_csv(outcome, file);
        }
    });
    if (status != QOTTO_OK) return status;
    if (!converged && !allow_unconverged) {
        return set_error(QOTTO_ERR_UNCONVERGED,
                         "truncation study did not converge at n_max");
    }
    return QOTTO_OK;
}

const char* qotto_last_error(void) {
    return g_last_error.c_str();
}

void qotto_string_free(char* s) {
    delete[] s;
}

const char* qotto_version(void) {
    return "0.1.0";
}

} // extern "C"
