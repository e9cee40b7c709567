#include "config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace qotto::config {

using cycle::CouplingModel;
using cycle::CycleConfig;
using cycle::DecouplingMode;
using cycle::StrokeMode;

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_number(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        fail(origin, line, "unparsable number for key '" + key + "': '" + value + "'");
    }
    return out;
}

int parse_integer(const std::string& origin, int line, const std::string& key,
                  const std::string& value) {
    int out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        fail(origin, line, "unparsable integer for key '" + key + "': '" + value + "'");
    }
    return out;
}

constexpr const char* kKnownKeys[] = {
    "epsilon_h", "epsilon_c", "delta_h",        "delta_c",
    "beta_h",    "beta_c",    "alpha",          "omega_c",
    "n",         "coupling_model", "stroke_mode", "decoupling_mode"};

} // namespace

bool is_known_key(const std::string& key) {
    for (const char* k : kKnownKeys) {
        if (key == k) return true;
    }
    return false;
}

std::string coupling_model_token(CouplingModel m) {
    return m == CouplingModel::Weak ? "weak" : "rc-strong";
}

std::string stroke_mode_token(StrokeMode m) {
    return m == StrokeMode::Adiabatic ? "adiabatic" : "sudden";
}

std::string decoupling_mode_token(DecouplingMode m) {
    return m == DecouplingMode::Instantaneous ? "instantaneous" : "adiabatic";
}

CouplingModel parse_coupling_model(const std::string& token) {
    if (token == "weak") return CouplingModel::Weak;
    if (token == "rc-strong") return CouplingModel::RcStrong;
    throw ConfigError("unknown coupling_model '" + token +
                      "' (expected weak or rc-strong)");
}

StrokeMode parse_stroke_mode(const std::string& token) {
    if (token == "adiabatic") return StrokeMode::Adiabatic;
    if (token == "sudden") return StrokeMode::Sudden;
    throw ConfigError("unknown stroke_mode '" + token +
                      "' (expected adiabatic or sudden)");
}

DecouplingMode parse_decoupling_mode(const std::string& token) {
    if (token == "instantaneous") return DecouplingMode::Instantaneous;
    if (token == "adiabatic") return DecouplingMode::AdiabaticDecoupling;
    throw ConfigError("unknown decoupling_mode '" + token +
                      "' (expected instantaneous or adiabatic)");
}

CycleConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::pair<std::string, int>> seen; // key -> (value, line)
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!is_known_key(key)) fail(origin, line_no, "unknown key '" + key + "'");
        if (value.empty()) fail(origin, line_no, "missing value for key '" + key + "'");
        if (seen.count(key)) fail(origin, line_no, "duplicate key '" + key + "'");
        seen[key] = {value, line_no};
    }

    for (const char* required : {"epsilon_h", "epsilon_c", "delta_h", "delta_c",
                                 "beta_h", "beta_c", "alpha", "omega_c"}) {
        if (!seen.count(required)) {
            throw ConfigError(origin + ": missing required key '" +
                              std::string(required) + "'");
        }
    }

    CycleConfig cfg;
    auto number = [&](const char* key) {
        const auto& [value, line] = seen.at(key);
        return parse_number(origin, line, key, value);
    };
    cfg.tls_hot.epsilon = number("epsilon_h");
    cfg.tls_cold.epsilon = number("epsilon_c");
    cfg.tls_hot.delta = number("delta_h");
    cfg.tls_cold.delta = number("delta_c");
    cfg.hot.beta = number("beta_h");
    cfg.cold.beta = number("beta_c");
    cfg.hot.alpha = cfg.cold.alpha = number("alpha");
    cfg.hot.omega_c = cfg.cold.omega_c = number("omega_c");
    if (seen.count("n")) {
        const auto& [value, line] = seen.at("n");
        cfg.n = parse_integer(origin, line, "n", value);
    }
    auto parse_enum = [&](const char* key, auto parser, auto& field) {
        if (!seen.count(key)) return;
        const auto& [value, line] = seen.at(key);
        try {
            field = parser(value);
        } catch (const ConfigError& e) {
            fail(origin, line, e.what());
        }
    };
    parse_enum("coupling_model", parse_coupling_model, cfg.coupling_model);
    parse_enum("stroke_mode", parse_stroke_mode, cfg.stroke_mode);
    parse_enum("decoupling_mode", parse_decoupling_mode, cfg.decoupling_mode);

    // Invariants, reported against the line of the key that violates them.
    auto line_of = [&](const char* key) {
        return seen.count(key) ? seen.at(key).second : 0;
    };
    if (!(cfg.hot.beta > 0.0)) fail(origin, line_of("beta_h"), "beta_h must be > 0");
    if (!(cfg.cold.beta > 0.0)) fail(origin, line_of("beta_c"), "beta_c must be > 0");
    if (!(cfg.cold.beta > cfg.hot.beta)) {
        fail(origin, line_of("beta_c"), "cold reservoir must be colder (beta_c > beta_h)");
    }
    if (cfg.hot.alpha < 0.0) fail(origin, line_of("alpha"), "alpha must be >= 0");
    if (!(cfg.hot.omega_c > 0.0)) fail(origin, line_of("omega_c"), "omega_c must be > 0");
    if (cfg.n < 1) fail(origin, line_of("n"), "n must be >= 1");
    if (!(model::splitting(cfg.tls_hot) > 0.0)) {
        fail(origin, line_of("epsilon_h"), "hot TLS splitting vanishes (epsilon_h = delta_h = 0)");
    }
    if (!(model::splitting(cfg.tls_cold) > 0.0)) {
        fail(origin, line_of("epsilon_c"), "cold TLS splitting vanishes (epsilon_c = delta_c = 0)");
    }
    return cfg.normalized();
}

CycleConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string to_text(const CycleConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "epsilon_h = " << cfg.tls_hot.epsilon << "\n"
       << "epsilon_c = " << cfg.tls_cold.epsilon << "\n"
       << "delta_h = " << cfg.tls_hot.delta << "\n"
       << "delta_c = " << cfg.tls_cold.delta << "\n"
       << "beta_h = " << cfg.hot.beta << "\n"
       << "beta_c = " << cfg.cold.beta << "\n"
       << "alpha = " << cfg.hot.alpha << "\n"
       << "omega_c = " << cfg.hot.omega_c << "\n"
       << "n = " << cfg.n << "\n"
       << "coupling_model = " << coupling_model_token(cfg.coupling_model) << "\n"
       << "stroke_mode = " << stroke_mode_token(cfg.stroke_mode) << "\n"
       << "decoupling_mode = " << decoupling_mode_token(cfg.decoupling_mode) << "\n";
    return os.str();
}

} // namespace qotto::config
