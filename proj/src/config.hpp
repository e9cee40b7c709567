// config.hpp: line-oriented `key = value` cycle configuration files.
//
// Keys: epsilon_h, epsilon_c, delta_h, delta_c, beta_h, beta_c, alpha,
// omega_c, n, coupling_model, stroke_mode, decoupling_mode. `#` starts a
// comment. Unknown keys, duplicate keys, missing required keys, and
// violated invariants are reported with the offending line number.
// Defaults: n = 30, coupling_model = rc-strong, stroke_mode = adiabatic,
// decoupling_mode = instantaneous. alpha and omega_c apply to both
// reservoirs.

#pragma once

#include <string>

#include "cycle.hpp"

namespace qotto::config {

cycle::CycleConfig parse_config(const std::string& path);
cycle::CycleConfig parse_config_text(const std::string& text,
                                     const std::string& origin = "<config>");

// Inverse of parsing, for round-trip checks and reproducible logs.
std::string to_text(const cycle::CycleConfig& cfg);

bool is_known_key(const std::string& key);

// Enum token helpers shared by the parser and the CSV writer.
std::string coupling_model_token(cycle::CouplingModel m);
std::string stroke_mode_token(cycle::StrokeMode m);
std::string decoupling_mode_token(cycle::DecouplingMode m);
cycle::CouplingModel parse_coupling_model(const std::string& token);
cycle::StrokeMode parse_stroke_mode(const std::string& token);
cycle::DecouplingMode parse_decoupling_mode(const std::string& token);

} // namespace qotto::config
